"""Shared builders for trace and point-record fixtures."""

from roomsense.dataset import PointRecord, Trace, room_of


def make_point(x, y, per_ap_trial):
    """PointRecord from a {(ap_id, trial): [rssi, ...]} mapping."""
    traces = {
        (ap_id, trial): Trace((x, y), ap_id, trial, values)
        for (ap_id, trial), values in per_ap_trial.items()
    }
    return PointRecord((x, y), room_of(x), traces)


def make_point_same_traces(x, y, values, trials=(0,)):
    """PointRecord with identical values for every AP and trial."""
    return make_point(
        x, y, {(ap, t): list(values) for ap in (1, 2, 3) for t in trials}
    )
