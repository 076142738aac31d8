"""RSSI trace records, trace-file I/O, and labeled pair-dataset construction.

Two devices form a positive ("adjacent") sample when they sit in the same
room and a negative ("distant") sample otherwise.  Room membership is encoded
in the sign of the x coordinate: x < 0 is the left room, x > 0 the right one.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._seeds import generator

ROOM_LEFT = "left"
ROOM_RIGHT = "right"
AP_IDS = (1, 2, 3)

TRACE_HEADER = "point_x,point_y,ap_id,trial,seq,rssi_dbm"


class TraceFormatError(ValueError):
    """Malformed trace file; carries the 1-based offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def room_of(x) -> str:
    """Room label for an x coordinate; x = 0 (the partition wall) is invalid."""
    if x == 0:
        raise ValueError("x = 0 lies on the partition wall and belongs to no room")
    return ROOM_LEFT if x < 0 else ROOM_RIGHT


@dataclass(frozen=True)
class RssiReading:
    """One timestamped RSSI sample from one access point at one device point."""

    point: tuple[float, float]
    ap_id: int
    trial: int
    seq: int
    rssi: int

    def __post_init__(self):
        object.__setattr__(self, "point", (float(self.point[0]), float(self.point[1])))
        if self.ap_id not in AP_IDS:
            raise ValueError(f"ap_id must be one of {AP_IDS}, got {self.ap_id}")
        if self.trial < 0:
            raise ValueError(f"trial must be >= 0, got {self.trial}")
        if self.seq < 0:
            raise ValueError(f"seq must be >= 0, got {self.seq}")
        if self.rssi > 0:
            raise ValueError(f"rssi is reported in negative dBm, got {self.rssi}")


@dataclass(frozen=True)
class Trace:
    """Ordered RSSI sequence for one (point, access point, trial) triple."""

    point: tuple[float, float]
    ap_id: int
    trial: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "point", (float(self.point[0]), float(self.point[1])))
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) == 0:
            raise ValueError("a trace must hold at least one reading")


@dataclass(frozen=True)
class PointRecord:
    """A device location with its traces, keyed by (ap_id, trial)."""

    point: tuple[float, float]
    room: str
    traces: dict[tuple[int, int], Trace]

    def __post_init__(self):
        object.__setattr__(self, "point", (float(self.point[0]), float(self.point[1])))
        if self.room != room_of(self.point[0]):
            raise ValueError(f"room {self.room!r} contradicts x = {self.point[0]}")

    def trial_ids(self) -> list[int]:
        """Trials for which this point has a trace from every access point."""
        per_ap = {ap: {t for (a, t) in self.traces if a == ap} for ap in AP_IDS}
        common = set.intersection(*per_ap.values()) if per_ap else set()
        return sorted(common)


@dataclass(frozen=True)
class PairSample:
    """One classification sample: 18 features and the adjacency label."""

    point_a: tuple[float, float]
    point_b: tuple[float, float]
    features: tuple[float, ...]
    label: int

    def __post_init__(self):
        if len(self.features) != 18:
            raise ValueError(f"expected 18 features, got {len(self.features)}")
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label}")


@dataclass(frozen=True)
class Dataset:
    """Ordered pair samples plus the (positive, negative) class counts."""

    samples: tuple[PairSample, ...]
    counts: tuple[int, int]

    def __post_init__(self):
        n_pos = sum(1 for s in self.samples if s.label == 1)
        n_neg = len(self.samples) - n_pos
        if self.counts != (n_pos, n_neg):
            raise ValueError(f"counts {self.counts} do not match labels ({n_pos}, {n_neg})")

    def feature_matrix(self) -> np.ndarray:
        return np.array([s.features for s in self.samples], dtype=float)

    def labels(self) -> np.ndarray:
        return np.array([s.label for s in self.samples], dtype=int)


def unique_values(trace) -> list[int]:
    """Unique RSSI values of a trace, first occurrence order preserved.

    Accepts a Trace or any sequence of values.  Order matters because the
    result feeds dynamic time warping downstream.
    """
    values = trace.values if isinstance(trace, Trace) else tuple(trace)
    if len(values) == 0:
        raise ValueError("unique_values of an empty trace")
    return list(dict.fromkeys(values))


# ---------------------------------------------------------------------------
# Trace file I/O
#
# CSV with header `point_x,point_y,ap_id,trial,seq,rssi_dbm`.  UTF-8, LF line
# endings, '#'-prefixed comment lines ignored.  Coordinates are signed feet,
# rssi_dbm an integer <= 0.


def _parse_row(line_no, fields):
    if len(fields) != 6:
        raise TraceFormatError(line_no, f"expected 6 fields, got {len(fields)}")
    try:
        x, y = float(fields[0]), float(fields[1])
        ap_id, trial, seq, rssi = (int(f) for f in fields[2:])
    except ValueError as exc:
        raise TraceFormatError(line_no, f"unparseable field ({exc})") from None
    if x == 0:
        raise TraceFormatError(line_no, "point_x = 0 lies on the partition wall")
    try:
        return RssiReading((x, y), ap_id, trial, seq, rssi)
    except ValueError as exc:
        raise TraceFormatError(line_no, str(exc)) from None


def ingest_traces(source) -> list[PointRecord]:
    """Parse a trace file into PointRecords, one per distinct device point.

    `source` may be a path, an open text file, or an iterable of lines.
    Readings are grouped into traces by (point, ap_id, trial) and ordered by
    seq; the room label comes from the sign of x.
    """
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as fh:
            return ingest_traces(fh)

    readings = {}
    header_seen = False
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != TRACE_HEADER:
                raise TraceFormatError(line_no, f"expected header {TRACE_HEADER!r}")
            header_seen = True
            continue
        reading = _parse_row(line_no, line.split(","))
        key = (reading.point, reading.ap_id, reading.trial, reading.seq)
        if key in readings:
            raise TraceFormatError(line_no, f"duplicate reading key {key}")
        readings[key] = reading

    grouped = {}
    for reading in readings.values():
        grouped.setdefault(reading.point, {}).setdefault(
            (reading.ap_id, reading.trial), []
        ).append(reading)

    records = []
    for point in sorted(grouped):
        traces = {}
        for (ap_id, trial), group in grouped[point].items():
            group.sort(key=lambda r: r.seq)
            traces[(ap_id, trial)] = Trace(point, ap_id, trial, [r.rssi for r in group])
        records.append(PointRecord(point, room_of(point[0]), traces))
    return records


def write_traces(points, dest, comments=None):
    """Write PointRecords in the trace-file format (deterministic row order).

    `comments` is an optional mapping echoed as leading `# key=value` lines.
    """
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            write_traces(points, fh, comments)
        return

    for key, value in (comments or {}).items():
        dest.write(f"# {key}={value}\n")
    dest.write(TRACE_HEADER + "\n")
    for record in sorted(points, key=lambda p: p.point):
        x, y = record.point
        for (ap_id, trial) in sorted(record.traces):
            trace = record.traces[(ap_id, trial)]
            for seq, rssi in enumerate(trace.values):
                dest.write(f"{x!r},{y!r},{ap_id},{trial},{seq},{rssi}\n")


# ---------------------------------------------------------------------------
# Pair dataset construction


@dataclass(frozen=True)
class PairingConfig:
    """How many samples of each class to draw and how trials are matched.

    trial_matching "equal" pairs both points at the same trial index, which
    mimics simultaneous measurement; "random" draws each point's trial
    independently.
    """

    n_positive: int = 100
    n_negative: int = 200
    trial_matching: str = "equal"

    def __post_init__(self):
        if self.n_positive < 0 or self.n_negative < 0:
            raise ValueError("sample counts must be >= 0")
        if self.trial_matching not in ("equal", "random"):
            raise ValueError(f"unknown trial_matching {self.trial_matching!r}")


def _pair_assignments(a: PointRecord, b: PointRecord, matching: str):
    """All (trial_a, trial_b) choices available to a pair."""
    if matching == "equal":
        common = sorted(set(a.trial_ids()) & set(b.trial_ids()))
        return [(t, t) for t in common]
    return [(ta, tb) for ta in a.trial_ids() for tb in b.trial_ids()]


def build_pairs(points, config: PairingConfig | None = None, seed: int = 0) -> Dataset:
    """Construct the labeled pair dataset from point records.

    A sample is a (point pair, trial assignment) combination; combinations are
    drawn without replacement by a seeded generator until the configured class
    counts are reached, so the same point pair can recur with different trial
    draws when the requested count exceeds the number of distinct pairs.
    Positive samples come first in the output, then negatives; within each
    class the order is the generator's draw order.
    """
    from .features import featurize_pair  # deferred: features needs this module's types

    config = config or PairingConfig()
    points = sorted(points, key=lambda p: p.point)
    for record in points:
        if not record.trial_ids():
            raise ValueError(f"point {record.point} lacks a trace for every access point")

    by_room = {}
    for idx, record in enumerate(points):
        by_room.setdefault(record.room, []).append(idx)
    for room, members in by_room.items():
        if len(members) < 2:
            raise ValueError(f"room {room!r} has {len(members)} point(s); need >= 2")

    same_pairs, cross_pairs = [], []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            target = same_pairs if points[i].room == points[j].room else cross_pairs
            target.append((i, j))

    def draw(pairs, count, label):
        if count == 0:
            return []
        combos = [
            (i, j, ta, tb)
            for (i, j) in pairs
            for (ta, tb) in _pair_assignments(points[i], points[j], config.trial_matching)
        ]
        kind = "positive" if label == 1 else "negative"
        if count > len(combos):
            raise ValueError(
                f"{count} {kind} samples requested but only {len(combos)} distinct "
                "(pair, trial) combinations exist"
            )
        rng = generator(seed, "pairs", label)
        picked = rng.choice(len(combos), size=count, replace=False)
        samples = []
        for idx in picked:
            i, j, ta, tb = combos[idx]
            features = featurize_pair(points[i], points[j], trial_a=ta, trial_b=tb)
            samples.append(
                PairSample(
                    points[i].point,
                    points[j].point,
                    tuple(float(v) for v in features),
                    label,
                )
            )
        return samples

    positives = draw(same_pairs, config.n_positive, 1)
    negatives = draw(cross_pairs, config.n_negative, 0)
    return Dataset(tuple(positives + negatives), (len(positives), len(negatives)))
