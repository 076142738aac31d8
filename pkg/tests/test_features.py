"""Feature operations: worked examples, symmetry, and the matrix file format."""

import io

import numpy as np
import pytest

from conftest import make_point, make_point_same_traces
from oracles import naive_features
from roomsense.features import (
    FEATURE_CSV_HEADER,
    FEATURE_NAMES,
    FeatureFormatError,
    ap_features,
    avg_strength_ratio,
    featurize_pair,
    high_strength_ratio,
    mean_difference,
    mean_strength,
    min_strength,
    pair_features,
    read_feature_matrix,
    signal_similarity,
    write_feature_matrix,
)


def test_mean_difference_examples():
    assert mean_difference([-50, -60], [-50, -60]) == 0
    assert mean_difference([-50, -60], [-70, -80]) == 20  # |55 - 75|
    assert mean_difference([-60], [-60]) == 0


def test_mean_strength_examples():
    assert mean_strength([-50], [-50]) == 50
    assert mean_strength([-50, -60], [-70]) == 60
    assert mean_strength([-40, -80], [-40, -80]) == 60  # union dedups


def test_min_strength_examples():
    assert min_strength([-50], [-50]) == 50
    assert min_strength([-50, -60], [-70, -80]) == 50
    assert min_strength([-100], [-41]) == 41


def test_high_strength_ratio_examples():
    assert high_strength_ratio([-50, -60], [-80]) == 1.0
    assert high_strength_ratio([-40, -55], [-60, -80]) == 0.75
    assert high_strength_ratio([-40], [-45]) == 0.0


def test_avg_strength_ratio_examples():
    assert avg_strength_ratio([-40, -55], [-60, -80]) == 0.25
    assert avg_strength_ratio([-70, -80], [-90]) == 1.0
    assert avg_strength_ratio([-40], [-40]) == 0.0


def test_signal_similarity_examples():
    assert signal_similarity([-50, -60], [-50, -60]) == 0.0
    assert signal_similarity([0], [5]) == 5.0
    assert signal_similarity([1, 2, 3], [2, 2, 2, 3, 4]) == 2.0


def test_empty_inputs_rejected():
    for op in (
        mean_difference,
        mean_strength,
        min_strength,
        high_strength_ratio,
        avg_strength_ratio,
        signal_similarity,
    ):
        with pytest.raises(ValueError):
            op([], [-50])
        with pytest.raises(ValueError):
            op([-50], [])


def test_ap_features_against_naive_oracle():
    x, y = [-45, -52, -67], [-71, -88, -90, -64, -55]
    block = ap_features(x, y)
    assert np.allclose(block.as_tuple(), naive_features(x, y), atol=1e-9)


def test_featurize_identical_traces_zeroes_md_and_dtw():
    a = make_point_same_traces(-17, 11, [-50, -60, -70])
    b = make_point_same_traces(-20, 5, [-50, -60, -70])
    vec = featurize_pair(a, b)
    assert vec.shape == (18,)
    for ap_slot in range(3):
        assert vec[6 * ap_slot + 0] == 0.0  # md
        assert vec[6 * ap_slot + 5] == 0.0  # dtw


def test_featurize_matches_per_operation_results():
    a = make_point(
        -17,
        11,
        {(1, 0): [-50, -60], (2, 0): [-45, -45, -52], (3, 0): [-80, -90]},
    )
    b = make_point(
        10,
        5,
        {(1, 0): [-70, -80], (2, 0): [-55], (3, 0): [-60, -61, -62]},
    )
    vec = featurize_pair(a, b)
    expected = (
        naive_features([-50, -60], [-70, -80])
        + naive_features([-45, -45, -52], [-55])
        + naive_features([-80, -90], [-60, -61, -62])
    )
    assert np.allclose(vec, expected, atol=1e-9)


def test_featurize_symmetry_and_ratio_invariant_fuzz():
    rng = np.random.default_rng(23)
    for _ in range(200):
        traces_a = {
            (ap, 0): list(rng.integers(-100, 0, size=rng.integers(1, 10)))
            for ap in (1, 2, 3)
        }
        traces_b = {
            (ap, 0): list(rng.integers(-100, 0, size=rng.integers(1, 10)))
            for ap in (1, 2, 3)
        }
        a = make_point(-5, 3, traces_a)
        b = make_point(4, 9, traces_b)
        ab = featurize_pair(a, b)
        ba = featurize_pair(b, a)
        assert np.array_equal(ab, ba)
        for ap_slot in range(3):
            block = ab[6 * ap_slot : 6 * ap_slot + 6]
            md, savg, smin, high, avg, dtw_value = block
            assert high >= avg  # every value <= -70 is also <= -50
            assert 0.0 <= high <= 1.0 and 0.0 <= avg <= 1.0
            assert md >= 0 and dtw_value >= 0
            assert smin <= savg


def test_duplicate_readings_change_nothing():
    a = make_point_same_traces(-3, 2, [-50, -60, -70])
    a_dup = make_point_same_traces(-3, 2, [-50, -60, -60, -70, -50])
    b = make_point_same_traces(6, 4, [-55, -66])
    assert np.array_equal(featurize_pair(a, b), featurize_pair(a_dup, b))


def test_missing_ap_trace_is_an_error():
    a = make_point(-3, 2, {(1, 0): [-50], (2, 0): [-50]})  # no AP 3
    b = make_point_same_traces(6, 4, [-55])
    with pytest.raises(ValueError, match="missing trace"):
        featurize_pair(a, b)


def test_pair_features_block_order():
    a = make_point_same_traces(-3, 2, [-50])
    b = make_point_same_traces(6, 4, [-70])
    pf = pair_features(a, b)
    assert len(pf.per_ap) == 3
    assert pf.as_vector().tolist() == featurize_pair(a, b).tolist()


def test_feature_names_layout():
    assert len(FEATURE_NAMES) == 18
    assert FEATURE_NAMES[0] == "md_1"
    assert FEATURE_NAMES[5] == "dtw_1"
    assert FEATURE_NAMES[-1] == "dtw_3"
    assert FEATURE_CSV_HEADER.startswith("label,md_1,savg_1,smin_1,high_1,avg_1,dtw_1,md_2")


def test_feature_matrix_round_trip():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(7, 18))
    y = rng.integers(0, 2, size=7)
    buf = io.StringIO()
    write_feature_matrix(X, y, buf, comments={"seed": 3})
    buf.seek(0)
    X2, y2 = read_feature_matrix(buf)
    assert np.array_equal(X, X2)  # repr round-trips floats exactly
    assert np.array_equal(y, y2)


def test_feature_matrix_errors():
    with pytest.raises(FeatureFormatError):
        read_feature_matrix(io.StringIO("not,a,header\n"))
    bad_row = FEATURE_CSV_HEADER + "\n1," + ",".join(["0.0"] * 17) + "\n"
    with pytest.raises(FeatureFormatError, match="line 2"):
        read_feature_matrix(io.StringIO(bad_row))
    bad_label = FEATURE_CSV_HEADER + "\n7," + ",".join(["0.0"] * 18) + "\n"
    with pytest.raises(FeatureFormatError, match="label"):
        read_feature_matrix(io.StringIO(bad_label))
