import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcyclic.codes import LinearCode, build_code, cyclic_code, dual
from qcyclic.distance import (
    DistanceReport,
    WeightDistribution,
    bch_lower_bound,
    claimed_lower,
    enumerate_weights,
    exact_distribution,
    macwilliams,
    min_distance,
    verify_distance_theorem,
    weight_distribution,
)
from qcyclic.errors import BudgetExceeded, InapplicableM, InvariantViolation, NonIntegralResult
from qcyclic.galois import build_context
from qcyclic.linalg import gf_matmul
from qcyclic.weights import DefiningSet


def brute_weights(L: LinearCode) -> list[int]:
    hist = [0] * (L.n + 1)
    for msg in itertools.product(range(L.q), repeat=L.k):
        w = gf_matmul(np.array([msg], dtype=np.uint8), L.G, L.q)[0]
        hist[int((w != 0).sum())] += 1
    return hist


def test_repetition_distribution():
    rep = cyclic_code(DefiningSet(3, 4, (1, 2)), build_context(1))
    W = weight_distribution(rep)
    assert W.counts == (1, 0, 0, 3)
    # dual of the [3,1] repetition code is the [3,2] zero-sum code
    assert macwilliams(W, 2).counts == (1, 0, 9, 6)


def test_zero_code_transform():
    W = WeightDistribution(3, 4, (1, 0, 0, 0))
    assert macwilliams(W, 3).counts == (1, 9, 27, 27)


def test_macwilliams_rejects_bad_input():
    with pytest.raises(NonIntegralResult):
        macwilliams(WeightDistribution(4, 4, (1, 0, 0, 13, 2)), 2)  # B_1 = 4/16
    with pytest.raises(NonIntegralResult):
        macwilliams(WeightDistribution(4, 4, (1, 0, 0, 0, 15)), 2)  # B_1 < 0
    with pytest.raises(ValueError):
        WeightDistribution(3, 4, (2, 0, 0, 0))


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("i", [0, 1])
def test_enumeration_matches_bruteforce(m, i):
    C = build_code(i, m)
    if C.k <= 7:
        assert enumerate_weights(C) == brute_weights(C.linear)


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("i", [0, 1])
def test_round_trip_and_routes(m, i):
    C = build_code(i, m)
    W = weight_distribution(C)
    D = weight_distribution(dual(C))
    assert macwilliams(W, C.n - C.k) == D
    assert macwilliams(D, C.k) == W


def test_threaded_enumeration_agrees():
    C = build_code(0, 2)
    assert enumerate_weights(C, workers=4) == enumerate_weights(C)


def test_m2_exact_parameters():
    C0, C1 = build_code(0, 2), build_code(1, 2)
    assert min_distance(C0).exact == 3
    assert min_distance(C1).exact == 5
    assert min_distance(dual(C0)).exact == 6
    assert min_distance(dual(C1)).exact == 4


def test_via_dual_agrees_with_exhaustive():
    C = build_code(0, 2)
    direct = min_distance(C)
    through = min_distance(C, budget=4**6)  # 4^9 codewords no longer fit, the dual's 4^6 do
    assert direct.method == "exhaustive" and through.method == "via_dual"
    assert direct.exact == through.exact == 3


@pytest.mark.parametrize("m", [1, 2])
def test_bch_bound_is_sound(m):
    for i in (0, 1):
        for C in (build_code(i, m), dual(build_code(i, m))):
            delta, _ = bch_lower_bound(C)
            assert delta <= min_distance(C).exact


def test_bounds_only_m5():
    C = build_code(0, 5)
    r = min_distance(C, samples=200)
    assert r.method == "bounds_only" and r.exact is None
    assert r.lower >= 17 and r.lower <= r.upper
    assert r.seed == 0xC0DE


def test_sampling_is_deterministic():
    C = build_code(1, 3)
    assert min_distance(C, samples=500).to_dict() == min_distance(C, samples=500).to_dict()


def test_budget():
    with pytest.raises(BudgetExceeded):
        exact_distribution(build_code(0, 3), budget=1000)


def test_report_invariants():
    with pytest.raises(InvariantViolation):
        DistanceReport(None, 5, 3, "bounds_only")
    with pytest.raises(InvariantViolation):
        DistanceReport(4, 3, 4, "exhaustive")


@settings(max_examples=25, deadline=None)
@given(st.lists(st.lists(st.integers(0, 3), min_size=6, max_size=6), min_size=1, max_size=3))
def test_macwilliams_round_trip_random_codes(rows):
    L = LinearCode(4, 6, np.array(rows, dtype=np.uint8))
    W = weight_distribution(L)
    assert list(W.counts) == brute_weights(L)
    D = macwilliams(W, 6 - L.k)
    assert D == weight_distribution(L.dual())
    assert macwilliams(D, L.k) == W


def test_claimed_bounds():
    assert claimed_lower("odd_codes", 5) == 17
    assert claimed_lower("odd_codes", 7) == 17
    assert claimed_lower("even_c0", 10) == 65
    assert claimed_lower("even_c0", 12) == 257
    assert claimed_lower("even_c1_partial", 30) == 17
    with pytest.raises(InapplicableM):
        claimed_lower("odd_codes", 3)
    with pytest.raises(InapplicableM):
        claimed_lower("even_c0", 8)


@pytest.mark.parametrize(
    "which,m", [("odd_codes", 5), ("odd_codes", 7), ("odd_duals", 3), ("even_c0", 10), ("even_c0", 12), ("even_c1_dual", 6)]
)
def test_theorem_certification(which, m):
    r = verify_distance_theorem(which, m)
    assert r.passed, r.to_dict()


def test_partial_theorem_not_certified():
    r = verify_distance_theorem("even_c1_partial", 30)
    assert not r.passed
    assert r.details[-1]["containments"] == [False, True, False]
