from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcyclic.errors import HypothesisViolated, InapplicableM, NonCoprime
from qcyclic.weights import (
    DefiningSet,
    arithmetic_run,
    bch_multiplier_search,
    cyclotomic_coset,
    cyclotomic_cosets,
    defining_set,
    defining_set_size,
    in_defining_set,
    lemma_multiplier,
    longest_consecutive_run,
    modulus_for,
    partial_multipliers,
    sweep_w2_w4_coupling,
    verify_av_containment,
    verify_gcd_lemma,
    verify_partial_theorem,
    verify_w2_w4_coupling,
    w2,
    w4,
    w4_array,
)


def digit_sum(x: int, base: int) -> int:
    s = 0
    while x:
        x, r = divmod(x, base)
        s += r
    return s


@given(st.integers(0, 2**200))
def test_w4_matches_digit_loop(x):
    assert w4(x) == digit_sum(x, 4)
    assert w2(x) == digit_sum(x, 2)


@given(st.lists(st.integers(0, 2**63 - 1), min_size=1, max_size=50))
def test_w4_array_matches_scalar(xs):
    assert w4_array(np.array(xs, dtype=np.uint64)).tolist() == [w4(x) for x in xs]


def test_w4_examples():
    assert [w4(x) for x in (0, 3, 4, 5, 15, 16)] == [0, 3, 1, 2, 6, 1]


def test_cosets():
    assert cyclotomic_coset(1, 4, 15) == {1, 4}
    assert cyclotomic_coset(5, 4, 15) == {5}
    assert cyclotomic_coset(3, 2, 15) == {3, 6, 12, 9}
    cos = cyclotomic_cosets(4, 15)
    assert sum(len(c) for c in cos) == 15
    with pytest.raises(NonCoprime):
        cyclotomic_coset(1, 4, 6)


def test_defining_sets_m2():
    assert defining_set(0, 2).members == (2, 5, 7, 8, 10, 13)
    assert defining_set(1, 2).members == (1, 3, 4, 6, 9, 11, 12, 14)
    assert defining_set(1, 1).members == (1,)
    assert defining_set(0, 1).members == (2,)


@pytest.mark.parametrize("m", range(1, 9))
def test_partition_closure_sizes(m):
    n = modulus_for(m)
    T0, T1 = defining_set(0, m), defining_set(1, m)
    assert len(T0) == defining_set_size(0, m)
    assert len(T1) == defining_set_size(1, m)
    assert not set(T0.members) & set(T1.members)
    assert len(T0) + len(T1) == n - 1
    assert T0.is_closed and T1.is_closed
    # negation swaps the sets for odd m and fixes them for even m
    if m % 2:
        assert T0.negate() == T1
    else:
        assert T0.negate() == T0 and T1.negate() == T1


@pytest.mark.parametrize("m", range(1, 7))
def test_binary_weight_sets_are_2_closed(m):
    assert defining_set(0, m, base=2).closed_under(2)
    assert defining_set(1, m, base=2).closed_under(2)


def test_membership_without_materialising():
    T = defining_set(1, 3)
    assert all(in_defining_set(t, 1, 3) == (t in T) for t in range(63))
    assert in_defining_set(0, 0, 3, with_zero=True)
    assert not in_defining_set(0, 0, 3)
    # huge m: w4(1) = 1
    assert in_defining_set(1, 1, 40)


@given(st.sets(st.integers(0, 62), max_size=20), st.sampled_from([1, 2, 4, 5, 8, 62]))
def test_set_algebra(members, a):
    T = DefiningSet(63, 4, tuple(members))
    assert T.complement().complement() == T
    assert T.negate().negate() == T
    assert len(T.scale(a)) == len(T)
    assert DefiningSet.from_rle(63, 4, T.rle()) == T
    cl = T.closure(4)
    assert cl.is_closed and set(T.members) <= set(cl.members)


def test_defining_set_rejects_out_of_range():
    with pytest.raises(ValueError):
        DefiningSet(15, 4, (15,))


# ---- number-theoretic lemmas ----

def test_gcd_lemma_examples():
    r = verify_gcd_lemma(2, 3, 1)
    assert r.predicted == r.actual == 1
    r = verify_gcd_lemma(3, 2, 3)
    assert r.predicted == r.actual == 2
    with pytest.raises(HypothesisViolated):
        verify_gcd_lemma(2, 1, 2)


@given(st.integers(2, 30), st.integers(1, 30), st.integers(1, 30))
def test_gcd_lemma_against_euclid(a, m, l):
    if (l // gcd(m, l)) % 2 == 0:
        return
    assert verify_gcd_lemma(a, m, l).actual == gcd(a**m + 1, a**l - 1)
    assert verify_gcd_lemma(a, m, l).match


@pytest.mark.parametrize("m", [5, 7, 9, 10, 12, 14])
def test_containment_lemmas(m):
    r = verify_av_containment(m)
    assert r.coprime and r.contained


def test_containment_lemma_oracle_m5():
    v, a_max = lemma_multiplier(5)
    assert (v, a_max) == (17, 16)
    T0 = defining_set(0, 5)
    assert all((a * v) % 1023 in T0 for a in range(1, a_max + 1))


def test_lemma_not_applicable():
    for m in (1, 2, 3, 4, 6, 8):
        with pytest.raises(InapplicableM):
            lemma_multiplier(m)


def test_coupling_examples():
    for a in (1, 2, 3, 5, 7, 12345):
        assert verify_w2_w4_coupling(a)
    assert sweep_w2_w4_coupling(10**4) == []


def test_partial_multipliers():
    assert partial_multipliers(30) == (8191, 257, 16)
    with pytest.raises(InapplicableM):
        partial_multipliers(14)


def test_partial_theorem_m30_containments():
    r = verify_partial_theorem(30)
    # the w2 containment holds; the w4 containments do not (a = 2 lands on digit sum 19)
    assert r.contained_T21
    assert not r.contained_T40
    assert r.witnesses == (2, 6, 8, 10, 14)
    n = modulus_for(30)
    assert w4(2 * 8191 * 257 % n) == 19


# ---- consecutive runs ----

def test_runs():
    assert longest_consecutive_run(defining_set(1, 2)) == 2  # {3, 4}
    assert bch_multiplier_search(defining_set(1, 2)).run == 4
    assert longest_consecutive_run(DefiningSet(15, 4, ())) == 0
    # wraps through 0 only when 0 is a member
    assert longest_consecutive_run(DefiningSet(15, 4, (14, 0, 1))) == 3
    assert longest_consecutive_run(DefiningSet(15, 4, (14, 1))) == 1


def test_arithmetic_run_matches_materialised():
    n = modulus_for(5)
    T = defining_set(0, 5)
    for u in (1, 2, 17, 1006):
        if gcd(u, n) != 1:
            continue
        member = lambda x: x in T  # noqa: E731
        want = bch_multiplier_search(T, [pow(u, -1, n)]).run
        got = arithmetic_run(member, u, n, limit=n)
        # the progression run around a=1 is bounded by the longest run anywhere
        assert got <= want
        vec = arithmetic_run(lambda x: T.mask[x.astype(np.int64)], u, n, limit=n, vectorized=True, block=5)
        assert vec == got
