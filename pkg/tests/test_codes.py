import json

import numpy as np
import pytest

from qcyclic.codes import (
    build_code,
    code_from_descriptor,
    cyclic_code,
    descriptor,
    dual,
    encode,
    encode_poly,
    even_weight_subcode,
    expected_dimension,
    extend,
    hull_dimension,
    intersection_generator,
    is_duadic_pair,
    is_even_like_duadic_pair,
    is_lcd,
    is_odd_like,
    iterate_codewords,
    multiplier,
    scalar_multiple,
    word_sum,
)
from qcyclic.errors import AlreadyEven, NonCoprime
from qcyclic.galois import build_context
from qcyclic.poly import Poly, poly_divmod, x_n_minus_1
from qcyclic.weights import DefiningSet


@pytest.fixture(scope="module")
def m2():
    ctx = build_context(2)
    return build_code(0, 2, ctx), build_code(1, 2, ctx)


def test_m1_generators():
    C0, C1 = build_code(0, 1), build_code(1, 1)
    # w is embedded as alpha^(n/3) = alpha, so T(1,1) = {1} gives x + w
    assert C1.g == Poly(4, [2, 1])
    assert C0.g == Poly(4, [3, 1])
    assert C0.k == C1.k == 2


def test_m2_dimensions(m2):
    C0, C1 = m2
    assert (C0.n, C0.k) == (15, 9)
    assert (C1.n, C1.k) == (15, 7)
    assert dual(C0).k == 6 and dual(C1).k == 8


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_expected_dimension(m):
    for i in (0, 1):
        assert build_code(i, m).k == expected_dimension(i, m)


def test_dual_matches_linear_algebra(m2):
    for C in m2:
        assert dual(C).linear == C.linear.dual()


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_dual_is_even_weight_subcode(m):
    C0, C1 = build_code(0, m), build_code(1, m)
    if m % 2:
        assert dual(C0) == even_weight_subcode(C0)
        assert dual(C1) == even_weight_subcode(C1)
    else:
        assert dual(C0) == even_weight_subcode(C1)
        assert dual(C1) == even_weight_subcode(C0)
    assert dual(dual(C0)) == C0


def test_even_weight_words_have_zero_sum(m2):
    E = even_weight_subcode(m2[0])
    assert not word_sum(E.G).any()
    with pytest.raises(AlreadyEven):
        even_weight_subcode(E)


def test_multiplier(m2):
    C0, C1 = m2
    assert multiplier(C0, 1) == C0
    # for even m the sets are closed under negation
    assert multiplier(C0, -1) == C0
    C0_3, C1_3 = build_code(0, 3), build_code(1, 3)
    assert multiplier(C0_3, -1) == C1_3
    with pytest.raises(NonCoprime):
        multiplier(C0, 3)


def test_multiplier_permutes_coordinates(m2):
    C = m2[1]
    a = 2
    M = multiplier(C, a)
    for row in C.G:
        perm = np.zeros_like(row)
        perm[(np.arange(C.n) * a) % C.n] = row
        assert M.contains(perm)


def test_duadic():
    for m in (1, 3, 5):
        C0, C1 = build_code(0, m), build_code(1, m)
        assert is_odd_like(C0) and is_odd_like(C1)
        assert is_duadic_pair(C0, C1, -1)
        assert is_even_like_duadic_pair(dual(C0), dual(C1), -1)
    for m in (2, 4):
        assert not is_duadic_pair(build_code(0, m), build_code(1, m), -1)


def test_lcd(m2):
    for C in m2:
        assert is_lcd(C)
        assert hull_dimension(C) == 0
    C = build_code(0, 3)
    assert not is_lcd(C)
    assert hull_dimension(C) == C.k - 1  # the hull is the even-weight subcode


def test_repetition_code_is_lcd():
    ctx = build_context(1)
    rep = cyclic_code(DefiningSet(3, 4, (1, 2)), ctx)
    assert rep.k == 1 and rep.g == Poly(4, [1, 1, 1])
    assert is_lcd(rep) and hull_dimension(rep) == 0


def test_intersection_is_repetition(m2):
    rep = poly_divmod(x_n_minus_1(15), Poly(4, [1, 1]))[0]
    assert intersection_generator(*m2) == rep


def test_extend():
    X = extend(build_code(0, 1))
    assert (X.n, X.k) == (4, 2)
    assert not word_sum(X.G).any()


def test_encode_and_iterate(m2):
    C = build_code(1, 1)
    words = list(iterate_codewords(C))
    assert len(words) == 16
    assert len({w.tobytes() for w in words}) == 16
    assert all(C.contains(w) for w in words)
    msg = [2, 3]
    assert C.contains(encode(C, msg)) and C.contains(encode_poly(C, msg))
    C1 = m2[1]
    w = encode(C1, np.arange(7) % 4)
    assert C1.contains(scalar_multiple(2, w))
    assert C1.contains(np.roll(w, 1))  # cyclic


def test_descriptor_round_trip(m2):
    for i, C in enumerate(m2):
        d = json.loads(json.dumps(descriptor(C, i)))
        assert code_from_descriptor(d) == C
        assert d["generator"] == C.g.to_text()


def test_descriptor_rejects_tampered_generator(m2):
    d = descriptor(m2[0], 0)
    d["generator"] = "1,1"
    with pytest.raises(ValueError):
        code_from_descriptor(d)
