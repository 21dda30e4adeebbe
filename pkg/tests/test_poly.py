import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcyclic.errors import DivisionByZero, NotClosed
from qcyclic.galois import build_context
from qcyclic.poly import (
    Poly,
    evaluate,
    generator_from_defining_set,
    poly_divmod,
    poly_gcd,
    poly_lcm,
    poly_product,
    reciprocal,
    x_n_minus_1,
)
from qcyclic.weights import DefiningSet, defining_set

polys = st.lists(st.integers(0, 3), max_size=12).map(lambda c: Poly(4, c))
nonzero = polys.filter(lambda p: not p.is_zero)


def test_basics():
    assert Poly(4, [1, 0, 0]).degree == 0
    assert Poly(4).degree == -1 and Poly(4).is_zero
    assert Poly.from_text("1,w,1").to_text() == "1,w,1"
    assert Poly.from_text("") == Poly(4)
    with pytest.raises(AttributeError):
        Poly(4, [1]).q = 2
    with pytest.raises(ValueError):
        Poly(2, [2])


def test_gcd_lcm_examples():
    a, b = Poly(4, [1, 1]), Poly(4, [2, 1])  # x+1, x+w
    assert poly_gcd(a, b) == Poly(4, [1])
    assert poly_lcm(a, b) == Poly(4, [2, 3, 1])  # x^2 + W x + w
    assert poly_gcd(a * b, a) == a
    # x^3 - 1 = (x+1)(x+w)(x+W) over GF(4)
    assert poly_product([a, b, Poly(4, [3, 1])]) == x_n_minus_1(3)


def test_reciprocal():
    assert reciprocal(Poly(4, [2, 1])) == Poly(4, [3, 1])  # x+w -> (1 + w x)/w = x + W
    assert reciprocal(Poly(2, [1, 1, 0, 1])) == Poly(2, [1, 0, 1, 1])


def test_divide_by_zero():
    with pytest.raises(DivisionByZero):
        poly_divmod(Poly(4, [1]), Poly(4))


@given(polys, nonzero)
def test_divmod_reconstructs(a, b):
    q, r = poly_divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a + a).is_zero


@pytest.mark.parametrize("m", [1, 2, 3, 4])
@pytest.mark.parametrize("i", [0, 1])
def test_generator_divides_and_vanishes(m, i):
    ctx = build_context(m)
    T = defining_set(i, m)
    g = generator_from_defining_set(T, ctx)
    assert g.degree == len(T)
    assert poly_divmod(x_n_minus_1(ctx.n), g)[1].is_zero
    for t in range(ctx.n):
        assert (evaluate(g, ctx.alpha_pow(t), ctx) == 0) == (t in T)


def test_generator_rejects_unclosed_set():
    with pytest.raises(NotClosed):
        generator_from_defining_set(DefiningSet(15, 4, (1, 2, 4)), build_context(2))


def test_modulus_choice_keeps_degree():
    other = build_context(2, "11001")  # 1 + z + z^4
    alt = build_context(2, "10011")  # 1 + z^3 + z^4, the reciprocal
    assert other.modulus != alt.modulus
    T = defining_set(1, 2)
    g1 = generator_from_defining_set(T, other)
    g2 = generator_from_defining_set(T, alt)
    assert g1.degree == g2.degree == 8
