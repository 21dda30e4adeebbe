"""Dense polynomials over GF(2) and GF(4).

Coefficients are ascending uint8 arrays (GF(4) symbols as in
:mod:`qcyclic.galois`). GF(4) products are computed on the two bit planes
with ordinary integer convolutions, which keeps degree-2000 products cheap.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DivisionByZero, FieldMismatch, NotClosed
from .galois import GF4_INV, GF4_MUL, GF4_SYMBOLS, FieldContext, minimal_poly
from .weights import DefiningSet, cyclotomic_coset


class Poly:
    """Immutable polynomial over GF(q), q in {2, 4}.

    The zero polynomial has no coefficients and ``degree == -1``.
    """

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs: Iterable[int] | np.ndarray = ()):
        if q not in (2, 4):
            raise ValueError(f"only GF(2) and GF(4) are supported, got q={q}")
        arr = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=np.uint8)
        if arr.size and arr.max() >= q:
            raise ValueError(f"coefficient outside GF({q})")
        nz = np.flatnonzero(arr)
        arr = arr[: nz[-1] + 1] if len(nz) else arr[:0]
        arr.setflags(write=False)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, q: int, degree: int, coeff: int = 1) -> Poly:
        c = np.zeros(degree + 1, dtype=np.uint8)
        c[degree] = coeff
        return cls(q, c)

    @classmethod
    def from_text(cls, text: str, q: int = 4) -> Poly:
        """Parse ``"1,w,1"`` (ascending coefficients)."""
        text = text.strip()
        if not text:
            return cls(q)
        return cls(q, [GF4_SYMBOLS.index(s.strip()) for s in text.split(",")])

    def to_text(self) -> str:
        return ",".join(GF4_SYMBOLS[c] for c in self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def lead(self) -> int:
        return int(self.coeffs[-1]) if len(self.coeffs) else 0

    def monic(self) -> Poly:
        if self.is_zero or self.lead == 1:
            return self
        return Poly(self.q, GF4_MUL[GF4_INV[self.lead]][self.coeffs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.q, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"Poly(GF{self.q}, [{self.to_text()}])"

    def __add__(self, other: Poly) -> Poly:
        return poly_add(self, other)

    __sub__ = __add__

    def __mul__(self, other: Poly) -> Poly:
        return poly_mul(self, other)

    def __mod__(self, other: Poly) -> Poly:
        return poly_divmod(self, other)[1]

    def __floordiv__(self, other: Poly) -> Poly:
        return poly_divmod(self, other)[0]


def _same_field(a: Poly, b: Poly) -> int:
    if a.q != b.q:
        raise FieldMismatch(f"GF({a.q}) vs GF({b.q})")
    return a.q


def _conv2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a.astype(np.int64), b.astype(np.int64)) & 1


def mul_coeffs(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    """Raw product of coefficient arrays over GF(q)."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=np.uint8)
    if q == 2:
        return _conv2(a, b).astype(np.uint8)
    a0, a1 = a & 1, a >> 1
    b0, b1 = b & 1, b >> 1
    # (a0 + a1 w)(b0 + b1 w) with w^2 = w + 1
    p00, p11 = _conv2(a0, b0), _conv2(a1, b1)
    cross = _conv2(a0, b1) ^ _conv2(a1, b0)
    return ((p00 ^ p11) | ((cross ^ p11) << 1)).astype(np.uint8)


def poly_add(a: Poly, b: Poly) -> Poly:
    q = _same_field(a, b)
    size = max(len(a.coeffs), len(b.coeffs))
    out = np.zeros(size, dtype=np.uint8)
    out[: len(a.coeffs)] ^= a.coeffs
    out[: len(b.coeffs)] ^= b.coeffs
    return Poly(q, out)


def poly_mul(a: Poly, b: Poly) -> Poly:
    q = _same_field(a, b)
    return Poly(q, mul_coeffs(a.coeffs, b.coeffs, q))


def poly_product(polys: Sequence[Poly], q: int = 4) -> Poly:
    """Balanced product tree; much faster than a left fold for many factors."""
    items = list(polys)
    if not items:
        return Poly(q, [1])
    while len(items) > 1:
        nxt = [poly_mul(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    q = _same_field(a, b)
    if b.is_zero:
        raise DivisionByZero("polynomial division by zero")
    db = b.degree
    if a.degree < db:
        return Poly(q), a
    r = a.coeffs.copy()
    quot = np.zeros(a.degree - db + 1, dtype=np.uint8)
    inv_lead = GF4_INV[b.lead]
    rows = GF4_MUL[:, b.coeffs]  # rows[c] = c * b
    for i in range(a.degree - db, -1, -1):
        c = r[i + db]
        if c:
            c = GF4_MUL[c, inv_lead]
            quot[i] = c
            r[i : i + db + 1] ^= rows[c]
    return Poly(q, quot), Poly(q, r)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    _same_field(a, b)
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    q = _same_field(a, b)
    if a.is_zero or b.is_zero:
        return Poly(q)
    quot, rem = poly_divmod(poly_mul(a, b), poly_gcd(a, b))
    assert rem.is_zero
    return quot.monic()


def reciprocal(a: Poly) -> Poly:
    """x^deg(a) * a(1/x), made monic."""
    return Poly(a.q, a.coeffs[::-1]).monic()


def x_n_minus_1(n: int, q: int = 4) -> Poly:
    c = np.zeros(n + 1, dtype=np.uint8)
    c[0] = c[n] = 1
    return Poly(q, c)


def evaluate(p: Poly, x: int, ctx: FieldContext) -> int:
    """p(x) for x in GF(4^m) given as a bitmask; returns a bitmask."""
    acc = 0
    for c in p.coeffs[::-1]:
        acc = ctx.mul(acc, x) ^ ctx.gf4_embed[c]
    return acc


def coset_representatives(T: DefiningSet) -> list[int]:
    seen: set[int] = set()
    reps = []
    for t in T:
        if t not in seen:
            seen |= cyclotomic_coset(t, T.q, T.n)
            reps.append(t)
    return reps


def generator_from_defining_set(T: DefiningSet, ctx: FieldContext) -> Poly:
    """Monic generator polynomial with zeros alpha^t, t in T, over GF(T.q).

    One minimal polynomial per coset (each checked to have subfield
    coefficients), then a product tree.
    """
    if T.n != ctx.n:
        raise ValueError(f"defining set has n={T.n}, field has n={ctx.n}")
    if not T.is_closed:
        raise NotClosed(f"defining set is not closed under multiplication by {T.q}")
    factors = [minimal_poly(s, ctx, T.q) for s in coset_representatives(T)]
    return poly_product(factors, T.q)
