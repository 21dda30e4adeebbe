"""Arithmetic in GF(2), GF(4) and GF(4^m) = GF(2^(2m)).

GF(4) symbols are the integers 0..3 read as two bits: bit 0 is the
coefficient of 1 and bit 1 the coefficient of w, where w^2 = w + 1. So
``2`` is w and ``3`` is W = w^2 = w + 1. Addition is XOR in every field
used here.

Elements of GF(4^m) are held internally as bitmask integers in the
polynomial basis of the modulus, with exp/log tables for O(1) products.
The public :class:`ExtFieldElement` wraps the exponent-or-zero form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

import numpy as np

from .errors import DivisionByZero, InvariantViolation, NonPrimitiveModulus, UnsupportedSize

if TYPE_CHECKING:
    from .poly import Poly

MAX_TABLE_M = 8


class GF4(enum.IntEnum):
    ZERO = 0
    ONE = 1
    W = 2
    WBAR = 3

    def __str__(self) -> str:
        return GF4_SYMBOLS[self]


GF4_SYMBOLS = "01wW"

# GF4_MUL[a, b] = a*b, GF4_INV[a] = 1/a (entry 0 unused)
GF4_MUL = np.array(
    [[0, 0, 0, 0],
     [0, 1, 2, 3],
     [0, 2, 3, 1],
     [0, 3, 1, 2]],
    dtype=np.uint8,
)
GF4_INV = np.array([0, 1, 3, 2], dtype=np.uint8)


def gf4_add(a: int, b: int) -> GF4:
    return GF4(a ^ b)


def gf4_mul(a: int, b: int) -> GF4:
    return GF4(int(GF4_MUL[a, b]))


def gf4_inv(a: int) -> GF4:
    if a == 0:
        raise DivisionByZero("inverse of 0 in GF(4)")
    return GF4(int(GF4_INV[a]))


def gf4_trace(x: int) -> int:
    """Absolute trace GF(4) -> GF(2), x + x^2.

    With the bit layout above this is just the w-coefficient.
    """
    return (int(x) >> 1) & 1


def gf4_conjugate(x: int) -> GF4:
    """Frobenius x -> x^2 (swaps w and W, fixes 0 and 1)."""
    return GF4(int(GF4_MUL[x, x]))


def parse_gf4(symbol: str) -> GF4:
    try:
        return GF4(GF4_SYMBOLS.index(symbol.strip()))
    except ValueError:
        raise ValueError(f"not a GF(4) symbol: {symbol!r}") from None


# --------------------------------------------------------------------------
# primitive polynomials
# --------------------------------------------------------------------------

def parse_modulus(text: str) -> int:
    """Parse a modulus written as a bit string, lowest degree first.

    ``0x``/``0b``-prefixed integers (bit i = coefficient of z^i) are also
    accepted.
    """
    text = text.strip()
    if text.lower().startswith(("0x", "0b")):
        return int(text, 0)
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"bad modulus bitmask {text!r}")
    return int(text[::-1], 2)


def format_modulus(mod: int) -> str:
    return format(mod, "b")[::-1]


def load_moduli(path: str | Path | None = None) -> dict[int, int]:
    """Read a ``m:bits`` config file. ``None`` loads the shipped defaults."""
    if path is None:
        text = resources.files("qcyclic").joinpath("data/primitive_polys.txt").read_text()
    else:
        text = Path(path).read_text()
    out: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            m_str, bits = line.split(":")
            m = int(m_str)
            mod = parse_modulus(bits)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: cannot parse {line!r}") from exc
        if mod.bit_length() - 1 != 2 * m:
            raise ValueError(f"{path}:{lineno}: modulus for m={m} must have degree {2 * m}")
        out[m] = mod
    return out


DEFAULT_MODULI = load_moduli()


# --------------------------------------------------------------------------
# the extension field
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtFieldElement:
    """Element of GF(4^m): ``exp is None`` means zero, else alpha**exp."""

    exp: int | None

    @property
    def is_zero(self) -> bool:
        return self.exp is None

    def __repr__(self) -> str:
        return "ExtFieldElement(0)" if self.exp is None else f"ExtFieldElement(a^{self.exp})"


ZERO = ExtFieldElement(None)


@dataclass(frozen=True, eq=False)
class FieldContext:
    """Immutable table context for GF(4^m) with a fixed primitive element.

    ``exp_table[k]`` is alpha^k as a bitmask; ``log_table[x]`` inverts it
    (``log_table[0] == -1``). ``gf4_embed[s]`` is the bitmask of the GF(4)
    symbol ``s`` inside GF(4^m).
    """

    m: int
    n: int
    modulus: int
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)
    gf4_embed: tuple[int, int, int, int]
    conjugate_embedding: bool = False

    @property
    def degree(self) -> int:
        return 2 * self.m

    @property
    def alpha(self) -> ExtFieldElement:
        return ExtFieldElement(1 % self.n)

    # -- bitmask-level helpers, used by the hot loops elsewhere --

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(int(self.log_table[a]) + int(self.log_table[b])) % self.n])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return int(self.exp_table[(-int(self.log_table[a])) % self.n])

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("zero to a negative power")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % self.n])

    def alpha_pow(self, k: int) -> int:
        return int(self.exp_table[k % self.n])

    def to_gf4(self, x: int) -> GF4:
        """Map an element of the embedded GF(4) back to its symbol."""
        try:
            return GF4(self.gf4_embed.index(x))
        except ValueError:
            raise InvariantViolation(f"element {x:#x} is not in the embedded GF(4)") from None

    def to_gf2(self, x: int) -> int:
        if x not in (0, 1):
            raise InvariantViolation(f"element {x:#x} is not in GF(2)")
        return x

    # -- conversions for the public element type --

    def to_bits(self, a: ExtFieldElement) -> int:
        return 0 if a.exp is None else int(self.exp_table[a.exp % self.n])

    def from_bits(self, x: int) -> ExtFieldElement:
        return ZERO if x == 0 else ExtFieldElement(int(self.log_table[x]))

    def embed(self, s: int) -> ExtFieldElement:
        return self.from_bits(self.gf4_embed[s])


def _build_tables(m: int, modulus: int) -> tuple[np.ndarray, np.ndarray]:
    deg = 2 * m
    size = 1 << deg
    n = size - 1
    exp = np.zeros(n, dtype=np.int64)
    log = np.full(size, -1, dtype=np.int64)
    x = 1
    for k in range(n):
        if x == 0 or log[x] != -1:
            raise NonPrimitiveModulus(
                f"z has order {k} modulo {format_modulus(modulus)}, not {n}"
            )
        exp[k] = x
        log[x] = k
        x <<= 1
        if x >> deg:
            x ^= modulus
    if x != 1:
        raise NonPrimitiveModulus(f"modulus {format_modulus(modulus)} is not primitive")
    exp.setflags(write=False)
    log.setflags(write=False)
    return exp, log


@lru_cache(maxsize=None)
def _cached_context(m: int, modulus: int, conjugate_embedding: bool) -> FieldContext:
    exp, log = _build_tables(m, modulus)
    n = (1 << (2 * m)) - 1
    third = n // 3
    w_exp, wbar_exp = (2 * third, third) if conjugate_embedding else (third, 2 * third)
    embed = (0, 1, int(exp[w_exp]), int(exp[wbar_exp]))
    ctx = FieldContext(m, n, modulus, exp, log, embed, conjugate_embedding)
    _check_embedding(ctx)
    return ctx


def build_context(
    m: int,
    modulus_override: int | str | None = None,
    *,
    conjugate_embedding: bool = False,
    moduli: dict[int, int] | None = None,
) -> FieldContext:
    """Build (or fetch from cache) the arithmetic context for GF(4^m).

    ``moduli`` replaces the shipped default table (as read by
    :func:`load_moduli`); ``modulus_override`` takes precedence over both.
    ``conjugate_embedding`` sends w to alpha^(2n/3) instead of alpha^(n/3).
    """
    if not 1 <= m <= MAX_TABLE_M:
        raise UnsupportedSize(f"m={m} outside table range 1..{MAX_TABLE_M}")
    if modulus_override is not None:
        modulus = parse_modulus(modulus_override) if isinstance(modulus_override, str) else modulus_override
    else:
        modulus = (moduli or DEFAULT_MODULI).get(m, DEFAULT_MODULI[m])
    if modulus.bit_length() - 1 != 2 * m:
        raise ValueError(f"modulus must have degree {2 * m}, got {modulus.bit_length() - 1}")
    return _cached_context(m, modulus, conjugate_embedding)


def _check_embedding(ctx: FieldContext) -> None:
    for a in range(4):
        for b in range(4):
            ea, eb = ctx.gf4_embed[a], ctx.gf4_embed[b]
            if ea ^ eb != ctx.gf4_embed[a ^ b] or ctx.mul(ea, eb) != ctx.gf4_embed[GF4_MUL[a, b]]:
                raise InvariantViolation("GF(4) embedding is not a ring homomorphism")


# --------------------------------------------------------------------------
# element operations on the public type
# --------------------------------------------------------------------------

def ext_add(a: ExtFieldElement, b: ExtFieldElement, ctx: FieldContext) -> ExtFieldElement:
    return ctx.from_bits(ctx.to_bits(a) ^ ctx.to_bits(b))


def ext_mul(a: ExtFieldElement, b: ExtFieldElement, ctx: FieldContext) -> ExtFieldElement:
    if a.exp is None or b.exp is None:
        return ZERO
    return ExtFieldElement((a.exp + b.exp) % ctx.n)


def ext_pow(a: ExtFieldElement, e: int, ctx: FieldContext) -> ExtFieldElement:
    if a.exp is None:
        if e < 0:
            raise DivisionByZero("zero to a negative power")
        return ExtFieldElement(0) if e == 0 else ZERO
    return ExtFieldElement((a.exp * e) % ctx.n)


def ext_inv(a: ExtFieldElement, ctx: FieldContext) -> ExtFieldElement:
    if a.exp is None:
        raise DivisionByZero("inverse of zero")
    return ExtFieldElement((-a.exp) % ctx.n)


def multiplicative_order(a: ExtFieldElement, ctx: FieldContext) -> int:
    """Order by repeated multiplication; deliberately table-free in spirit."""
    if a.exp is None:
        raise DivisionByZero("zero has no multiplicative order")
    x = a
    for k in range(1, ctx.n + 1):
        if x.exp == 0:
            return k
        x = ext_mul(x, a, ctx)
    raise InvariantViolation("order exceeds n")


# --------------------------------------------------------------------------
# minimal polynomials
# --------------------------------------------------------------------------

def product_of_linear_factors(exponents: Iterable[int], ctx: FieldContext) -> list[int]:
    """Coefficients (ascending, bitmask form) of prod (x - alpha^e)."""
    coeffs = [1]
    for e in exponents:
        r = ctx.alpha_pow(e)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] ^= c
            nxt[i] ^= ctx.mul(c, r)
        coeffs = nxt
    return coeffs


def minimal_poly(j: int, ctx: FieldContext, q: int = 4) -> Poly:
    """Minimal polynomial of alpha^j over GF(q), q in {2, 4}.

    Built as a product over the q-cyclotomic coset of j in GF(4^m)[x];
    each coefficient must land in the subfield or InvariantViolation is
    raised.
    """
    from .poly import Poly
    from .weights import cyclotomic_coset

    coset = cyclotomic_coset(j % ctx.n, q, ctx.n)
    coeffs = product_of_linear_factors(sorted(coset), ctx)
    if q == 4:
        return Poly(4, [ctx.to_gf4(c) for c in coeffs])
    if q == 2:
        return Poly(2, [ctx.to_gf2(c) for c in coeffs])
    raise ValueError(f"unsupported subfield GF({q})")
