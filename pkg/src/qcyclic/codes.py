"""Cyclic codes C(i, m) of length 4^m - 1 and the operations on them.

Cyclic codes are identified by their defining set; two codes are equal iff
q, n and the defining set agree. Non-cyclic results (extensions, traces,
Gray images) are :class:`LinearCode` instances carrying an RREF generator
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .errors import AlreadyEven, BudgetExceeded, NonCoprime
from .galois import GF4_MUL, FieldContext, build_context, format_modulus
from .linalg import gf_matmul, nullspace, rank, rref
from .poly import Poly, generator_from_defining_set, mul_coeffs, poly_divmod
from .weights import DefiningSet, defining_set, modulus_for

DEFAULT_BUDGET = 1 << 22
MAX_BUILD_M = 6


@dataclass(frozen=True, eq=False)
class LinearCode:
    """Code given by a generator matrix, kept in reduced row echelon form."""

    q: int
    n: int
    G: np.ndarray = field(repr=False)
    name: str = ""

    def __post_init__(self) -> None:
        G = np.asarray(self.G, dtype=np.uint8).reshape(-1, self.n)
        R = rref(G, self.q)[0] if len(G) else G
        R.setflags(write=False)
        object.__setattr__(self, "G", R)

    @property
    def k(self) -> int:
        return self.G.shape[0]

    def dual(self) -> LinearCode:
        return LinearCode(self.q, self.n, nullspace(self.G, self.q, self.n), f"dual({self.name})")

    def contains(self, word: Sequence[int]) -> bool:
        w = np.asarray(word, dtype=np.uint8)[None, :]
        return rank(np.vstack([self.G, w]), self.q) == self.k

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (self.q, self.n) == (other.q, other.n) and np.array_equal(self.G, other.G)

    def __hash__(self) -> int:
        return hash((self.q, self.n, self.G.tobytes()))

    def params(self) -> str:
        return f"[{self.n},{self.k}]_{self.q}"


@dataclass(frozen=True, eq=False)
class CyclicCode:
    q: int
    n: int
    T: DefiningSet
    g: Poly
    ctx: FieldContext = field(repr=False)
    label: str = ""

    @property
    def k(self) -> int:
        return self.n - len(self.T)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclicCode):
            return NotImplemented
        return (self.q, self.n, self.T) == (other.q, other.n, other.T)

    def __hash__(self) -> int:
        return hash((self.q, self.n, self.T))

    @cached_property
    def shift_rows(self) -> np.ndarray:
        """k x n matrix whose rows are x^j g(x), j < k (not reduced)."""
        out = np.zeros((self.k, self.n), dtype=np.uint8)
        for j in range(self.k):
            out[j, j : j + len(self.g.coeffs)] = self.g.coeffs
        return out

    @cached_property
    def linear(self) -> LinearCode:
        return LinearCode(self.q, self.n, self.shift_rows, self.label)

    @property
    def G(self) -> np.ndarray:
        return self.linear.G

    def contains(self, word: Sequence[int]) -> bool:
        return poly_divmod(Poly(self.q, word), self.g)[1].is_zero

    def params(self) -> str:
        return f"[{self.n},{self.k}]_{self.q}"


def cyclic_code(T: DefiningSet, ctx: FieldContext, label: str = "") -> CyclicCode:
    g = generator_from_defining_set(T, ctx)
    return CyclicCode(T.q, T.n, T, g, ctx, label)


def build_code(i: int, m: int, ctx: FieldContext | None = None) -> CyclicCode:
    """C(i, m): the quaternary cyclic code with defining set T(i, m)."""
    if not 1 <= m <= MAX_BUILD_M:
        raise ValueError(f"m={m} outside constructive range 1..{MAX_BUILD_M}")
    ctx = ctx or build_context(m)
    if ctx.m != m:
        raise ValueError(f"context is for m={ctx.m}, not {m}")
    return cyclic_code(defining_set(i, m, 4), ctx, f"C({i},{m})")


def expected_dimension(i: int, m: int) -> int:
    if m % 2:
        return 2 ** (2 * m - 1)
    return 2 ** (2 * m - 1) + (1 if i == 0 else -1)


# --------------------------------------------------------------------------
# defining-set algebra
# --------------------------------------------------------------------------

def dual_defining_set(T: DefiningSet) -> DefiningSet:
    """Z_n minus (-T)."""
    return T.negate().complement()


def dual(C: CyclicCode) -> CyclicCode:
    return cyclic_code(dual_defining_set(C.T), C.ctx, f"dual({C.label})")


def even_weight_subcode(C: CyclicCode) -> CyclicCode:
    if 0 in C.T:
        raise AlreadyEven(f"{C.label or 'code'} already has 0 in its defining set")
    return cyclic_code(C.T.union([0]), C.ctx, f"even({C.label})")


def multiplier(C: CyclicCode, a: int) -> CyclicCode:
    """Image of C under the coordinate permutation x -> x^a."""
    if gcd(a, C.n) != 1:
        raise NonCoprime(f"gcd({a}, {C.n}) != 1")
    return cyclic_code(C.T.scale(pow(a, -1, C.n)), C.ctx, f"mu{a}({C.label})")


def is_odd_like(C: CyclicCode) -> bool:
    """g(1) != 0, i.e. not every codeword has coordinate sum zero."""
    return 0 not in C.T


def is_duadic_pair(C1: CyclicCode, C2: CyclicCode, b: int) -> bool:
    """Odd-like duadic test: T1, T2 partition {1..n-1} and mu_b swaps them."""
    if (C1.q, C1.n) != (C2.q, C2.n):
        raise ValueError("codes differ in q or n")
    n = C1.n
    if gcd(b, n) != 1:
        return False
    T1, T2 = C1.T, C2.T
    if 0 in T1 or 0 in T2:
        return False
    if set(T1.members) & set(T2.members) or len(T1) + len(T2) != n - 1:
        return False
    return T1.scale(b) == T2 and T2.scale(b) == T1


def is_even_like_duadic_pair(C1: CyclicCode, C2: CyclicCode, b: int) -> bool:
    """Both defining sets contain 0 and drop to an odd-like duadic pair without it."""
    if 0 not in C1.T or 0 not in C2.T:
        return False
    strip = lambda C: DefiningSet(C.n, C.q, C.T.members[1:])  # noqa: E731
    T1, T2 = strip(C1), strip(C2)
    if set(T1.members) & set(T2.members) or len(T1) + len(T2) != C1.n - 1:
        return False
    return gcd(b, C1.n) == 1 and T1.scale(b) == T2 and T2.scale(b) == T1


def hull_defining_set(C: CyclicCode) -> DefiningSet:
    return C.T.union(dual_defining_set(C.T).members)


def is_lcd(C: CyclicCode) -> bool:
    return len(hull_defining_set(C)) == C.n


def hull_dimension(C: CyclicCode | LinearCode) -> int:
    """dim(C cap C^perp) by stacking G with a parity-check matrix."""
    L = C.linear if isinstance(C, CyclicCode) else C
    H = nullspace(L.G, L.q, L.n)
    return L.k + H.shape[0] - rank(np.vstack([L.G, H]), L.q)


def intersection_generator(C1: CyclicCode, C2: CyclicCode) -> Poly:
    from .poly import poly_lcm

    return poly_lcm(C1.g, C2.g)


# --------------------------------------------------------------------------
# extension, encoding, iteration
# --------------------------------------------------------------------------

def extend(C: CyclicCode | LinearCode) -> LinearCode:
    """Append an overall parity symbol (the coordinate sum, characteristic 2)."""
    L = C.linear if isinstance(C, CyclicCode) else C
    parity = np.bitwise_xor.reduce(L.G, axis=1) if L.k else np.zeros(0, dtype=np.uint8)
    name = getattr(C, "label", "") or getattr(C, "name", "")
    return LinearCode(L.q, L.n + 1, np.hstack([L.G, parity[:, None]]), f"ext({name})")


def generator_matrix(C: CyclicCode) -> LinearCode:
    return C.linear


def encode(C: CyclicCode | LinearCode, message: Sequence[int]) -> np.ndarray:
    L = C.linear if isinstance(C, CyclicCode) else C
    msg = np.asarray(message, dtype=np.uint8)
    if msg.shape != (L.k,):
        raise ValueError(f"message must have length {L.k}")
    return gf_matmul(msg[None, :], L.G, L.q)[0]


def encode_poly(C: CyclicCode, message: Sequence[int]) -> np.ndarray:
    """Non-systematic encoding m(x) g(x); a bijection onto C like :func:`encode`."""
    c = mul_coeffs(np.asarray(message, dtype=np.uint8), C.g.coeffs, C.q)
    out = np.zeros(C.n, dtype=np.uint8)
    out[: len(c)] = c
    return out


def message_digits(index: np.ndarray, k: int, q: int) -> np.ndarray:
    """Base-q digits (least significant first) of each message index."""
    shifts = np.arange(k, dtype=np.uint64) * np.uint64(q.bit_length() - 1)
    return ((index.astype(np.uint64)[:, None] >> shifts) & np.uint64(q - 1)).astype(np.uint8)


def iterate_codewords(
    C: CyclicCode | LinearCode,
    start: int = 0,
    stop: int | None = None,
    budget: int = DEFAULT_BUDGET,
    block: int = 4096,
) -> Iterator[np.ndarray]:
    """Yield codewords for message indices in [start, stop).

    Index j encodes the message whose base-q digits are those of j, so
    disjoint index ranges give disjoint codeword sets.
    """
    L = C.linear if isinstance(C, CyclicCode) else C
    total = L.q**L.k
    stop = total if stop is None else min(stop, total)
    if stop - start > budget:
        raise BudgetExceeded(f"{stop - start} codewords exceed budget {budget}")
    for lo in range(start, stop, block):
        idx = np.arange(lo, min(lo + block, stop), dtype=np.uint64)
        words = gf_matmul(message_digits(idx, L.k, L.q), L.G, L.q) if L.k else np.zeros((len(idx), L.n), np.uint8)
        yield from words


# --------------------------------------------------------------------------
# descriptors
# --------------------------------------------------------------------------

def descriptor(C: CyclicCode | LinearCode, i: int | None = None) -> dict:
    """JSON-ready description; defining set run-length encoded."""
    if isinstance(C, CyclicCode):
        return {
            "q": C.q,
            "m": C.ctx.m,
            "n": C.n,
            "i": i,
            "k": C.k,
            "defining_set": C.T.rle(),
            "generator": C.g.to_text(),
            "modulus": format_modulus(C.ctx.modulus),
            "label": C.label,
        }
    return {
        "q": C.q,
        "m": None,
        "n": C.n,
        "i": i,
        "k": C.k,
        "defining_set": None,
        "generator_matrix": [Poly(4, row).to_text() if C.q == 4 else "".join(map(str, row)) for row in C.G],
        "label": C.name,
    }


def code_from_descriptor(d: dict, ctx: FieldContext | None = None) -> CyclicCode:
    if d.get("defining_set") is None:
        raise ValueError("descriptor has no defining set; only cyclic codes can be rebuilt")
    m, n, q = int(d["m"]), int(d["n"]), int(d["q"])
    if n != modulus_for(m):
        raise ValueError(f"n={n} does not match m={m}")
    ctx = ctx or build_context(m, d.get("modulus"))
    T = DefiningSet.from_rle(n, q, d["defining_set"])
    C = cyclic_code(T, ctx, d.get("label", ""))
    if "generator" in d and ctx.modulus == build_context(m, d.get("modulus")).modulus:
        if C.g.to_text() != d["generator"]:
            raise ValueError("generator in descriptor does not match its defining set")
    return C


def word_sum(words: np.ndarray) -> np.ndarray:
    """Coordinate sum over GF(4)/GF(2) of each row."""
    return np.bitwise_xor.reduce(np.atleast_2d(words), axis=1)


def scalar_multiple(c: int, word: np.ndarray) -> np.ndarray:
    return GF4_MUL[c][word]
