"""Binary codes attached to a quaternary code, Lee weights, and Type II checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .codes import DEFAULT_BUDGET, CyclicCode, LinearCode, cyclic_code, dual
from .distance import DEFAULT_SEED, enumerate_weights
from .galois import GF4_MUL, FieldContext
from .linalg import gf_matmul, nullspace


@dataclass(frozen=True)
class LeeComposition:
    n0: int  # zeros
    n1: int  # w or W
    n2: int  # ones

    @property
    def weight(self) -> int:
        return self.n1 + 2 * self.n2


def lee_composition(x: Sequence[int]) -> LeeComposition:
    x = np.asarray(x, dtype=np.uint8)
    n0 = int((x == 0).sum())
    n2 = int((x == 1).sum())
    return LeeComposition(n0, len(x) - n0 - n2, n2)


def lee_weight(x: Sequence[int]) -> int:
    return lee_composition(x).weight


def lee_weights(words: np.ndarray) -> np.ndarray:
    """Row-wise Lee weights of a symbol matrix."""
    words = np.atleast_2d(words)
    return (words >= 2).sum(axis=1) + 2 * (words == 1).sum(axis=1)


def gray_map(x: Sequence[int] | np.ndarray) -> np.ndarray:
    """phi(w*a + W*b) = (a | b), applied row-wise to the last axis.

    0 -> (0,0), w -> (1,0), W -> (0,1), 1 -> (1,1).
    """
    x = np.asarray(x, dtype=np.uint8)
    b = x & 1
    a = (x >> 1) ^ b
    return np.concatenate([a, b], axis=-1)


def gray_image(C: CyclicCode | LinearCode) -> LinearCode:
    """The binary [2n, 2k] code phi(C) (phi is GF(2)-linear)."""
    rows = C.shift_rows if isinstance(C, CyclicCode) else C.G
    span = np.vstack([rows, GF4_MUL[2][rows]])
    name = getattr(C, "label", "") or getattr(C, "name", "")
    return LinearCode(2, 2 * C.n, gray_map(span), f"gray({name})")


# --------------------------------------------------------------------------
# subfield subcodes and trace codes
# --------------------------------------------------------------------------

def subfield_subcode(C: CyclicCode, ctx: FieldContext | None = None) -> CyclicCode:
    """C restricted to binary words: the binary cyclic code with the 2-closure of T."""
    ctx = ctx or C.ctx
    return cyclic_code(C.T.closure(2), ctx, f"sub({C.label})")


def subfield_subcode_kernel(C: CyclicCode | LinearCode) -> LinearCode:
    """Same code computed as the binary kernel of the parity-check bit planes.

    For H = H0 + w*H1 and binary x, H x = 0 iff H0 x = 0 and H1 x = 0.
    """
    L = C.linear if isinstance(C, CyclicCode) else C
    H = nullspace(L.G, L.q, L.n)
    if L.q == 2:
        return LinearCode(2, L.n, nullspace(H, 2, L.n))
    stacked = np.vstack([H & 1, H >> 1])
    return LinearCode(2, L.n, nullspace(stacked, 2, L.n), f"sub({getattr(C, 'label', '')})")


def trace_code(C: CyclicCode | LinearCode) -> LinearCode:
    """Binary span of Tr(beta * row) over generator rows and beta in {1, w}.

    Tr(x0 + x1 w) = x1 and Tr(w (x0 + x1 w)) = x0 + x1, so the span equals
    the span of both bit planes.
    """
    rows = C.shift_rows if isinstance(C, CyclicCode) else C.G
    name = getattr(C, "label", "") or getattr(C, "name", "")
    tr1 = rows >> 1
    trw = (rows >> 1) ^ (rows & 1)
    return LinearCode(2, C.n, np.vstack([tr1, trw]), f"tr({name})")


def delsarte_side(C: CyclicCode) -> LinearCode:
    """dual(subfield_subcode(dual(C))), which must equal trace_code(C)."""
    S = subfield_subcode(dual(C))
    return S.linear.dual()


# --------------------------------------------------------------------------
# self-duality and Type II
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeVerdict:
    self_orthogonal: bool
    self_dual: bool
    type_ii: str  # proven | refuted | sampled_consistent
    checked: int  # codewords whose Lee weight was examined
    violations: int
    method: str  # exhaustive | sampled

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def is_self_orthogonal(L: LinearCode) -> bool:
    """Euclidean: G G^T = 0."""
    return not gf_matmul(L.G, L.G.T, L.q).any()


def classify_type(
    L: LinearCode,
    budget: int = DEFAULT_BUDGET,
    samples: int = 10_000,
    seed: int = DEFAULT_SEED,
) -> TypeVerdict:
    so = is_self_orthogonal(L)
    sd = so and 2 * L.k == L.n
    if L.q**L.k <= budget:
        hist = enumerate_weights(L, budget, metric="lee")
        bad = sum(c for w, c in enumerate(hist) if w % 4)
        return TypeVerdict(so, sd, "refuted" if bad else "proven", L.q**L.k, bad, "exhaustive")
    rng = np.random.default_rng(seed)
    bad = 0
    done = 0
    while done < samples:
        cnt = min(2000, samples - done)
        msg = rng.integers(0, L.q, size=(cnt, L.k), dtype=np.uint8)
        bad += int((lee_weights(gf_matmul(msg, L.G, L.q)) % 4 != 0).sum())
        done += cnt
    return TypeVerdict(so, sd, "refuted" if bad else "sampled_consistent", samples, bad, "sampled")


def gray_image_self_orthogonal(L: LinearCode) -> bool:
    return is_self_orthogonal(gray_image(L))
