"""Matrix helpers over GF(2) and GF(4) on uint8 symbol arrays."""

from __future__ import annotations

import numpy as np

from .galois import GF4_INV, GF4_MUL


def gf_matmul(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    """A @ B over GF(q), via float BLAS on bit planes (exact for inner dim < 2**52)."""
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    if q == 2:
        return (np.rint(A.astype(np.float64) @ B.astype(np.float64)).astype(np.int64) & 1).astype(np.uint8)
    a0, a1 = (A & 1).astype(np.float64), (A >> 1).astype(np.float64)
    b0, b1 = (B & 1).astype(np.float64), (B >> 1).astype(np.float64)

    def mm(x, y):
        return np.rint(x @ y).astype(np.int64) & 1

    p11 = mm(a1, b1)
    c0 = mm(a0, b0) ^ p11
    c1 = mm(a0, b1) ^ mm(a1, b0) ^ p11
    return (c0 | (c1 << 1)).astype(np.uint8)


def scale_rows(c: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Multiply row i of M by the scalar c[i]."""
    return GF4_MUL[np.asarray(c, dtype=np.uint8)[:, None], M]


def rref(M: np.ndarray, q: int = 4) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form with zero rows dropped, and pivot columns."""
    A = np.array(M, dtype=np.uint8, copy=True)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = A.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        p = r + nz[0]
        if p != r:
            A[[r, p]] = A[[p, r]]
        if A[r, c] != 1:
            A[r] = GF4_MUL[GF4_INV[A[r, c]]][A[r]]
        f = A[:, c].copy()
        f[r] = 0
        idx = np.flatnonzero(f)
        if len(idx):
            A[idx] ^= GF4_MUL[f[idx][:, None], A[r][None, :]]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: np.ndarray, q: int = 4) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, q)[1])


def nullspace(M: np.ndarray, q: int = 4, ncols: int | None = None) -> np.ndarray:
    """Basis (as rows) of {x : M x^T = 0}."""
    M = np.asarray(M, dtype=np.uint8)
    n = M.shape[1] if M.ndim == 2 and M.shape[0] else ncols
    if n is None:
        raise ValueError("need ncols for an empty matrix")
    if M.size == 0:
        return np.eye(n, dtype=np.uint8)
    R, piv = rref(M, q)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.uint8)
    for j, f in enumerate(free):
        out[j, f] = 1
        # characteristic 2: -R[i, f] == R[i, f]
        out[j, piv] = R[:, f]
    return out
