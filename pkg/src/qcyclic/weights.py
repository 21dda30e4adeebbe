"""Digit weights, cyclotomic cosets and the defining sets T(i, m).

Also holds the big-integer verifiers for the containment lemmas that feed
the BCH-with-multiplier distance bounds. None of the verifiers build a
code; they work on residues mod n = 4^m - 1 directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import HypothesisViolated, InapplicableM, NonCoprime, UnsupportedSize

MAX_SET_M = 10
EXHAUSTIVE_MULTIPLIER_MAX_N = 4095

_M01 = 0x5555555555555555
_M10 = 0xAAAAAAAAAAAAAAAA


def w2(i: int) -> int:
    return int(i).bit_count()


def w4(i: int) -> int:
    """Sum of base-4 digits.

    Each digit is 2*hi + lo over a pair of bits, so the sum is
    popcount(lo bits) + 2*popcount(hi bits).
    """
    i = int(i)
    if i < 0:
        raise ValueError("w4 of a negative integer")
    nbits = i.bit_length() + 1
    lo_mask = int("01" * ((nbits + 1) // 2), 2)
    return (i & lo_mask).bit_count() + 2 * (i & (lo_mask << 1)).bit_count()


def w4_array(a: np.ndarray) -> np.ndarray:
    """Vectorised :func:`w4` for nonnegative integers below 2**64."""
    u = np.asarray(a).astype(np.uint64)
    lo = np.bitwise_count(u & np.uint64(_M01)).astype(np.int64)
    hi = np.bitwise_count(u & np.uint64(_M10)).astype(np.int64)
    return lo + 2 * hi


def w2_array(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(np.asarray(a).astype(np.uint64)).astype(np.int64)


def weight_fn(base: int) -> Callable[[int], int]:
    if base == 4:
        return w4
    if base == 2:
        return w2
    raise ValueError(f"base must be 2 or 4, got {base}")


def modulus_for(m: int) -> int:
    return 4**m - 1


def m_from_n(n: int) -> int | None:
    """Inverse of ``modulus_for``; None if n + 1 is not a power of 4."""
    m, x = 0, n + 1
    while x > 1 and x % 4 == 0:
        x //= 4
        m += 1
    return m if x == 1 and m > 0 else None


# --------------------------------------------------------------------------
# cyclotomic cosets and defining sets
# --------------------------------------------------------------------------

def cyclotomic_coset(i: int, q: int, n: int) -> frozenset[int]:
    if gcd(q, n) != 1:
        raise NonCoprime(f"gcd({q}, {n}) != 1")
    i %= n
    out = {i}
    j = (i * q) % n
    while j != i:
        out.add(j)
        j = (j * q) % n
    return frozenset(out)


def cyclotomic_cosets(q: int, n: int) -> list[frozenset[int]]:
    """All q-cyclotomic cosets mod n, ordered by least element."""
    seen = np.zeros(n, dtype=bool)
    out = []
    for i in range(n):
        if not seen[i]:
            c = cyclotomic_coset(i, q, n)
            seen[list(c)] = True
            out.append(c)
    return out


@dataclass(frozen=True)
class DefiningSet:
    """A set of residues mod n, meant to be a union of q-cyclotomic cosets.

    Construction does not enforce closure (callers that need it check
    :attr:`is_closed`); members are normalised to a sorted tuple.
    """

    n: int
    q: int
    members: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        ms = tuple(sorted({int(t) for t in self.members}))
        if ms and (ms[0] < 0 or ms[-1] >= self.n):
            raise ValueError(f"defining-set members must lie in [0, {self.n})")
        object.__setattr__(self, "members", ms)

    @classmethod
    def from_mask(cls, mask: np.ndarray, q: int) -> DefiningSet:
        return cls(len(mask), q, tuple(np.flatnonzero(mask).tolist()))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, t: object) -> bool:
        return isinstance(t, (int, np.integer)) and 0 <= t < self.n and bool(self.mask[int(t)])

    @cached_property
    def mask(self) -> np.ndarray:
        out = np.zeros(self.n, dtype=bool)
        out[list(self.members)] = True
        out.setflags(write=False)
        return out

    def closed_under(self, factor: int) -> bool:
        idx = np.array(self.members, dtype=np.int64)
        return bool(self.mask[(idx * factor) % self.n].all()) if len(idx) else True

    @property
    def is_closed(self) -> bool:
        return self.closed_under(self.q)

    def scale(self, a: int) -> DefiningSet:
        """The set {a*t mod n}."""
        idx = np.array(self.members, dtype=np.int64)
        return DefiningSet(self.n, self.q, tuple(((idx * (a % self.n)) % self.n).tolist()))

    def negate(self) -> DefiningSet:
        return self.scale(-1)

    def complement(self) -> DefiningSet:
        return DefiningSet.from_mask(~self.mask, self.q)

    def union(self, other: Iterable[int]) -> DefiningSet:
        return DefiningSet(self.n, self.q, self.members + tuple(other))

    def closure(self, q: int) -> DefiningSet:
        """Smallest q-closed superset (used for subfield subcodes)."""
        mask = self.mask.copy()
        frontier = np.array(self.members, dtype=np.int64)
        while len(frontier):
            nxt = (frontier * q) % self.n
            nxt = nxt[~mask[nxt]]
            mask[nxt] = True
            frontier = np.unique(nxt)
        return DefiningSet.from_mask(mask, q)

    def rle(self) -> list[list[int]]:
        """Run-length encoding as ``[[start, length], ...]``."""
        runs: list[list[int]] = []
        for t in self.members:
            if runs and runs[-1][0] + runs[-1][1] == t:
                runs[-1][1] += 1
            else:
                runs.append([t, 1])
        return runs

    @classmethod
    def from_rle(cls, n: int, q: int, runs: Sequence[Sequence[int]]) -> DefiningSet:
        return cls(n, q, tuple(s + j for s, length in runs for j in range(length)))


def defining_set(i: int, m: int, base: int = 4) -> DefiningSet:
    """T(i, m) for base 4, or its binary-weight analogue for base 2.

    Members are 1 <= t <= n-1 whose base-``base`` digit sum has parity i.
    The base-2 sets are 2-closed, the base-4 sets 4-closed.
    """
    if i not in (0, 1):
        raise ValueError("i must be 0 or 1")
    if not 1 <= m <= MAX_SET_M:
        raise UnsupportedSize(f"m={m} too large to materialise a defining set")
    n = modulus_for(m)
    t = np.arange(1, n, dtype=np.int64)
    wt = w4_array(t) if base == 4 else w2_array(t) if base == 2 else None
    if wt is None:
        raise ValueError(f"base must be 2 or 4, got {base}")
    return DefiningSet(n, base, tuple(t[(wt & 1) == i].tolist()))


def in_defining_set(t: int, i: int, m: int, base: int = 4, with_zero: bool = False) -> bool:
    """Membership in T(i, m) (optionally T(i, m) + {0}) without building it."""
    n = modulus_for(m)
    t %= n
    if t == 0:
        return with_zero
    return weight_fn(base)(t) % 2 == i


def defining_set_size(i: int, m: int) -> int:
    """|T(i, m)| from the closed-form counts (m odd / m even)."""
    if m % 2 == 1:
        return 2 ** (2 * m - 1) - 1
    return 2 ** (2 * m - 1) - 2 if i == 0 else 2 ** (2 * m - 1)


# --------------------------------------------------------------------------
# lemma verifiers
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class GcdCheck:
    a: int
    m: int
    l: int
    predicted: int
    actual: int

    @property
    def match(self) -> bool:
        return self.predicted == self.actual


def verify_gcd_lemma(a: int, m: int, l: int) -> GcdCheck:
    """Compare gcd(a^m + 1, a^l - 1) to the predicted 1 (a even) or 2 (a odd)."""
    if a < 2 or m < 1 or l < 1:
        raise ValueError("need a >= 2, m >= 1, l >= 1")
    if (l // gcd(m, l)) % 2 == 0:
        raise HypothesisViolated(f"l/gcd(m,l) = {l // gcd(m, l)} is even")
    x, y = a**m + 1, a**l - 1
    while y:
        x, y = y, x % y
    return GcdCheck(a, m, l, 1 if a % 2 == 0 else 2, x)


def lemma_multiplier(m: int) -> tuple[int, int]:
    """(v, a_max) with {a*v : 1 <= a <= a_max} inside T(0, m).

    One case per residue class of m; anything else is InapplicableM.
    """
    if m % 4 == 1 and m >= 5:
        return 4 ** ((m - 1) // 2) + 1, 4 ** ((m - 1) // 2)
    if m % 4 == 3 and m >= 7:
        return 4 ** ((m + 1) // 2) + 1, 4 ** ((m - 3) // 2)
    if m % 4 == 2 and m >= 8:
        return 4 ** ((m + 2) // 2) + 1, 4 ** ((m - 4) // 2)
    if m % 8 == 4 and m >= 12:
        return 4 ** ((m - 4) // 2) + 1, 4 ** ((m - 4) // 2)
    raise InapplicableM(f"no containment lemma covers m={m}")


@dataclass(frozen=True)
class ContainmentCheck:
    m: int
    v: int
    a_max: int
    coprime: bool
    witnesses: tuple[int, ...]  # values of a with a*v mod n outside T(0, m), first few only

    @property
    def contained(self) -> bool:
        return self.coprime and not self.witnesses


def verify_av_containment(m: int, chunk: int = 1 << 20, max_witnesses: int = 100) -> ContainmentCheck:
    v, a_max = lemma_multiplier(m)
    n = modulus_for(m)
    if n < 1 << 63:
        bad: list[int] = []
        for lo in range(1, a_max + 1, chunk):
            x = _progression(lo * v, v, n, min(chunk, a_max + 1 - lo))
            miss = np.flatnonzero((x == 0) | (w4_array(x) % 2 == 1))
            bad.extend((miss + lo).tolist()[: max_witnesses - len(bad)])
            if len(bad) >= max_witnesses:
                break
    else:
        bad = [a for a in range(1, a_max + 1) if not in_defining_set(a * v, 0, m)][:max_witnesses]
    return ContainmentCheck(m, v, a_max, gcd(v, n) == 1, tuple(bad))


def verify_w2_w4_coupling(a: int) -> bool:
    """True iff [w4(2a) = w4(a) mod 2] <=> [w2(a) even] holds for this a."""
    return ((w4(2 * a) - w4(a)) % 2 == 0) == (w2(a) % 2 == 0)


def sweep_w2_w4_coupling(max_a: int, chunk: int = 1 << 20) -> list[int]:
    """Every a in [1, max_a] violating the coupling (expected: none)."""
    bad: list[int] = []
    for lo in range(1, max_a + 1, chunk):
        a = np.arange(lo, min(lo + chunk, max_a + 1), dtype=np.int64)
        same = ((w4_array(2 * a) - w4_array(a)) & 1) == 0
        even = (w2_array(a) & 1) == 0
        bad.extend(a[same != even].tolist())
    return bad


@dataclass(frozen=True)
class PartialCheck:
    m: int
    v1: int
    v2: int
    a_max: int
    contained_T40: bool
    contained_T21: bool
    contained_2av_T41: bool
    witnesses: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.contained_T40 and self.contained_T21 and self.contained_2av_T41


def partial_multipliers(m: int) -> tuple[int, int, int]:
    """(v1, v2, a_max) for the m = 14 mod 16 construction."""
    if m % 16 != 14 or m < 30:
        raise InapplicableM(f"m={m} is not 14 mod 16 with m >= 30")
    return 2 ** ((m - 4) // 2) - 1, 4 ** ((m + 2) // 8) + 1, 2 ** ((m - 14) // 4)


def verify_partial_theorem(m: int) -> PartialCheck:
    v1, v2, a_max = partial_multipliers(m)
    n = modulus_for(m)
    t40 = t21 = t41 = True
    bad = []
    for a in range(1, a_max + 1):
        x = (a * v1 * v2) % n
        ok40 = x != 0 and w4(x) % 2 == 0
        ok21 = x != 0 and w2(x) % 2 == 1
        y = (2 * x) % n
        ok41 = y != 0 and w4(y) % 2 == 1
        t40 &= ok40
        t21 &= ok21
        t41 &= ok41
        if not (ok40 and ok21 and ok41):
            bad.append(a)
    coprime = gcd(v1, n) == 1 and gcd(v2, n) == 1
    return PartialCheck(m, v1, v2, a_max, t40 and coprime, t21 and coprime, t41 and coprime, tuple(bad))


# --------------------------------------------------------------------------
# consecutive runs and the BCH bound with multipliers
# --------------------------------------------------------------------------

def _circular_run(mask: np.ndarray) -> int:
    holes = np.flatnonzero(~mask)
    if len(holes) == 0:
        return len(mask)
    gaps = np.diff(holes) - 1
    wrap = len(mask) - 1 - holes[-1] + holes[0]
    return int(max(gaps.max(initial=0), wrap))


def longest_consecutive_run(T: DefiningSet) -> int:
    """Longest run of cyclically consecutive residues (mod n) inside T."""
    return _circular_run(T.mask)


@dataclass(frozen=True)
class MultiplierRun:
    v: int
    run: int

    @property
    def delta(self) -> int:
        return self.run + 1


def default_multiplier_candidates(n: int) -> list[int]:
    """All units mod n for small n; otherwise 1 and the lemma multipliers' inverses."""
    if n <= EXHAUSTIVE_MULTIPLIER_MAX_N:
        return [v for v in range(1, n) if gcd(v, n) == 1] or [1]
    out = [1]
    m = m_from_n(n)
    if m is not None:
        try:
            v, _ = lemma_multiplier(m)
            inv = pow(v, -1, n)
            out += [inv, n - inv]
        except InapplicableM:
            pass
    return out


def bch_multiplier_search(T: DefiningSet, candidates: Sequence[int] | None = None) -> MultiplierRun:
    """Best circular run of v*T over the candidate multipliers v.

    A run of length r in v*T means the code has r consecutive zeros with
    respect to the primitive root alpha^(1/v), hence d >= r + 1.
    """
    n = T.n
    if candidates is None:
        candidates = default_multiplier_candidates(n)
    best = MultiplierRun(1, 0)
    r = np.arange(n, dtype=np.int64)
    for v in candidates:
        v %= n
        if gcd(v, n) != 1:
            raise NonCoprime(f"multiplier {v} not coprime to {n}")
        # t in v*T  <=>  v^-1 * t in T
        scaled = T.mask[(r * pow(v, -1, n)) % n] if n > 1 else T.mask
        run = _circular_run(scaled)
        if run > best.run:
            best = MultiplierRun(v, run)
    return best


def _progression(x0: int, step: int, n: int, count: int) -> np.ndarray:
    """x0, x0 + step, ... (mod n) as uint64, built by doubling (needs n < 2**63)."""
    out = np.array([x0 % n], dtype=np.uint64)
    nn = np.uint64(n)
    while len(out) < count:
        shift = np.uint64(len(out) * step % n)
        nxt = out + shift
        nxt[nxt >= nn] -= nn
        out = np.concatenate([out, nxt])
    return out[:count]


def arithmetic_run(
    member: Callable,
    u: int,
    n: int,
    start: int = 1,
    limit: int = 1 << 20,
    vectorized: bool = False,
    block: int = 1 << 20,
) -> int:
    """Length of the run of consecutive a around ``start`` with u*a mod n a member.

    Works without materialising the set, so it applies to any m.  With
    ``vectorized`` the predicate receives uint64 arrays and the walk proceeds
    in blocks; that path needs n < 2**63.
    """
    if gcd(u, n) != 1:
        raise NonCoprime(f"multiplier {u} not coprime to {n}")
    cap = min(limit, n)
    run = 0
    if vectorized:
        if n >= 1 << 63:
            raise ValueError("vectorised runs need n < 2**63")
        for x0, step in ((u * start, u), (u * (start - 1), n - u % n)):
            while run < cap:
                count = min(block, cap - run)
                ok = np.asarray(member(_progression(x0, step, n, count)), dtype=bool)
                miss = np.flatnonzero(~ok)
                if miss.size:
                    run += int(miss[0])
                    break
                run += count
                x0 += count * step
            else:
                break
        return min(run, cap)
    a = start
    while run < cap and member((u * a) % n):
        run += 1
        a += 1
    a = start - 1
    while run < cap and member((u * a) % n):
        run += 1
        a -= 1
    return run
