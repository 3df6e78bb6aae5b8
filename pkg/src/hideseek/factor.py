"""Factor N by matching nearby points of two modular-hyperbola solution sets.

Write N = U*V with U = u1*a + u0, V = v1*a + v0.  Reducing N mod a and
mod a-1 plants the pairs (u0, v0) and (u0+u1, v0+v1) (reduced) among the
phi(a) resp. phi(a-1) hyperbola solutions.  When a is chosen so that u1
and v1 are smaller than the grid cell, the two planted points land in the
same or neighboring cells, so scanning neighbor-cell point pairs and
checking each reconstruction (u1*a + u0)*(v1*a + v0) == N recovers the
split in O(a^(1+eps)) work.

Two variants: the balanced factorer assumes U < V < 2U and uses square
cells of side ceil(sqrt(a)) with a = ceil_cbrt(2N); the general variant
uses w-by-h rectangles, doubling w until the planted pair fits.  Strip
mode enumerates one vertical strip of cells at a time, holding only a
few strips of the shifted set in memory, and returns the same answer as
the full scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

import numpy as np

from . import _kernels
from .arith import ceil_cbrt, euler_phi
from .solutions import HyperbolaPoint, _strip_arrays

__all__ = [
    "Factorization",
    "Prime",
    "Unit",
    "CandidateFrame",
    "FactorStats",
    "InvariantError",
    "N_MIN",
    "check_candidate",
    "hide_seek_balanced",
    "hide_seek_general",
    "trial_division",
    "factor",
    "is_probable_prime",
]

# Below this, plain trial division is used outright; sidesteps degenerate
# small-a geometry without complicating the main path.
N_MIN = 10**6

_KERNEL_LIMIT = 1 << 63


class InvariantError(RuntimeError):
    """An internal soundness or completeness guarantee was violated."""


@dataclass(frozen=True)
class Factorization:
    """A verified nontrivial split n = u * v with 1 < u <= v < n."""

    n: int
    u: int
    v: int

    def __post_init__(self):
        if self.u * self.v != self.n or not 1 < self.u <= self.v < self.n:
            raise InvariantError(f"bad split {self.n} = {self.u} * {self.v}")


@dataclass(frozen=True)
class Prime:
    n: int


@dataclass(frozen=True)
class Unit:
    n: int = 1


@dataclass(frozen=True)
class CandidateFrame:
    """A point pair: p solves x*y == N (mod a), p_prime mod a-1."""

    a: int
    p: HyperbolaPoint
    p_prime: HyperbolaPoint
    col_wrap: bool = False
    row_wrap: bool = False


@dataclass
class FactorStats:
    """Work counters filled in by the hide-seek operations."""

    method: str = ""
    a: int = 0
    w: int = 0
    h: int = 0
    points: int = 0
    pairs: int = 0


def check_candidate(N: int, a: int, frame: CandidateFrame
                    ) -> Factorization | None:
    """Try to reconstruct N = (u1*a + u0)(v1*a + v0) from a point pair.

    u0, v0 come from the mod-a point; the digit candidates are the raw
    coordinate differences and the differences plus a-1 (undoing a wrap of
    the reduced coordinate), kept when they land in [0, a).  All
    arithmetic is exact.
    """
    m2 = a - 1
    u0, v0 = frame.p
    du = frame.p_prime.x - u0
    dv = frame.p_prime.y - v0
    best: tuple[int, int] | None = None
    for u1 in (du, du + m2):
        if not 0 <= u1 < a:
            continue
        u = u1 * a + u0
        if u < 2:
            continue
        for v1 in (dv, dv + m2):
            if not 0 <= v1 < a:
                continue
            v = v1 * a + v0
            if v < 2:
                continue
            if u * v == N:
                lo, hi = (u, v) if u <= v else (v, u)
                if best is None or (lo, hi) < best:
                    best = (lo, hi)
    if best is None:
        return None
    return Factorization(N, best[0], best[1])


def _gcd_shortcut(N: int, a: int) -> Factorization | None:
    """Split off gcd(a, N) or gcd(a-1, N) when nontrivial."""
    cands = []
    for m in (a, a - 1):
        g = gcd(m, N)
        if 1 < g < N:
            cands.append((min(g, N // g), max(g, N // g)))
    if not cands:
        return None
    u, v = min(cands)
    return Factorization(N, u, v)


def _ceil_sqrt(a: int) -> int:
    return isqrt(a - 1) + 1 if a > 1 else 1


def _check_range(N: int) -> None:
    if N >= _KERNEL_LIMIT:
        raise ValueError("hide-seek kernels require N < 2**63")


def hide_seek_balanced(N: int, strip_mode: bool = False,
                       stats: FactorStats | None = None
                       ) -> Factorization | None:
    """Factor N assuming some split U < V < 2U exists.

    Sets a = ceil_cbrt(2N) so that u1, v1 < sqrt(a), buckets both
    solution sets into cells of side ceil(sqrt(a)), and checks all
    neighbor pairs (radius 1).  Returns None when no pair verifies,
    e.g. when the premise fails.
    """
    if N < 2:
        return None
    _check_range(N)
    a = ceil_cbrt(2 * N)
    if a < 3:
        return None
    b = _ceil_sqrt(a)
    if stats is not None:
        stats.method = "balanced-strip" if strip_mode else "balanced"
        stats.a, stats.w, stats.h = a, b, b
    short = _gcd_shortcut(N, a)
    if short is not None:
        return short
    if strip_mode:
        return _strip_scan(N, a, b, b, 1, stats)
    u, v, pts, pairs = _kernels.hyperbola_scan(N, a, a - 1, b, b, 1, 1)
    if stats is not None:
        stats.points, stats.pairs = pts, pairs
    return Factorization(N, u, v) if u else None


def hide_seek_general(N: int, strip_mode: bool = False,
                      stats: FactorStats | None = None
                      ) -> Factorization | None:
    """Factor N = U*V without the balance restriction.

    With a = ceil_cbrt(N), tries rectangle widths w = 2, 4, 8, ... <= a
    and heights h = max(1, a // w); once w exceeds u1 the planted pair is
    at most one cell apart horizontally and two vertically, hence the
    (1, 2) scan radii.  Returns None only after the final width.
    """
    if N < 2:
        return None
    _check_range(N)
    a = ceil_cbrt(N)
    if a < 3:
        return None
    if stats is not None:
        stats.method = "general-strip" if strip_mode else "general"
        stats.a = a
    short = _gcd_shortcut(N, a)
    if short is not None:
        return short
    w = 2
    while w <= a:
        h = max(1, a // w)
        if stats is not None:
            stats.w, stats.h = w, h
        if strip_mode:
            got = _strip_scan(N, a, w, h, 2, stats)
        else:
            u, v, pts, pairs = _kernels.hyperbola_scan(N, a, a - 1, w, h, 1, 2)
            if stats is not None:
                stats.points = pts
                stats.pairs += pairs
            got = Factorization(N, u, v) if u else None
        if got is not None:
            return got
        w *= 2
    return None


def _strip_scan(N: int, a: int, cell_w: int, cell_h: int, dyc: int,
                stats: FactorStats | None) -> Factorization | None:
    """One vertical strip of cells at a time.

    Strip s is paired against the gap-rule neighbor strips of the shifted
    set (s-1, s, s+1, plus one extra across the wrap seam when the last
    strip is truncated thin); a small cache keeps at most four shifted
    strips alive, so memory stays proportional to the strip width.
    """
    m2 = a - 1
    cols = -(-a // cell_w)
    rows = -(-a // cell_h)
    col_nbrs, _ = _kernels.axis_neighbor_table(cols, cell_w, a, 1)
    cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def shifted_strip(c: int) -> tuple[np.ndarray, np.ndarray]:
        got = cache.get(c)
        if got is None:
            x0 = c * cell_w
            if x0 >= m2:
                e = np.empty(0, dtype=np.int64)
                got = (e, e)
            else:
                got = _strip_arrays(N, m2, x0, cell_w)
            if len(cache) >= 4:
                cache.pop(next(iter(cache)))
            cache[c] = got
        return got

    def column_csr(pts, col_index, k):
        xs, ys = pts
        cid = (ys // cell_h) * k + col_index
        order = np.argsort(cid, kind="stable")
        starts = np.zeros(k * rows + 1, dtype=np.int64)
        np.cumsum(np.bincount(cid, minlength=k * rows), out=starts[1:])
        return xs[order], ys[order], starts

    best: tuple[int, int] | None = None
    total_pairs = 0
    for s in range(cols):
        bxs, bys = _strip_arrays(N, a, s * cell_w, cell_w)
        if bxs.size == 0:
            continue
        ids = [int(c) for c in col_nbrs[s] if c >= 0]
        k = len(ids)
        pos = ids.index(s)
        bx, by, bstarts = column_csr((bxs, bys), pos, k)
        sxs_l, sys_l, scid_l = [], [], []
        for t, c in enumerate(ids):
            sxs_c, sys_c = shifted_strip(c)
            sxs_l.append(sxs_c)
            sys_l.append(sys_c)
            scid_l.append((sys_c // cell_h) * k + t)
        sxs = np.concatenate(sxs_l)
        sys = np.concatenate(sys_l)
        scid = np.concatenate(scid_l).astype(np.int64)
        sorder = np.argsort(scid, kind="stable")
        sstarts = np.zeros(k * rows + 1, dtype=np.int64)
        np.cumsum(np.bincount(scid, minlength=k * rows), out=sstarts[1:])
        # dxc=k makes the kernel take every subgrid column once; the real
        # horizontal neighbor filtering already happened in `ids`.
        u, v, pairs = _kernels.pair_scan_csr(
            bx, by, bstarts, sxs[sorder], sys[sorder], sstarts,
            k, rows, cell_w, cell_h, a, k, dyc, N, m2)
        total_pairs += pairs
        if u and (best is None or (u, v) < best):
            best = (u, v)
    if stats is not None:
        stats.points = euler_phi(a) + euler_phi(m2)
        stats.pairs += total_pairs
    if best is None:
        return None
    return Factorization(N, best[0], best[1])


def trial_division(N: int, bound: int) -> Factorization | None:
    """Split off the smallest prime divisor <= bound, scanning 2, 3, 6k+-1."""
    if N < 2:
        raise ValueError("N must be >= 2")
    lim = min(bound, isqrt(N))
    for d in (2, 3):
        if d > lim:
            return None
        if N % d == 0:
            return Factorization(N, d, N // d)
    d = 5
    step = 2
    while d <= lim:
        if N % d == 0:
            return Factorization(N, d, N // d)
        d += step
        step = 6 - step
    return None


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases; deterministic for
    every n < 3.3e24, far beyond the supported input range."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor(N: int, strip_mode: bool = False,
           stats: FactorStats | None = None
           ) -> Factorization | Prime | Unit:
    """Full driver: Unit / Prime verdict, or a verified nontrivial split.

    Composites are split by trial division up to ceil_cbrt(N) followed by
    the general hide-seek variant; below N_MIN trial division alone is
    used.  Every returned split satisfies u * v == N by construction.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if N == 1:
        return Unit()
    if is_probable_prime(N):
        return Prime(N)
    if stats is not None:
        stats.method = "trial"
    if N < N_MIN:
        got = trial_division(N, isqrt(N))
        if got is None:
            raise InvariantError(f"composite {N} resisted trial division")
        return got
    got = trial_division(N, ceil_cbrt(N))
    if got is not None:
        return got
    got = hide_seek_general(N, strip_mode=strip_mode, stats=stats)
    if got is None:
        raise InvariantError(
            f"completeness violated: no split found for composite {N}")
    return got
