"""Numerical checks of how hyperbola solutions distribute.

Three instruments:

* exact Kloosterman sums S(m, n, a) = sum over units x of
  e((m*x + n*xbar)/a), checked against the classical bound
  tau(a) * gcd(m, n, a)**0.5 * a**0.5;
* rectangle counts against their area-proportional expectation
  area(R)/a^2 * phi(a), scanned over random rectangles;
* second moments of per-cell counts, computed two independent ways:
  directly from the bucketed points, and spectrally as a double sum of
  |S(-m, -N k, a)|^2 against Fejer-type weights.  The two agree exactly
  (up to rounding) on the full-torus cell family, which is the strongest
  correctness check in the suite.

Kloosterman sums are evaluated by direct summation in double precision;
terms have unit modulus, so the accumulated error stays far below the
1e-6 tolerances used throughout.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import NamedTuple

import numpy as np

from . import _kernels
from .arith import euler_phi
from .rng import SplitMix64
from .solutions import Rect, count_in_rect

__all__ = [
    "KloostermanValue",
    "MomentDomain",
    "MomentReport",
    "DeviationReport",
    "kloosterman",
    "kloosterman_abs2_table",
    "expected_count",
    "coprime_adjust",
    "second_moment_direct",
    "second_moment_spectral",
    "deviation_scan",
]

# Full a x a tables and torus scans hold O(a^2) doubles; keep desk-scale.
_TABLE_LIMIT = 4096


@dataclass(frozen=True)
class KloostermanValue:
    m: int
    n: int
    modulus: int
    value: float
    imag_residual: float


def kloosterman(m: int, n: int, a: int) -> KloostermanValue:
    """S(m, n, a) by direct summation over the units mod a.

    The sum is real; the imaginary part is returned as a residual so
    tests can confirm it is numerically zero.
    """
    if a < 2:
        raise ValueError("modulus must be >= 2")
    units, invs = _kernels.unit_inverse_table(a)
    ph = ((m % a) * units + (n % a) * invs) % a
    ang = (2.0 * np.pi / a) * ph
    return KloostermanValue(m, n, a, float(np.cos(ang).sum()),
                            float(np.sin(ang).sum()))


def kloosterman_abs2_table(a: int) -> np.ndarray:
    """|S(m, n, a)|^2 for all 0 <= m, n < a, as one complex matrix product."""
    if a < 2:
        raise ValueError("modulus must be >= 2")
    if a > _TABLE_LIMIT:
        raise ValueError(f"table limited to a <= {_TABLE_LIMIT}")
    units, invs = _kernels.unit_inverse_table(a)
    idx = np.arange(a, dtype=np.int64)
    tw = np.exp((2j * np.pi / a) * np.arange(a))
    left = tw[np.outer(idx, units) % a]          # e(m*x/a)
    right = tw[np.outer(invs, idx) % a]          # e(xbar*n/a)
    s = left @ right
    return (s * s.conj()).real


def expected_count(r: Rect, a: int) -> float:
    """Fair share of solutions for a rectangle: area(R) * phi(a) / a^2."""
    if r.x2 > a or r.y2 > a:
        raise ValueError(f"rectangle exceeds the fundamental square: {r}")
    return r.area * euler_phi(a) / (a * a)


def coprime_adjust(start: int, a: int) -> int:
    """Smallest b >= start with gcd(b, a) == 1.

    Any a consecutive integers contain a unit mod a, so the scan
    terminates before 2a; assert it.
    """
    if a < 2 or not 1 <= start < a:
        raise ValueError("need a >= 2 and 1 <= start < a")
    b = start
    while gcd(b, a) != 1:
        b += 1
        if b >= 2 * a:
            raise AssertionError("no coprime found below 2a")
    return b


class MomentDomain(enum.Enum):
    FUNDAMENTAL_SQUARE = "fundamental-square"
    FULL_TORUS_Q2 = "full-torus-q2"


@dataclass(frozen=True)
class MomentReport:
    N: int
    a: int
    cell_w: int
    cell_h: int
    domain: MomentDomain
    sum_counts: int
    sum_squares: int
    expected_mean_cell: float
    k0_term: float
    edge_points: int = 0
    spectral_value: float | None = None


def _require_coprime(N: int, a: int) -> None:
    if gcd(N, a) != 1:
        raise ValueError(f"gcd(N, a) = {gcd(N, a)} > 1")


def _circular_window_sum(m: np.ndarray, k: int, axis: int) -> np.ndarray:
    """out[s] = sum of the k consecutive entries starting at s, wrapping."""
    if k == 1:
        return m
    n = m.shape[axis]
    head = m.take(range(k - 1), axis=axis)
    padded = np.concatenate([m, head], axis=axis)
    zshape = list(padded.shape)
    zshape[axis] = 1
    c = np.concatenate([np.zeros(zshape, dtype=np.int64),
                        np.cumsum(padded, axis=axis, dtype=np.int64)],
                       axis=axis)
    return (c.take(range(k, k + n), axis=axis)
            - c.take(range(0, n), axis=axis))


def second_moment_direct(N: int, a: int, cell_w: int, cell_h: int,
                         domain: MomentDomain = MomentDomain.FUNDAMENTAL_SQUARE
                         ) -> MomentReport:
    """Sum of squared per-cell counts, straight from the bucketed points.

    FUNDAMENTAL_SQUARE tiles [0, a)^2 with cell_w x cell_h cells
    (truncated at the right/top edges); points in truncated cells are
    itemized in edge_points.  FULL_TORUS_Q2 covers the cell_w*a by
    cell_h*a rectangle with a^2 cells over the periodically extended
    solution set; because gcd(cell_w, a) = gcd(cell_h, a) = 1 the cell
    anchors sweep every residue, so the counts are computed as wrapped
    sliding-window sums over the fundamental solutions and the big
    rectangle is never materialized.
    """
    _require_coprime(N, a)
    if not (1 <= cell_w <= a and 1 <= cell_h <= a):
        raise ValueError("cell dimensions out of range")
    phi = euler_phi(a)
    mean = phi * cell_w * cell_h / (a * a)
    k0 = (cell_w * cell_h * phi) ** 2 / (a * a)
    xs, ys = _kernels.hyperbola_points(N % a, a)

    if domain is MomentDomain.FUNDAMENTAL_SQUARE:
        cols = -(-a // cell_w)
        rows = -(-a // cell_h)
        cids = (ys // cell_h) * cols + xs // cell_w
        counts = np.bincount(cids, minlength=cols * rows)
        edge = 0
        if cols * cell_w > a:
            edge_mask = xs >= (cols - 1) * cell_w
        else:
            edge_mask = np.zeros(xs.size, dtype=bool)
        if rows * cell_h > a:
            edge_mask = edge_mask | (ys >= (rows - 1) * cell_h)
        edge = int(np.count_nonzero(edge_mask))
        return MomentReport(N, a, cell_w, cell_h, domain,
                            int(counts.sum()), int((counts ** 2).sum()),
                            mean, k0, edge)

    if a > _TABLE_LIMIT:
        raise ValueError(f"torus scan limited to a <= {_TABLE_LIMIT}")
    if gcd(cell_w, a) != 1 or gcd(cell_h, a) != 1:
        raise ValueError("torus domain requires gcd(w, a) = gcd(h, a) = 1")
    ind = np.zeros((a, a), dtype=np.int64)
    ind[xs, ys] = 1
    win = _circular_window_sum(ind, cell_w, axis=0)
    win = _circular_window_sum(win, cell_h, axis=1)
    return MomentReport(N, a, cell_w, cell_h, domain,
                        int(win.sum()), int((win.astype(np.int64) ** 2).sum()),
                        mean, k0, 0)


def _fejer_weights(span: int, a: int) -> np.ndarray:
    """|e(m*span/a) - 1|^2 / |e(m/a) - 1|^2 with the exact limit span^2
    at m == 0 (never formed by dividing near-zero quantities)."""
    m = np.arange(a)
    out = np.empty(a, dtype=np.float64)
    out[0] = float(span) ** 2
    num = np.sin(np.pi * m[1:] * span / a)
    den = np.sin(np.pi * m[1:] / a)
    out[1:] = (num / den) ** 2
    return out


def second_moment_spectral(N: int, a: int, cell_w: int, cell_h: int) -> float:
    """Second moment over the full-torus cell family, via Kloosterman sums:

        (1/a^2) * sum_{k, m} |S(-m, -N k, a)|^2 * F_w(m) * F_h(k)

    where F_span is the squared geometric-series ratio of _fejer_weights.
    Agrees with second_moment_direct on FULL_TORUS_Q2 exactly (an identity,
    not an estimate).
    """
    _require_coprime(N, a)
    if gcd(cell_w, a) != 1 or gcd(cell_h, a) != 1:
        raise ValueError("spectral form requires gcd(w, a) = gcd(h, a) = 1")
    table = kloosterman_abs2_table(a)  # |S(m, n, a)|^2 = |S(-m, -n, a)|^2
    fw = _fejer_weights(cell_w, a)
    fh = _fejer_weights(cell_h, a)
    perm = (N % a) * np.arange(a, dtype=np.int64) % a
    return float(fw @ table[:, perm] @ fh / (a * a))


class DeviationTrial(NamedTuple):
    rect: Rect
    count: int
    expected: float


@dataclass(frozen=True)
class DeviationReport:
    N: int
    a: int
    trials: int
    seed: int
    max_abs_dev: float
    mean_abs_dev: float
    records: list[DeviationTrial] | None = None


def deviation_scan(N: int, a: int, trials: int, seed: int,
                   keep_records: bool = False) -> DeviationReport:
    """Compare exact rectangle counts with expected_count over random
    rectangles; deterministic given the seed (SplitMix64 stream).

    Each rectangle is drawn as x1 = U(a), x2 = x1 + 1 + U(a - x1) and
    likewise for y, where U(n) is the generator's `below`.
    """
    _require_coprime(N, a)
    if trials < 1:
        raise ValueError("need at least one trial")
    rng = SplitMix64(seed)
    max_dev = 0.0
    total = 0.0
    records: list[DeviationTrial] | None = [] if keep_records else None
    for _ in range(trials):
        x1 = rng.below(a)
        x2 = x1 + 1 + rng.below(a - x1)
        y1 = rng.below(a)
        y2 = y1 + 1 + rng.below(a - y1)
        r = Rect(x1, x2, y1, y2)
        c = count_in_rect(N, a, r)
        e = expected_count(r, a)
        dev = abs(c - e)
        max_dev = max(max_dev, dev)
        total += dev
        if records is not None:
            records.append(DeviationTrial(r, c, e))
    return DeviationReport(N, a, trials, seed, max_dev, total / trials,
                           records)
