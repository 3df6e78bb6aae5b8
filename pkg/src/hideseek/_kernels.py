"""Hot numeric kernels: numba-compiled loops with a pure-numpy fallback.

Backend selection is controlled by the HIDESEEK_BACKEND environment
variable, read once at import:

    auto   (default)  use numba when importable, else numpy
    numba             require numba, fail loudly if missing
    numpy              force the vectorized numpy path

Every kernel exists in both flavours; the module-level names dispatch to
the active backend.  `benchmarks/compare_backends.py` times both against
each other.

All kernels work in int64.  Callers guarantee N < 2**63 and modulus
m < 2**31, so every intermediate product here fits in int64 (products of
two residues < m**2 < 2**62; candidate checks use division instead of
forming u*v).

Neighbor semantics: cells are cell_w wide except the last column, which
is truncated to a - (cols-1)*cell_w.  A candidate column is a neighbor
of ci at radius r when the wrapped gap between the two column intervals
admits points closer than r*cell_w.  Raw index distance <= r always
qualifies; index distance r+1 qualifies only across the wrap seam where
the thin truncated column eats less than a full cell of distance.
Without the gap rule, two points within cell_w of each other (wrapped)
can sit two index steps apart and the scan would miss them.
"""

from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("HIDESEEK_BACKEND", "auto").strip().lower()
if _FLAG not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"HIDESEEK_BACKEND must be auto|numba|numpy, got {_FLAG!r}")

if _FLAG in ("auto", "numba"):
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:
        if _FLAG == "numba":
            raise RuntimeError("HIDESEEK_BACKEND=numba but numba is not installed")
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

ACTIVE_BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _distinct_primes(m: int) -> np.ndarray:
    """Distinct prime divisors of m, for sieving out non-units."""
    ps = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            ps.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        ps.append(m)
    return np.asarray(ps, dtype=np.int64)


def axis_neighbor_table(ncells: int, cell: int, a: int, radius: int
                        ) -> tuple[np.ndarray, np.ndarray]:
    """Per-cell neighbor columns under the wrapped-gap rule.

    Returns (nbr, wrapped), both (ncells, 2*radius+3), -1 padded; nbr[ci]
    lists the neighbor cell indices of ci, wrapped[ci] flags the entries
    reached across the wrap seam.
    """
    width = 2 * radius + 3
    nbr = np.full((ncells, width), -1, dtype=np.int64)
    wrapped = np.zeros((ncells, width), dtype=bool)
    # visit smaller steps first so the wrap flag reflects the nearest route
    steps = sorted(range(-radius - 1, radius + 2), key=lambda d: (abs(d), d))
    for ci in range(ncells):
        k = 0
        for di in steps:
            raw = ci + di
            c2 = raw % ncells
            if c2 in nbr[ci, :k]:
                continue
            if abs(di) > radius:
                s1 = ci * cell
                e1 = min(s1 + cell, a)
                s2 = c2 * cell
                e2 = min(s2 + cell, a)
                gap = min((s2 - e1 + 1) % a, (s1 - e2 + 1) % a)
                if gap > radius * cell - 1:
                    continue
            nbr[ci, k] = c2
            wrapped[ci, k] = raw != c2
            k += 1
    return nbr, wrapped


# ---------------------------------------------------------------------------
# loop implementations (compiled with numba when available)
# ---------------------------------------------------------------------------


def _inv_mod_i64(x, m):
    """Extended-gcd inverse of x mod m; caller guarantees gcd(x, m) == 1."""
    r0, r1 = m, x % m
    t0, t1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t0 < 0:
        t0 += m
    return t0


def _inverses_for_loop(xs, m):
    k = xs.size
    invs = np.empty(k, dtype=np.int64)
    if k == 0:
        return invs
    pref = np.empty(k, dtype=np.int64)
    acc = np.int64(1)
    for i in range(k):
        acc = acc * xs[i] % m
        pref[i] = acc
    t = _inv_mod_i64(acc, m)
    for i in range(k - 1, 0, -1):
        invs[i] = t * pref[i - 1] % m
        t = t * xs[i] % m
    invs[0] = t
    return invs


def _unit_inverse_table_loop(m, primes):
    mask = np.ones(m, dtype=np.bool_)
    mask[0] = False
    for p in primes:
        for j in range(0, m, p):
            mask[j] = False
    k = 0
    for x in range(m):
        if mask[x]:
            k += 1
    units = np.empty(k, dtype=np.int64)
    i = 0
    for x in range(m):
        if mask[x]:
            units[i] = x
            i += 1
    invs = _inverses_for_loop(units, m)
    return units, invs


def _hyperbola_points_loop(n_mod, m, primes):
    """All (x, N*inv(x) mod m) with gcd(x, m) == 1, x ascending."""
    units, invs = _unit_inverse_table_loop(m, primes)
    ys = np.empty(units.size, dtype=np.int64)
    for i in range(units.size):
        ys[i] = n_mod * invs[i] % m
    return units, ys


def _bucket_csr_loop(xs, ys, cell_w, cell_h, cols, rows):
    """Counting-sort points into row-major cells; within-cell order by x."""
    npts = xs.size
    ncells = cols * rows
    counts = np.zeros(ncells + 1, dtype=np.int64)
    cids = np.empty(npts, dtype=np.int64)
    for i in range(npts):
        cid = (ys[i] // cell_h) * cols + xs[i] // cell_w
        cids[i] = cid
        counts[cid + 1] += 1
    starts = np.empty(ncells + 1, dtype=np.int64)
    acc = np.int64(0)
    for c in range(ncells + 1):
        acc += counts[c]
        starts[c] = acc
    fill = starts[:-1].copy()
    ox = np.empty(npts, dtype=np.int64)
    oy = np.empty(npts, dtype=np.int64)
    for i in range(npts):
        pos = fill[cids[i]]
        ox[pos] = xs[i]
        oy[pos] = ys[i]
        fill[cids[i]] += 1
    return ox, oy, starts


def _axis_neighbors_loop(ci, ncells, cell, a, radius, out):
    """Fill `out` with the gap-filtered neighbor cells of ci; return count."""
    k = 0
    for di in range(-radius - 1, radius + 2):
        raw = ci + di
        c2 = raw % ncells
        dup = False
        for t in range(k):
            if out[t] == c2:
                dup = True
                break
        if dup:
            continue
        if di < -radius or di > radius:
            s1 = ci * cell
            e1 = s1 + cell
            if e1 > a:
                e1 = a
            s2 = c2 * cell
            e2 = s2 + cell
            if e2 > a:
                e2 = a
            gap_r = (s2 - e1 + 1) % a
            gap_l = (s1 - e2 + 1) % a
            gap = gap_r if gap_r < gap_l else gap_l
            if gap > radius * cell - 1:
                continue
        out[k] = c2
        k += 1
    return k


def _pair_scan_csr_loop(bx, by, bstarts, sx, sy, sstarts, cols, rows,
                        cell_w, cell_h, a, dxc, dyc, n, m2):
    """Check every base/shifted pair in wrapped cell neighborhoods.

    Returns (u, v, pairs_checked) with (u, v) the lexicographically
    smallest verified split, or (0, 0, pairs) when none verifies.
    """
    best_u = np.int64(0)
    best_v = np.int64(0)
    pairs = np.int64(0)
    nis = np.empty(2 * dxc + 3, dtype=np.int64)
    njs = np.empty(2 * dyc + 3, dtype=np.int64)
    for cj in range(rows):
        nny = _axis_neighbors_loop(cj, rows, cell_h, a, dyc, njs)
        row0 = cj * cols
        for ci in range(cols):
            cid = row0 + ci
            b0, b1 = bstarts[cid], bstarts[cid + 1]
            if b0 == b1:
                continue
            nnx = _axis_neighbors_loop(ci, cols, cell_w, a, dxc, nis)
            for oj in range(nny):
                nrow0 = njs[oj] * cols
                for oi in range(nnx):
                    nid = nrow0 + nis[oi]
                    s0, s1 = sstarts[nid], sstarts[nid + 1]
                    for t in range(b0, b1):
                        x0 = bx[t]
                        y0 = by[t]
                        for s in range(s0, s1):
                            pairs += 1
                            du = sx[s] - x0
                            dv = sy[s] - y0
                            for uw in range(2):
                                u1 = du + uw * m2
                                if u1 < 0 or u1 >= a:
                                    continue
                                u = u1 * a + x0
                                if u < 2 or u > n or n % u != 0:
                                    continue
                                v = n // u
                                if v < 2:
                                    continue
                                for vw in range(2):
                                    v1 = dv + vw * m2
                                    if 0 <= v1 < a and v1 * a + y0 == v:
                                        lo, hi = (u, v) if u <= v else (v, u)
                                        if (best_u == 0 or lo < best_u
                                                or (lo == best_u and hi < best_v)):
                                            best_u, best_v = lo, hi
    return best_u, best_v, pairs


def _hyperbola_scan_loop(n, a, m2, primes_a, primes_m2,
                         cell_w, cell_h, dxc, dyc):
    """Fused factor scan: enumerate both solution sets, bucket, pair-scan.

    One call per (N, cell shape); keeps the per-call Python overhead off
    the timing-sensitive path.
    """
    cols = (a + cell_w - 1) // cell_w
    rows = (a + cell_h - 1) // cell_h
    bx0, by0 = _hyperbola_points_loop(n % a, a, primes_a)
    sx0, sy0 = _hyperbola_points_loop(n % m2, m2, primes_m2)
    bx, by, bstarts = _bucket_csr_loop(bx0, by0, cell_w, cell_h, cols, rows)
    sx, sy, sstarts = _bucket_csr_loop(sx0, sy0, cell_w, cell_h, cols, rows)
    u, v, pairs = _pair_scan_csr_loop(bx, by, bstarts, sx, sy, sstarts,
                                      cols, rows, cell_w, cell_h, a,
                                      dxc, dyc, n, m2)
    return u, v, bx0.size + sx0.size, pairs


if HAVE_NUMBA:
    _inv_mod_i64 = njit(cache=True)(_inv_mod_i64)
    _inverses_for_loop = njit(cache=True)(_inverses_for_loop)
    _unit_inverse_table_loop = njit(cache=True)(_unit_inverse_table_loop)
    _hyperbola_points_loop = njit(cache=True)(_hyperbola_points_loop)
    _bucket_csr_loop = njit(cache=True)(_bucket_csr_loop)
    _axis_neighbors_loop = njit(cache=True)(_axis_neighbors_loop)
    _pair_scan_csr_loop = njit(cache=True)(_pair_scan_csr_loop)
    _hyperbola_scan_loop = njit(cache=True)(_hyperbola_scan_loop)


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------


def _unit_mask_np(m: int, primes: np.ndarray) -> np.ndarray:
    mask = np.ones(m, dtype=bool)
    mask[0] = False
    for p in primes:
        mask[::p] = False
    return mask


def _modprod_scan(xs: np.ndarray, m: int) -> np.ndarray:
    """Inclusive prefix products mod m via log-depth doubling passes."""
    p = xs.astype(np.int64).copy()
    shift = 1
    while shift < p.size:
        p[shift:] = p[shift:] * p[:-shift] % m
        shift <<= 1
    return p


def _inverses_for_np(xs: np.ndarray, m: int) -> np.ndarray:
    k = xs.size
    if k == 0:
        return np.empty(0, dtype=np.int64)
    pref = _modprod_scan(xs, m)
    revp = _modprod_scan(xs[::-1], m)
    total_inv = pow(int(pref[-1]), -1, m)
    # inv(xs[i]) = total_inv * prod(xs[:i]) * prod(xs[i+1:])
    left = np.empty(k, dtype=np.int64)
    left[0] = 1
    left[1:] = pref[:-1]
    right = np.empty(k, dtype=np.int64)
    right[-1] = 1
    right[:-1] = revp[::-1][1:]
    out = left * right % m
    out = out * (total_inv % m) % m
    return out


def _unit_inverse_table_np(m, primes):
    mask = _unit_mask_np(m, primes)
    units = np.nonzero(mask)[0].astype(np.int64)
    return units, _inverses_for_np(units, m)


def _hyperbola_points_np(n_mod, m, primes):
    units, invs = _unit_inverse_table_np(m, primes)
    return units, n_mod * invs % m


def _bucket_csr_np(xs, ys, cell_w, cell_h, cols, rows):
    ncells = cols * rows
    cids = (ys // cell_h) * cols + xs // cell_w
    order = np.argsort(cids, kind="stable")
    counts = np.bincount(cids, minlength=ncells)
    starts = np.zeros(ncells + 1, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])
    return xs[order], ys[order], starts


def _ragged_arange(counts: np.ndarray, starts: np.ndarray) -> np.ndarray:
    """Concatenate arange(starts[i], starts[i]+counts[i]) without a loop."""
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    out = np.arange(total, dtype=np.int64)
    out -= np.repeat(np.cumsum(counts) - counts, counts)
    out += np.repeat(starts, counts)
    return out


def _pair_scan_csr_np(bx, by, bstarts, sx, sy, sstarts, cols, rows,
                      cell_w, cell_h, a, dxc, dyc, n, m2):
    bcounts = np.diff(bstarts)
    cells = np.nonzero(bcounts)[0]
    if cells.size == 0 or sx.size == 0:
        return 0, 0, 0
    ci = cells % cols
    cj = cells // cols
    bc = bcounts[cells]
    base_pts = _ragged_arange(bc, bstarts[cells])
    nx_tab, _ = axis_neighbor_table(cols, cell_w, a, dxc)
    ny_tab, _ = axis_neighbor_table(rows, cell_h, a, dyc)

    pairs = 0
    best: tuple[int, int] | None = None
    for oy in range(ny_tab.shape[1]):
        nj = ny_tab[cj, oy]
        if (nj < 0).all():
            continue
        for ox in range(nx_tab.shape[1]):
            ni = nx_tab[ci, ox]
            valid = (nj >= 0) & (ni >= 0)
            if not valid.any():
                continue
            nid = np.where(valid, nj * cols + ni, 0)
            scount = np.where(valid, sstarts[nid + 1] - sstarts[nid], 0)
            tot = int((bc * scount).sum())
            if tot == 0:
                continue
            pairs += tot
            # expand (base point, shifted point) index pairs cell by cell
            reps = np.repeat(scount, bc)
            b_idx = np.repeat(base_pts, reps)
            offs = np.arange(tot, dtype=np.int64) - np.repeat(
                np.cumsum(reps) - reps, reps)
            s_idx = offs + np.repeat(np.repeat(sstarts[nid], bc), reps)
            x0 = bx[b_idx]
            y0 = by[b_idx]
            du = sx[s_idx] - x0
            dv = sy[s_idx] - y0
            for uw in (0, 1):
                u1 = du + uw * m2
                ok = (u1 >= 0) & (u1 < a)
                if not ok.any():
                    continue
                u = u1 * a + x0
                ok &= (u >= 2) & (u <= n)
                usafe = np.where(ok, u, 1)
                ok &= n % usafe == 0
                if not ok.any():
                    continue
                v = n // usafe
                ok &= v >= 2
                for vw in (0, 1):
                    v1 = dv + vw * m2
                    hit = ok & (v1 >= 0) & (v1 < a) & (v1 * a + y0 == v)
                    if hit.any():
                        uu = u[hit]
                        vv = v[hit]
                        lo = np.minimum(uu, vv)
                        hi = np.maximum(uu, vv)
                        k = np.lexsort((hi, lo))[0]
                        cand = (int(lo[k]), int(hi[k]))
                        if best is None or cand < best:
                            best = cand
    if best is None:
        return 0, 0, pairs
    return best[0], best[1], pairs


def _hyperbola_scan_np(n, a, m2, primes_a, primes_m2,
                       cell_w, cell_h, dxc, dyc):
    cols = (a + cell_w - 1) // cell_w
    rows = (a + cell_h - 1) // cell_h
    bx0, by0 = _hyperbola_points_np(n % a, a, primes_a)
    sx0, sy0 = _hyperbola_points_np(n % m2, m2, primes_m2)
    bx, by, bstarts = _bucket_csr_np(bx0, by0, cell_w, cell_h, cols, rows)
    sx, sy, sstarts = _bucket_csr_np(sx0, sy0, cell_w, cell_h, cols, rows)
    u, v, pairs = _pair_scan_csr_np(bx, by, bstarts, sx, sy, sstarts,
                                    cols, rows, cell_w, cell_h, a,
                                    dxc, dyc, n, m2)
    return u, v, bx0.size + sx0.size, pairs


# ---------------------------------------------------------------------------
# dispatchers
# ---------------------------------------------------------------------------

_MAX_MOD = 1 << 31


def _check_mod(m: int) -> None:
    if not 2 <= m < _MAX_MOD:
        raise ValueError(f"modulus out of kernel range [2, 2**31): {m}")


def unit_inverse_table(m: int) -> tuple[np.ndarray, np.ndarray]:
    """(units, inverses) arrays for the units mod m, x ascending."""
    _check_mod(m)
    primes = _distinct_primes(m)
    if ACTIVE_BACKEND == "numba":
        return _unit_inverse_table_loop(m, primes)
    return _unit_inverse_table_np(m, primes)


def inverses_for(xs: np.ndarray, m: int) -> np.ndarray:
    """Inverses mod m of an arbitrary array of units (prefix products)."""
    _check_mod(m)
    xs = np.ascontiguousarray(xs, dtype=np.int64)
    if ACTIVE_BACKEND == "numba":
        return _inverses_for_loop(xs, m)
    return _inverses_for_np(xs, m)


def hyperbola_points(n: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Arrays (xs, ys) of all solutions to x*y == N (mod m), x ascending."""
    _check_mod(m)
    primes = _distinct_primes(m)
    if ACTIVE_BACKEND == "numba":
        return _hyperbola_points_loop(np.int64(n % m), m, primes)
    return _hyperbola_points_np(n % m, m, primes)


def bucket_csr(xs, ys, cell_w, cell_h, cols, rows):
    """Sort points into row-major cells: (xs, ys, starts) CSR arrays."""
    xs = np.ascontiguousarray(xs, dtype=np.int64)
    ys = np.ascontiguousarray(ys, dtype=np.int64)
    if ACTIVE_BACKEND == "numba":
        return _bucket_csr_loop(xs, ys, cell_w, cell_h, cols, rows)
    return _bucket_csr_np(xs, ys, cell_w, cell_h, cols, rows)


def pair_scan_csr(bx, by, bstarts, sx, sy, sstarts, cols, rows,
                  cell_w, cell_h, a, dxc, dyc, n, m2):
    """Scan neighborhood pairs of bucketed point sets for a split of n."""
    if ACTIVE_BACKEND == "numba":
        u, v, pairs = _pair_scan_csr_loop(
            bx, by, bstarts, sx, sy, sstarts, cols, rows,
            np.int64(cell_w), np.int64(cell_h), np.int64(a),
            np.int64(dxc), np.int64(dyc), np.int64(n), np.int64(m2))
        return int(u), int(v), int(pairs)
    u, v, pairs = _pair_scan_csr_np(bx, by, bstarts, sx, sy, sstarts,
                                    cols, rows, cell_w, cell_h, a,
                                    dxc, dyc, n, m2)
    return int(u), int(v), int(pairs)


def hyperbola_scan(n: int, a: int, m2: int, cell_w: int, cell_h: int,
                   dxc: int, dyc: int) -> tuple[int, int, int, int]:
    """Fused enumerate+bucket+scan; returns (u, v, points, pairs)."""
    _check_mod(a)
    _check_mod(m2)
    if not 0 < n < 1 << 63:
        raise ValueError("N out of kernel range")
    pa = _distinct_primes(a)
    pm = _distinct_primes(m2)
    if ACTIVE_BACKEND == "numba":
        u, v, pts, pairs = _hyperbola_scan_loop(
            np.int64(n), np.int64(a), np.int64(m2), pa, pm,
            np.int64(cell_w), np.int64(cell_h), np.int64(dxc), np.int64(dyc))
    else:
        u, v, pts, pairs = _hyperbola_scan_np(n, a, m2, pa, pm,
                                              cell_w, cell_h, dxc, dyc)
    return int(u), int(v), int(pts), int(pairs)


def warmup() -> None:
    """Force JIT compilation of all kernels (no-op on the numpy backend)."""
    hyperbola_scan(77, 6, 5, 3, 3, 1, 1)
    unit_inverse_table(10)
    inverses_for(np.array([1, 3, 7, 9], dtype=np.int64), 10)
    xs, ys = hyperbola_points(1, 5)
    bx, by, starts = bucket_csr(xs, ys, 3, 3, 2, 2)
    pair_scan_csr(bx, by, starts, bx, by, starts, 2, 2, 3, 3, 5, 1, 1, 77, 4)
