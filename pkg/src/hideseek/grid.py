"""Cell grid over the a-by-a square: bucketing and neighbor pair iteration.

Cells are cell_w wide and cell_h tall; the rightmost column and topmost
row are truncated when the cell size does not divide a.  Neighbor
iteration wraps around both edges, treating column cols-1 and column 0 as
adjacent (same for rows).  With truncated edge cells the wraparound
over-covers slightly; the extra candidate pairs cost time, never
correctness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

from . import _kernels
from .solutions import HyperbolaPoint, SolutionSet

__all__ = ["Grid", "CellCounts", "PairEvent", "make_grid", "bucket",
           "neighbor_pairs"]


@dataclass(frozen=True)
class Grid:
    a: int
    cell_w: int
    cell_h: int

    @property
    def cols(self) -> int:
        return -(-self.a // self.cell_w)

    @property
    def rows(self) -> int:
        return -(-self.a // self.cell_h)

    def cell_of(self, x: int, y: int) -> tuple[int, int]:
        return x // self.cell_w, y // self.cell_h


def make_grid(a: int, cell_w: int, cell_h: int) -> Grid:
    if a < 1:
        raise ValueError("square side must be >= 1")
    if not (1 <= cell_w <= a and 1 <= cell_h <= a):
        raise ValueError(f"cell dimensions out of range: {cell_w}x{cell_h} for a={a}")
    return Grid(a, cell_w, cell_h)


@dataclass(frozen=True)
class CellCounts:
    """Bucketed points in CSR layout (or bare counts in counting mode)."""

    grid: Grid
    counts: np.ndarray = field(repr=False)
    xs: np.ndarray | None = field(default=None, repr=False)
    ys: np.ndarray | None = field(default=None, repr=False)
    starts: np.ndarray | None = field(default=None, repr=False)

    @property
    def counting_only(self) -> bool:
        return self.xs is None

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def count(self, i: int, j: int) -> int:
        return int(self.counts[j * self.grid.cols + i])

    def points_in(self, i: int, j: int) -> list[HyperbolaPoint]:
        if self.counting_only:
            raise ValueError("bucketed in counting-only mode; no points stored")
        cid = j * self.grid.cols + i
        lo, hi = int(self.starts[cid]), int(self.starts[cid + 1])
        return [HyperbolaPoint(int(x), int(y))
                for x, y in zip(self.xs[lo:hi], self.ys[lo:hi])]

    @property
    def cells(self) -> dict[tuple[int, int], list[HyperbolaPoint]]:
        """Materialized {(i, j): points} map; intended for small grids."""
        out: dict[tuple[int, int], list[HyperbolaPoint]] = {}
        for j in range(self.grid.rows):
            for i in range(self.grid.cols):
                pts = self.points_in(i, j)
                if pts:
                    out[(i, j)] = pts
        return out


def _as_arrays(points) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(points, SolutionSet):
        return points.xs, points.ys
    if isinstance(points, tuple) and len(points) == 2:
        return (np.asarray(points[0], dtype=np.int64),
                np.asarray(points[1], dtype=np.int64))
    pts = list(points)
    if not pts:
        e = np.empty(0, dtype=np.int64)
        return e, e
    arr = np.asarray(pts, dtype=np.int64)
    return arr[:, 0], arr[:, 1]


def bucket(points, grid: Grid, counts_only: bool = False) -> CellCounts:
    """Assign each point to cell (x // cell_w, y // cell_h)."""
    xs, ys = _as_arrays(points)
    if xs.size and (xs.min() < 0 or xs.max() >= grid.a
                    or ys.min() < 0 or ys.max() >= grid.a):
        raise ValueError("point outside [0, a)^2")
    ncells = grid.cols * grid.rows
    cids = (ys // grid.cell_h) * grid.cols + xs // grid.cell_w
    counts = np.bincount(cids, minlength=ncells).astype(np.int64)
    if counts_only:
        return CellCounts(grid, counts)
    ox, oy, starts = _kernels.bucket_csr(xs, ys, grid.cell_w, grid.cell_h,
                                         grid.cols, grid.rows)
    return CellCounts(grid, counts, ox, oy, starts)


class PairEvent(NamedTuple):
    p: HyperbolaPoint
    q: HyperbolaPoint
    col_wrap: bool
    row_wrap: bool


def neighbor_pairs(base: CellCounts, shifted: CellCounts,
                   dx_cells: int, dy_cells: int) -> Iterator[PairEvent]:
    """Yield (p, q) for p in a base cell, q in a same-or-neighboring
    shifted cell, wrapping around the grid edges.

    Neighbor cells are chosen by the wrapped-gap rule (index distance up
    to the radius, plus one extra step across the wrap seam when the
    truncated edge cell is thinner than a full cell), which is exactly
    what makes the completeness guarantee hold: any two points within
    radius*cell of each other in wrapped coordinate distance are paired.
    Each neighbor cell is visited once per base cell, so radii covering
    the whole grid yield exactly |base|*|shifted| pairs.  The wrap flags
    record a crossing of the seam in column / row direction (callers add
    the shifted set's modulus back to the wrapped coordinate when
    reconstructing).
    """
    if base.grid != shifted.grid:
        raise ValueError("base and shifted sets bucketed on different grids")
    if base.counting_only or shifted.counting_only:
        raise ValueError("neighbor_pairs needs stored points")
    g = base.grid
    cols, rows = g.cols, g.rows
    col_nbrs, col_wraps = _kernels.axis_neighbor_table(cols, g.cell_w, g.a,
                                                       dx_cells)
    row_nbrs, row_wraps = _kernels.axis_neighbor_table(rows, g.cell_h, g.a,
                                                       dy_cells)
    for cj in range(rows):
        for ci in range(cols):
            bpts = base.points_in(ci, cj)
            if not bpts:
                continue
            for oj in range(row_nbrs.shape[1]):
                nj = int(row_nbrs[cj, oj])
                if nj < 0:
                    continue
                for oi in range(col_nbrs.shape[1]):
                    ni = int(col_nbrs[ci, oi])
                    if ni < 0:
                        continue
                    qpts = shifted.points_in(ni, nj)
                    if not qpts:
                        continue
                    col_wrap = bool(col_wraps[ci, oi])
                    row_wrap = bool(row_wraps[cj, oj])
                    for p in bpts:
                        for q in qpts:
                            yield PairEvent(p, q, col_wrap, row_wrap)
