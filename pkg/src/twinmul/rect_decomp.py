"""Disjoint rectangle decompositions of the 1-entries and polygon statistics.

The 1-cells of a matrix, glued along shared sides, form a family of
orthogonal polygons. :func:`decompose` partitions them with vertical cuts
through every concave vertex, which amounts to splitting each column into
maximal runs of ones and gluing horizontally adjacent runs that span the same
rows. :func:`polygon_stats` counts vertices from 2x2 windows so the size of the
partition can be checked against the polygon geometry.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import ndimage

from .matrix_core import BitMatrix, DimensionError


class Rect(NamedTuple):
    """Rows ``row_lo..row_hi`` by columns ``col_lo..col_hi``, 0-based inclusive."""

    row_lo: int
    row_hi: int
    col_lo: int
    col_hi: int

    @property
    def height(self) -> int:
        return self.row_hi - self.row_lo + 1

    @property
    def width(self) -> int:
        return self.col_hi - self.col_lo + 1

    @property
    def area(self) -> int:
        return self.height * self.width


class RectDecomposition:
    """A set of disjoint all-ones rectangles, stored as a ``(k, 4)`` int64 array.

    Columns of :attr:`bounds` are ``row_lo, row_hi, col_lo, col_hi``.
    """

    __slots__ = ("n_rows", "n_cols", "bounds")

    def __init__(self, n_rows: int, n_cols: int, bounds):
        bounds = np.asarray(bounds, dtype=np.int64).reshape(-1, 4)
        if bounds.size:
            r0, r1, c0, c1 = bounds.T
            if (r0 > r1).any() or (c0 > c1).any():
                raise ValueError("rectangle with lo > hi")
            if r0.min() < 0 or c0.min() < 0 or r1.max() >= n_rows or c1.max() >= n_cols:
                raise ValueError(f"rectangle outside a {n_rows}x{n_cols} matrix")
        bounds = bounds.copy()
        bounds.flags.writeable = False
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.bounds = bounds

    @classmethod
    def from_rects(cls, n_rows: int, n_cols: int, rects) -> "RectDecomposition":
        return cls(n_rows, n_cols, [tuple(r) for r in rects])

    @property
    def rects(self) -> list[Rect]:
        return [Rect(*map(int, b)) for b in self.bounds]

    def __len__(self) -> int:
        return self.bounds.shape[0]

    def __iter__(self):
        return iter(self.rects)

    def __repr__(self) -> str:
        return f"RectDecomposition({self.n_rows}x{self.n_cols}, {len(self)} rects)"

    def transpose(self) -> "RectDecomposition":
        """The same rectangles for the transposed matrix."""
        return RectDecomposition(self.n_cols, self.n_rows, self.bounds[:, [2, 3, 0, 1]])

    def to_matrix(self) -> BitMatrix:
        dense = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for r0, r1, c0, c1 in self.bounds:
            dense[r0 : r1 + 1, c0 : c1 + 1] = 1
        return BitMatrix.from_dense(dense)


@dataclass(frozen=True)
class PolygonStats:
    num_polygons: int
    convex_vertices: int
    concave_vertices: int
    holes: int
    boundary_horizontal_length: int

    # short aliases matching the usual P, V, C, H notation
    @property
    def P(self) -> int:
        return self.num_polygons

    @property
    def V(self) -> int:
        return self.convex_vertices

    @property
    def C(self) -> int:
        return self.concave_vertices

    @property
    def H(self) -> int:
        return self.holes


@dataclass(frozen=True)
class ComponentStats:
    """Vertex and hole counts for a single polygon (4-connected component)."""

    label: int
    cells: int
    convex_vertices: int
    concave_vertices: int
    holes: int


_FOUR_CONNECTED = ndimage.generate_binary_structure(2, 1)


def _windows(dense: np.ndarray):
    """Corner cells of every 2x2 window of the zero-padded matrix."""
    p = np.pad(dense.astype(np.uint8), 1)
    return p[:-1, :-1], p[:-1, 1:], p[1:, :-1], p[1:, 1:]


def _vertex_counts(dense: np.ndarray) -> tuple[int, int]:
    tl, tr, bl, br = _windows(dense)
    total = tl + tr + bl + br
    diagonal = (total == 2) & (tl == br)
    convex = int((total == 1).sum()) + 2 * int(diagonal.sum())
    concave = int((total == 3).sum())
    return convex, concave


def _horizontal_boundary(dense: np.ndarray) -> int:
    p = np.pad(dense.astype(np.int8), ((1, 1), (0, 0)))
    return int(np.abs(np.diff(p, axis=0)).sum())


def polygon_stats(M: BitMatrix) -> PolygonStats:
    dense = M.to_dense()
    convex, concave = _vertex_counts(dense)
    _, n_polygons = ndimage.label(dense, structure=_FOUR_CONNECTED)
    # turning number: each outer boundary contributes +4, each hole boundary -4
    euler, rem = divmod(convex - concave, 4)
    assert rem == 0, "vertex classification broke the turning-number identity"
    return PolygonStats(
        num_polygons=int(n_polygons),
        convex_vertices=convex,
        concave_vertices=concave,
        holes=int(n_polygons) - euler,
        boundary_horizontal_length=_horizontal_boundary(dense),
    )


def component_stats(M: BitMatrix) -> list[ComponentStats]:
    """Per-polygon convex/concave/hole counts, ordered by component label."""
    dense = M.to_dense()
    labels, n = ndimage.label(dense, structure=_FOUR_CONNECTED)
    if n == 0:
        return []
    tl, tr, bl, br = _windows(labels)
    cells = np.stack([tl, tr, bl, br])
    filled = cells > 0
    total = filled.sum(axis=0)
    # any filled cell of a 1- or 3-window names its polygon; the three cells of an L are 4-connected
    owner = cells.max(axis=0)
    convex = np.bincount(owner[total == 1], minlength=n + 1)
    concave = np.bincount(owner[total == 3], minlength=n + 1)
    diag = (total == 2) & ((tl > 0) == (br > 0))
    convex += np.bincount(cells[:, diag][filled[:, diag]], minlength=n + 1)
    sizes = np.bincount(labels.ravel(), minlength=n + 1)
    out = []
    for lab in range(1, n + 1):
        v, c = int(convex[lab]), int(concave[lab])
        out.append(ComponentStats(lab, int(sizes[lab]), v, c, 1 - (v - c) // 4))
    return out


def decompose(M: BitMatrix) -> RectDecomposition:
    """Vertical-slab rectangle decomposition of the 1-entries of ``M``.

    Each column is split into maximal runs of ones; a run continues the
    rectangle of the run immediately to its left when both cover exactly the
    same rows. Runs in ``O(n_rows * n_cols + k)`` for ``k`` rectangles.
    """
    dense = M.to_dense(np.int8)
    n_rows, n_cols = M.shape
    if dense.size == 0 or not dense.any():
        return RectDecomposition(n_rows, n_cols, np.empty((0, 4), dtype=np.int64))
    p = np.pad(dense, ((1, 1), (0, 0)))
    d = np.diff(p, axis=0)
    # column-major scan so runs come out ordered by (col, start)
    sc, sr = np.nonzero(d.T == 1)
    ec, er = np.nonzero(d.T == -1)
    start, end, col = sr, er - 1, sc
    order = np.lexsort((col, end, start))
    start, end, col = start[order], end[order], col[order]
    continues = np.zeros(start.size, dtype=bool)
    continues[1:] = (start[1:] == start[:-1]) & (end[1:] == end[:-1]) & (col[1:] == col[:-1] + 1)
    heads = np.flatnonzero(~continues)
    tails = np.append(heads[1:], start.size) - 1
    bounds = np.column_stack((start[heads], end[heads], col[heads], col[tails]))
    # row-major by top-left corner for readable output
    bounds = bounds[np.lexsort((bounds[:, 2], bounds[:, 0]))]
    return RectDecomposition(n_rows, n_cols, bounds)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    kind: str = "ok"  # "ok" | "overlap" | "coverage"
    cell: tuple[int, int] | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(D: RectDecomposition, M: BitMatrix) -> ValidationReport:
    """Check that ``D`` is disjoint and covers exactly the ones of ``M``.

    Reports the first offending cell in row-major order.
    """
    if (D.n_rows, D.n_cols) != M.shape:
        raise DimensionError(f"decomposition is {D.n_rows}x{D.n_cols}, matrix is {M.shape}")
    stamp = np.zeros(M.shape, dtype=np.int64)
    for r0, r1, c0, c1 in D.bounds:
        stamp[r0 : r1 + 1, c0 : c1 + 1] += 1
    over = np.argwhere(stamp > 1)
    if over.size:
        i, j = map(int, over[0])
        return ValidationReport(False, "overlap", (i, j), f"cell ({i}, {j}) covered {stamp[i, j]} times")
    dense = M.to_dense(np.int64)
    wrong = np.argwhere(stamp != dense)
    if wrong.size:
        i, j = map(int, wrong[0])
        what = "uncovered 1-entry" if dense[i, j] else "covered 0-entry"
        return ValidationReport(False, "coverage", (i, j), f"{what} at ({i}, {j})")
    return ValidationReport(True)
