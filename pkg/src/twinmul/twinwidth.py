"""Divisions, merge sequences and mixed-minor checks.

A division cuts the row indices and the column indices into contiguous
intervals; a merge sequence starts from all singletons and fuses one adjacent
pair of row or column intervals per step until one interval of each remains.
A sequence is ``d``-wide when, in every division it visits, each row block and
each column block meets at most ``d`` non-constant cells.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb

import numpy as np

from .matrix_core import BitMatrix, DimensionError


class StructureError(ValueError):
    """A merge sequence does not fit the matrix it is replayed on."""

    def __init__(self, message: str, op_index: int | None = None):
        super().__init__(message if op_index is None else f"op {op_index}: {message}")
        self.op_index = op_index


class CapacityError(RuntimeError):
    """A brute-force check would exceed its configured budget."""


class Axis(str, Enum):
    ROW = "R"
    COL = "C"


@dataclass(frozen=True)
class MergeOp:
    """Fuse interval ``position`` with interval ``position + 1`` (0-based)."""

    axis: Axis
    position: int

    def shifted(self, offset: int) -> "MergeOp":
        return MergeOp(self.axis, self.position + offset)


@dataclass(frozen=True)
class MergeSequence:
    n: int
    ops: tuple[MergeOp, ...]

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))

    def __len__(self) -> int:
        return len(self.ops)

    def divisions(self):
        """Yield every :class:`Division` from the singletons to the final one."""
        rows = [(i, i) for i in range(self.n)]
        cols = [(i, i) for i in range(self.n)]
        yield Division(tuple(rows), tuple(cols))
        for k, op in enumerate(self.ops):
            parts = rows if op.axis is Axis.ROW else cols
            if not 0 <= op.position < len(parts) - 1:
                raise StructureError(f"position {op.position} invalid with {len(parts)} intervals", k)
            lo, hi = parts[op.position][0], parts[op.position + 1][1]
            parts[op.position : op.position + 2] = [(lo, hi)]
            yield Division(tuple(rows), tuple(cols))


@dataclass(frozen=True)
class Division:
    """Row and column intervals as inclusive ``(lo, hi)`` pairs."""

    row_intervals: tuple[tuple[int, int], ...]
    col_intervals: tuple[tuple[int, int], ...]

    def validate(self, n_rows: int, n_cols: int) -> None:
        for name, parts, n in (("row", self.row_intervals, n_rows), ("column", self.col_intervals, n_cols)):
            expect = 0
            for lo, hi in parts:
                if lo != expect or hi < lo:
                    raise StructureError(f"{name} intervals do not tile range({n})")
                expect = hi + 1
            if expect != n:
                raise StructureError(f"{name} intervals do not tile range({n})")

    def nonconstant_cells(self, M: BitMatrix) -> np.ndarray:
        """Boolean ``(k_rows, k_cols)`` array: which cells hold both a 0 and a 1."""
        self.validate(*M.shape)
        S = _prefix2d(M)
        r = np.array([lo for lo, _ in self.row_intervals] + [M.n_rows])
        c = np.array([lo for lo, _ in self.col_intervals] + [M.n_cols])
        ones = S[np.ix_(r[1:], c[1:])] - S[np.ix_(r[:-1], c[1:])] - S[np.ix_(r[1:], c[:-1])] + S[np.ix_(r[:-1], c[:-1])]
        area = np.outer(np.diff(r), np.diff(c))
        return (ones > 0) & (ones < area)

    def wideness(self, M: BitMatrix) -> int:
        nc = self.nonconstant_cells(M)
        if nc.size == 0:
            return 0
        return int(max(nc.sum(axis=1).max(), nc.sum(axis=0).max()))


def _prefix2d(M: BitMatrix) -> np.ndarray:
    S = np.zeros((M.n_rows + 1, M.n_cols + 1), dtype=np.int64)
    S[1:, 1:] = M.to_dense(np.int64).cumsum(0).cumsum(1)
    return S


def max_wideness(M: BitMatrix, seq: MergeSequence) -> int:
    """Largest count of non-constant cells in any row or column block along ``seq``.

    Cell states are kept for the full singleton grid and updated in place:
    a merge folds one row (or column) of cells into its neighbour, so each op
    costs ``O(n)`` array work.
    """
    n = seq.n
    if M.shape != (n, n):
        raise StructureError(f"sequence is for {n}x{n}, matrix is {M.shape[0]}x{M.shape[1]}")
    if len(seq.ops) != max(2 * n - 2, 0):
        raise StructureError(f"expected {max(2 * n - 2, 0)} ops, got {len(seq.ops)}")
    if n == 0:
        return 0
    # value[i, j] is 0 or 1 for a constant cell, 2 for a non-constant one
    value = M.to_dense(np.int8).copy()
    row_alive = list(range(n))
    col_alive = list(range(n))
    row_bad = np.zeros(n, dtype=np.int64)
    col_bad = np.zeros(n, dtype=np.int64)
    best = 0
    for k, op in enumerate(seq.ops):
        if op.axis is Axis.ROW:
            alive, other, bad, other_bad, view = row_alive, col_alive, row_bad, col_bad, value
        else:
            alive, other, bad, other_bad, view = col_alive, row_alive, col_bad, row_bad, value.T
        p = op.position
        if not 0 <= p < len(alive) - 1:
            raise StructureError(f"position {p} invalid with {len(alive)} intervals", k)
        a, b = alive[p], alive[p + 1]
        cells = np.asarray(other)
        va, vb = view[a, cells], view[b, cells]
        merged = np.where(va == vb, va, 2).astype(np.int8)
        other_bad[cells] += (merged == 2).astype(np.int64) - (va == 2) - (vb == 2)
        view[a, cells] = merged
        bad[a] = int((merged == 2).sum())
        bad[b] = 0
        del alive[p + 1]
        best = max(best, int(bad[a]), int(other_bad[cells].max()))
    return best


def verify_wideness(M: BitMatrix, seq: MergeSequence, d: int) -> bool:
    return max_wideness(M, seq) <= d


def build_theorem4_sequence(i: int) -> MergeSequence:
    """A 3-wide merge sequence for the recursive ``2*3^i`` construction.

    Contract the top-left copy, then the middle, then the bottom-right, each
    with the sequence one level down shifted onto its block; then finish the
    remaining 3x3 by merging rows left to right, then columns.
    """
    if i < 0:
        raise ValueError("level must be non-negative")
    if i == 0:
        return MergeSequence(2, (MergeOp(Axis.ROW, 0), MergeOp(Axis.COL, 0)))
    sub = build_theorem4_sequence(i - 1)
    ops: list[MergeOp] = []
    for block in range(3):
        # earlier blocks are already down to one interval each
        ops.extend(op.shifted(block) for op in sub.ops)
    ops += [MergeOp(Axis.ROW, 0), MergeOp(Axis.ROW, 0), MergeOp(Axis.COL, 0), MergeOp(Axis.COL, 0)]
    return MergeSequence(3 * sub.n, tuple(ops))


def _rows_equal(block: np.ndarray) -> bool:
    return bool((block == block[:1]).all())


def is_horizontal(block: np.ndarray) -> bool:
    """All rows equal."""
    return _rows_equal(block)


def is_vertical(block: np.ndarray) -> bool:
    """All columns equal."""
    return _rows_equal(block.T)


def is_mixed(M: BitMatrix, cell) -> bool:
    """Whether the submatrix ``cell = (row_lo, row_hi, col_lo, col_hi)`` is mixed."""
    r0, r1, c0, c1 = cell
    if not (0 <= r0 <= r1 < M.n_rows and 0 <= c0 <= c1 < M.n_cols):
        raise IndexError(f"cell {tuple(cell)} outside {M.shape}")
    block = M.to_dense()[r0 : r1 + 1, c0 : c1 + 1]
    return not is_horizontal(block) and not is_vertical(block)


def _corner_mask(dense: np.ndarray) -> np.ndarray:
    tl, tr = dense[:-1, :-1], dense[:-1, 1:]
    bl, br = dense[1:, :-1], dense[1:, 1:]
    rows_differ = (tl != bl) | (tr != br)
    cols_differ = (tl != tr) | (bl != br)
    return rows_differ & cols_differ


def corner_count(M: BitMatrix) -> int:
    """Number of contiguous 2x2 windows that are mixed."""
    if M.n_rows < 2 or M.n_cols < 2:
        return 0
    return int(_corner_mask(M.to_dense()).sum())


def _division_cuts(n: int, k: int):
    for cuts in combinations(range(1, n), k - 1):
        yield (0,) + cuts + (n,)


def _check_budget(M: BitMatrix, k: int, budget: int) -> None:
    if k < 1:
        raise ValueError("k must be at least 1")
    need = comb(max(M.n_rows - 1, 0), k - 1) * comb(max(M.n_cols - 1, 0), k - 1)
    if need > budget:
        raise CapacityError(f"{need} candidate {k}-divisions exceed the budget of {budget}")


def _exists_division(M: BitMatrix, k: int, cell_ok, budget: int) -> bool:
    """Is there a k-division whose every cell satisfies ``cell_ok(r0, r1, c0, c1)``?

    Cells are tested lazily per row band, so most candidates die early.
    """
    _check_budget(M, k, budget)
    if M.n_rows < k or M.n_cols < k:
        return False
    col_divs = list(_division_cuts(M.n_cols, k))
    for rc in _division_cuts(M.n_rows, k):
        for cc in col_divs:
            if all(
                cell_ok(rc[a], rc[a + 1], cc[b], cc[b + 1]) for a in range(k) for b in range(k)
            ):
                return True
    return False


DEFAULT_BUDGET = 10**7


def mixed_free_check(M: BitMatrix, d: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff no ``d``-division of ``M`` has all of its cells mixed.

    Exhaustive over cut positions; a cell is mixed exactly when it contains a
    corner, which a 2-D prefix count over the corner windows answers in O(1).
    """
    dense = M.to_dense()
    if M.n_rows < 2 or M.n_cols < 2:
        _check_budget(M, d, budget)
        return True
    W = np.zeros((M.n_rows, M.n_cols), dtype=np.int64)
    W[1:, 1:] = _corner_mask(dense).astype(np.int64).cumsum(0).cumsum(1)

    def mixed(r0, r1, c0, c1):
        # windows fully inside rows r0..r1-1 and cols c0..c1-1 have top-left in [r0, r1-2] x [c0, c1-2]
        if r1 - r0 < 2 or c1 - c0 < 2:
            return False
        return W[r1 - 1, c1 - 1] - W[r0, c1 - 1] - W[r1 - 1, c0] + W[r0, c0] > 0

    return not _exists_division(M, d, mixed, budget)


def grid_free_check(M: BitMatrix, d: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff no ``d``-division of ``M`` has a 1-entry in every cell."""
    S = _prefix2d(M)

    def has_one(r0, r1, c0, c1):
        return S[r1, c1] - S[r0, c1] - S[r1, c0] + S[r0, c0] > 0

    return not _exists_division(M, d, has_one, budget)


def gen_block_example(n: int) -> BitMatrix:
    """``[[Q^T, Q], [Q, Q^T]]`` where ``Q`` (size n/2) has zero rows at odd 1-based
    positions and all-one rows at even ones."""
    if n < 0 or n % 2:
        raise ValueError(f"n must be a non-negative even number, got {n}")
    h = n // 2
    Q = np.zeros((h, h), dtype=np.uint8)
    Q[1::2, :] = 1
    return BitMatrix.from_dense(np.block([[Q.T, Q], [Q, Q.T]]))
