"""Brute-force references that the fast paths are checked against."""
from __future__ import annotations

import numpy as np

from .matrix_core import BitMatrix, DimensionError, hamming_to_all
from .twinwidth import CapacityError


def naive_mv(M: BitMatrix, v) -> np.ndarray:
    """``x_i = sum of v_j over the set bits j of row i``, one row at a time."""
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != M.n_cols:
        raise DimensionError(f"naive_mv: vector has shape {v.shape}, expected ({M.n_cols},)")
    dense = M.to_dense(bool)
    x = np.zeros(M.n_rows, dtype=np.result_type(v.dtype, np.int64) if v.dtype.kind in "biu" else v.dtype)
    for i in range(M.n_rows):
        x[i] = v[dense[i]].sum()
    return x


def naive_mv_colmajor(M: BitMatrix, v) -> np.ndarray:
    """Same product accumulated column by column."""
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != M.n_cols:
        raise DimensionError(f"naive_mv_colmajor: vector has shape {v.shape}, expected ({M.n_cols},)")
    dense = M.to_dense(bool)
    x = np.zeros(M.n_rows, dtype=np.result_type(v.dtype, np.int64) if v.dtype.kind in "biu" else v.dtype)
    for j in range(M.n_cols):
        x[dense[:, j]] += v[j]
    return x


def naive_vt_m(M: BitMatrix, v) -> np.ndarray:
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != M.n_rows:
        raise DimensionError(f"naive_vt_m: vector has shape {v.shape}, expected ({M.n_rows},)")
    dense = M.to_dense(bool)
    x = np.zeros(M.n_cols, dtype=np.result_type(v.dtype, np.int64) if v.dtype.kind in "biu" else v.dtype)
    for j in range(M.n_cols):
        x[j] = v[dense[:, j]].sum()
    return x


def naive_matmul(A: BitMatrix, B) -> np.ndarray:
    """Dense ``A @ B`` with ``A`` unpacked to the dtype of ``B``."""
    B = np.asarray(B)
    if B.ndim != 2 or B.shape[0] != A.n_cols:
        raise DimensionError(f"naive_matmul: right operand has shape {B.shape}, expected ({A.n_cols}, k)")
    dtype = np.int64 if B.dtype.kind in "biu" else B.dtype
    return A.to_dense(dtype) @ B.astype(dtype, copy=False)


MAX_PARTITION_CELLS = 36
MAX_ORDERING_ROWS = 15


class _RectTable:
    """All-rectangle bitmasks of an ``r x c`` grid, grouped by top-left cell.

    Within each group, larger areas come first.
    """

    _cache: dict[tuple[int, int], "_RectTable"] = {}

    def __init__(self, r: int, c: int):
        self.shape = (r, c)
        self.by_anchor: list[list[tuple[int, tuple[int, int, int, int]]]] = []
        for i in range(r):
            for j in range(c):
                group = []
                for i2 in range(i, r):
                    for j2 in range(j, c):
                        mask = 0
                        for a in range(i, i2 + 1):
                            for b in range(j, j2 + 1):
                                mask |= 1 << (a * c + b)
                        group.append(((i2 - i + 1) * (j2 - j + 1), mask, (i, i2, j, j2)))
                group.sort(key=lambda g: -g[0])
                self.by_anchor.append([(m, rect) for _, m, rect in group])

    @classmethod
    def get(cls, r: int, c: int) -> "_RectTable":
        key = (r, c)
        if key not in cls._cache:
            cls._cache[key] = _RectTable(r, c)
        return cls._cache[key]


def cell_mask(M: BitMatrix) -> int:
    """The 1-entries of ``M`` as an int with bit ``i * n_cols + j``."""
    return sum(1 << int(k) for k in np.flatnonzero(M.to_dense().ravel()))


class PartitionSolver:
    """Exact minimum rectangle partition for one grid shape.

    The first remaining 1-cell in row-major order has to be the top-left
    corner of its rectangle (every earlier cell is already used), so the
    search branches only over rectangles anchored there. Results are memoised
    per remaining cell set and shared across calls with the same shape.
    """

    def __init__(self, n_rows: int, n_cols: int, max_cells: int = MAX_PARTITION_CELLS):
        if n_rows * n_cols > max_cells:
            raise CapacityError(f"{n_rows}x{n_cols} has more than {max_cells} cells")
        self.table = _RectTable.get(n_rows, n_cols)
        self.memo: dict[int, tuple[int, int]] = {0: (0, -1)}

    def count(self, mask: int) -> int:
        memo = self.memo
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        anchor = (mask & -mask).bit_length() - 1
        best, best_idx = 1 << 30, -1
        for idx, (rmask, _) in enumerate(self.table.by_anchor[anchor]):
            if rmask & mask == rmask:
                sub = self.count(mask ^ rmask)
                if sub + 1 < best:
                    best, best_idx = sub + 1, idx
                    if best == 1:
                        break
        memo[mask] = (best, best_idx)
        return best

    def partition(self, mask: int) -> list[tuple[int, int, int, int]]:
        self.count(mask)
        rects = []
        while mask:
            anchor = (mask & -mask).bit_length() - 1
            rmask, rect = self.table.by_anchor[anchor][self.memo[mask][1]]
            rects.append(rect)
            mask ^= rmask
        return rects


def optimal_rect_partition(M: BitMatrix, max_cells: int = MAX_PARTITION_CELLS, solver: PartitionSolver | None = None):
    """Minimum number of disjoint all-ones rectangles covering the ones of ``M``.

    Returns ``(count, rects)`` with rects as 0-based inclusive
    ``(row_lo, row_hi, col_lo, col_hi)``.
    """
    if solver is None:
        solver = PartitionSolver(M.n_rows, M.n_cols, max_cells)
    elif solver.table.shape != M.shape:
        raise DimensionError("solver was built for a different shape")
    mask = cell_mask(M)
    rects = solver.partition(mask)
    return len(rects), rects


def hamming_distance_matrix(M: BitMatrix) -> np.ndarray:
    return np.stack([hamming_to_all(M, i) for i in range(M.n_rows)]) if M.n_rows else np.zeros((0, 0), np.int64)


def optimal_row_ordering(M: BitMatrix, max_rows: int = MAX_ORDERING_ROWS):
    """Minimum row-Hamming-sum over all orders (Held-Karp, free endpoints).

    Returns ``(order, weight)``.
    """
    n = M.n_rows
    if n > max_rows:
        raise CapacityError(f"{n} rows exceed the Held-Karp budget of {max_rows}")
    if n <= 1:
        return np.arange(n, dtype=np.int64), 0
    D = hamming_distance_matrix(M)
    full = 1 << n
    inf = np.iinfo(np.int64).max // 4
    # cost[mask, j]: cheapest path visiting exactly `mask`, ending at j
    cost = np.full((full, n), inf, dtype=np.int64)
    back = np.full((full, n), -1, dtype=np.int8)
    for j in range(n):
        cost[1 << j, j] = 0
    masks = np.arange(full)
    popcount = np.bitwise_count(masks)
    for size in range(2, n + 1):
        layer = masks[popcount == size]
        for k in range(n):
            ms = layer[(layer >> k) & 1 == 1]
            prev = ms ^ (1 << k)
            cand = cost[prev] + D[:, k]
            pick = cand.argmin(axis=1)
            cost[ms, k] = cand[np.arange(ms.size), pick]
            back[ms, k] = pick
    last = int(np.argmin(cost[full - 1]))
    weight = int(cost[full - 1, last])
    order = [last]
    mask = full - 1
    while True:
        prev = int(back[mask, order[-1]])
        if prev < 0:
            break
        mask ^= 1 << order[-1]
        order.append(prev)
    return np.asarray(order[::-1], dtype=np.int64), weight
