"""Products that walk the rows in a low-Hamming-sum order.

Consecutive rows in a good order differ in few positions, so ``(M v)_i`` can
be obtained from the previous row's value by adding or subtracting the
entries of ``v`` at the flipped positions. The order comes from the standard
MST doubling argument: a preorder walk of a minimum spanning tree of the rows
under Hamming distance costs at most twice the best Hamiltonian path.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrix_core import BitMatrix, DimensionError, hamming_to_all, row_hamming_sum, transpose
from .rect_engine import OpCounter


@dataclass(frozen=True)
class HammingPlan:
    """Row order plus the first row and the flips between neighbours.

    ``delta_cols``/``delta_signs`` hold every flip back to back; the flips
    taking row ``order[i-1]`` to row ``order[i]`` sit in
    ``delta_ptr[i-1]:delta_ptr[i]``. A sign is ``+1`` for a 0->1 change and
    ``-1`` for 1->0.
    """

    n_rows: int
    n_cols: int
    order: np.ndarray
    base_row: np.ndarray  # column indices of the ones in row order[0]
    delta_ptr: np.ndarray
    delta_cols: np.ndarray
    delta_signs: np.ndarray

    @property
    def total_weight(self) -> int:
        return int(self.delta_cols.size)

    def deltas(self) -> list[list[tuple[int, int]]]:
        """Flip lists per step as ``(column, sign)`` pairs."""
        out = []
        for s in range(len(self.delta_ptr) - 1):
            lo, hi = self.delta_ptr[s], self.delta_ptr[s + 1]
            out.append(list(zip(self.delta_cols[lo:hi].tolist(), self.delta_signs[lo:hi].tolist())))
        return out

    def replay(self) -> BitMatrix:
        """Rebuild the source matrix from the base row and the flips."""
        dense = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        if self.n_rows == 0:
            return BitMatrix.from_dense(dense)
        row = np.zeros(self.n_cols, dtype=np.uint8)
        row[self.base_row] = 1
        dense[self.order[0]] = row
        for s, step in enumerate(self.deltas(), start=1):
            for col, sign in step:
                row[col] = 1 if sign > 0 else 0
            dense[self.order[s]] = row
        return BitMatrix.from_dense(dense)


def mst_edges(M: BitMatrix) -> tuple[np.ndarray, np.ndarray]:
    """Prim's algorithm on the complete Hamming graph of the rows, rooted at row 0.

    Returns ``(parent, weight)``; ``parent[0] == -1``. Ties in the frontier go
    to the smaller row index and a key only moves on a strict improvement.
    """
    n = M.n_rows
    parent = np.full(n, -1, dtype=np.int64)
    weight = np.zeros(n, dtype=np.int64)
    if n == 0:
        return parent, weight
    big = np.iinfo(np.int64).max
    key = np.full(n, big, dtype=np.int64)
    in_tree = np.zeros(n, dtype=bool)
    key[0] = 0
    for _ in range(n):
        cand = np.where(in_tree, big, key)
        u = int(np.argmin(cand))
        in_tree[u] = True
        weight[u] = key[u]
        dist = hamming_to_all(M, u)
        better = (~in_tree) & (dist < key)
        key[better] = dist[better]
        parent[better] = u
    weight[0] = 0
    return parent, weight


def mst_order(M: BitMatrix) -> np.ndarray:
    """Depth-first preorder of the row MST; children by edge weight, then index."""
    n = M.n_rows
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    parent, weight = mst_edges(M)
    children: list[list[int]] = [[] for _ in range(n)]
    for v in sorted(range(1, n), key=lambda v: (weight[v], v)):
        children[parent[v]].append(v)
    order = []
    stack = [0]
    while stack:
        u = stack.pop()
        order.append(u)
        stack.extend(reversed(children[u]))
    return np.asarray(order, dtype=np.int64)


def build_plan(M: BitMatrix, pi=None) -> HammingPlan:
    """Difference representation of ``M`` along ``pi`` (default: :func:`mst_order`)."""
    if pi is None:
        pi = mst_order(M)
    pi = np.asarray(pi, dtype=np.int64)
    if pi.shape != (M.n_rows,) or (M.n_rows and not np.array_equal(np.sort(pi), np.arange(M.n_rows))):
        raise DimensionError(f"order must be a permutation of range({M.n_rows})")
    dense = M.to_dense(np.int8)[pi]
    if M.n_rows == 0:
        empty = np.zeros(0, dtype=np.int64)
        return HammingPlan(0, M.n_cols, pi, empty, np.zeros(1, dtype=np.int64), empty, empty.astype(np.int8))
    base = np.flatnonzero(dense[0])
    change = dense[1:] - dense[:-1]
    steps, cols = np.nonzero(change)  # row-major, so columns ascend within each step
    signs = change[steps, cols].astype(np.int8)
    ptr = np.zeros(M.n_rows, dtype=np.int64)
    np.cumsum(np.bincount(steps, minlength=M.n_rows - 1), out=ptr[1:])
    return HammingPlan(M.n_rows, M.n_cols, pi, base, ptr, cols.astype(np.int64), signs)


def mv(plan: HammingPlan, v, counter: OpCounter | None = None) -> np.ndarray:
    """``M @ v`` from a plan, one scalar update per flip.

    The optional counter is charged ``|base_row| - 1`` additions for the first
    row plus one addition or subtraction per flip.
    """
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != plan.n_cols:
        raise DimensionError(f"mv: vector has shape {v.shape}, expected ({plan.n_cols},)")
    if v.dtype == bool:
        v = v.astype(np.int64)
    return _walk(plan, v, counter)


def _walk(plan: HammingPlan, v: np.ndarray, counter: OpCounter | None) -> np.ndarray:
    out_shape = (plan.n_rows,) + v.shape[1:]
    x = np.zeros(out_shape, dtype=v.dtype)
    if plan.n_rows == 0:
        return x
    if counter is not None:
        counter.adds += max(plan.base_row.size - 1, 0)
        counter.adds += int((plan.delta_signs > 0).sum())
        counter.subs += int((plan.delta_signs < 0).sum())
    start = v[plan.base_row].sum(axis=0, dtype=v.dtype)
    signs = plan.delta_signs.reshape((-1,) + (1,) * (v.ndim - 1))
    contrib = np.where(signs > 0, v[plan.delta_cols], -v[plan.delta_cols])
    running = np.zeros((contrib.shape[0] + 1,) + v.shape[1:], dtype=v.dtype)
    np.cumsum(contrib, axis=0, out=running[1:])
    # value after step s is start + (all flips up to the end of step s)
    x[plan.order] = start + running[plan.delta_ptr]
    return x


def mv_reference(plan: HammingPlan, v, counter: OpCounter | None = None) -> list:
    """Scalar loop over the flips; reference for :func:`mv` and its tally."""
    v = list(np.asarray(v))
    c = counter if counter is not None else OpCounter()
    x = [0] * plan.n_rows
    if plan.n_rows == 0:
        return x
    s = 0
    for k, j in enumerate(plan.base_row.tolist()):
        if k == 0:
            s = v[j]
        else:
            s = s + v[j]
            c.adds += 1
    x[plan.order[0]] = s
    for step, flips in enumerate(plan.deltas(), start=1):
        for col, sign in flips:
            if sign > 0:
                s = s + v[col]
                c.adds += 1
            else:
                s = s - v[col]
                c.subs += 1
        x[plan.order[step]] = s
    return x


def matmul(M: BitMatrix, B, plan: HammingPlan | None = None) -> np.ndarray:
    """``M @ B`` with a single plan shared by every column of ``B``."""
    B = np.asarray(B)
    if B.ndim != 2 or B.shape[0] != M.n_cols:
        raise DimensionError(f"matmul: right operand has shape {B.shape}, expected ({M.n_cols}, k)")
    if B.dtype == bool:
        B = B.astype(np.int64)
    if plan is None:
        plan = build_plan(M)
    return _walk(plan, B, None)


def build_column_plan(M: BitMatrix, pi=None) -> HammingPlan:
    """Plan over the columns of ``M`` (rows of its transpose), for ``v^T M``."""
    return build_plan(transpose(M), pi)


def vt_m(M: BitMatrix, v, plan: HammingPlan | None = None) -> np.ndarray:
    """``v^T M`` by walking the columns in a low column-Hamming-sum order."""
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != M.n_rows:
        raise DimensionError(f"vt_m: vector has shape {v.shape}, expected ({M.n_rows},)")
    if plan is None:
        plan = build_column_plan(M)
    return mv(plan, v)


def coherence_upper_bound(M: BitMatrix) -> int:
    """Row-Hamming-sum of the MST order; at most twice the optimum."""
    if M.n_rows == 0:
        return 0
    return row_hamming_sum(M, mst_order(M))


class HammingProduct:
    """Row and column plans for one matrix, built once and reused."""

    def __init__(self, M: BitMatrix, row_order=None, col_order=None):
        self.shape = M.shape
        self.row_plan = build_plan(M, row_order)
        self._matrix = M
        self._col_order = col_order
        self._col_plan: HammingPlan | None = None

    @property
    def col_plan(self) -> HammingPlan:
        if self._col_plan is None:
            self._col_plan = build_column_plan(self._matrix, self._col_order)
        return self._col_plan

    def mv(self, v, counter: OpCounter | None = None) -> np.ndarray:
        return mv(self.row_plan, v, counter)

    def vt_m(self, v, counter: OpCounter | None = None) -> np.ndarray:
        return mv(self.col_plan, v, counter)

    def matmul(self, B) -> np.ndarray:
        return matmul(self._matrix, B, self.row_plan)
