"""Products with a matrix given by a disjoint rectangle decomposition.

For ``x = M v`` every rectangle adds the sum of ``v`` over its column span to
each result entry in its row span. With ``u`` the prefix sums of ``v`` that
sum is one subtraction, and the row-span update is two writes into the
difference form ``y`` of the result; a final prefix sum turns ``y`` into
``x``. The cost is ``O(n_rows + n_cols + k)`` for ``k`` rectangles.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .matrix_core import BitMatrix, DimensionError
from .rect_decomp import RectDecomposition, decompose, validate


@dataclass
class OpCounter:
    """Tally of scalar additions and subtractions performed by a product."""

    adds: int = 0
    subs: int = 0

    @property
    def total(self) -> int:
        return self.adds + self.subs

    def reset(self) -> None:
        self.adds = self.subs = 0


def _as_vector(v, n: int, what: str) -> np.ndarray:
    v = np.asarray(v)
    if v.ndim != 1 or v.shape[0] != n:
        raise DimensionError(f"{what}: vector has shape {v.shape}, expected ({n},)")
    if v.dtype == bool:
        v = v.astype(np.int64)
    return v


def _sentinel_prefix(v: np.ndarray) -> np.ndarray:
    """Prefix sums with a leading zero slot standing in for ``u_0``."""
    u = np.zeros((v.shape[0] + 1,) + v.shape[1:], dtype=v.dtype)
    np.cumsum(v, axis=0, out=u[1:])
    return u


def _scatter(bounds: np.ndarray, n_out: int, u: np.ndarray, r_lo, r_hi, c_lo, c_hi) -> np.ndarray:
    q = u[bounds[:, c_hi] + 1] - u[bounds[:, c_lo]]
    # one spare slot absorbs the subtraction for spans that end on the last index
    y = np.zeros((n_out + 1,) + u.shape[1:], dtype=u.dtype)
    np.add.at(y, bounds[:, r_lo], q)
    np.subtract.at(y, bounds[:, r_hi] + 1, q)
    return np.cumsum(y[:-1], axis=0)


def _count_ops(bounds, n_in, n_out, r_hi, counter: OpCounter | None) -> None:
    if counter is None:
        return
    k = bounds.shape[0]
    counter.adds += max(n_in - 1, 0) + k + max(n_out - 1, 0)
    counter.subs += k + int((bounds[:, r_hi] < n_out - 1).sum())


def mv(D: RectDecomposition, v, counter: OpCounter | None = None) -> np.ndarray:
    """``M @ v`` for the matrix ``M`` that ``D`` decomposes.

    If ``counter`` is given it is charged with the additions and subtractions
    the scalar algorithm performs (prefix sums, one subtraction per rectangle
    for its span sum, one addition at its first row and one subtraction past
    its last row unless that row is the final one).
    """
    v = _as_vector(v, D.n_cols, "mv")
    _count_ops(D.bounds, D.n_cols, D.n_rows, 1, counter)
    if D.n_rows == 0:
        return np.zeros(0, dtype=v.dtype)
    return _scatter(D.bounds, D.n_rows, _sentinel_prefix(v), 0, 1, 2, 3)


def vt_m(D: RectDecomposition, v, counter: OpCounter | None = None) -> np.ndarray:
    """``v^T M``: the same scheme with rows and columns of each rectangle swapped."""
    v = _as_vector(v, D.n_rows, "vt_m")
    _count_ops(D.bounds, D.n_rows, D.n_cols, 3, counter)
    if D.n_cols == 0:
        return np.zeros(0, dtype=v.dtype)
    return _scatter(D.bounds, D.n_cols, _sentinel_prefix(v), 2, 3, 0, 1)


def matmul(D: RectDecomposition, B) -> np.ndarray:
    """``M @ B``, every column of ``B`` handled by the vector product at once."""
    B = np.asarray(B)
    if B.ndim != 2 or B.shape[0] != D.n_cols:
        raise DimensionError(f"matmul: right operand has shape {B.shape}, expected ({D.n_cols}, k)")
    if B.dtype == bool:
        B = B.astype(np.int64)
    if D.n_rows == 0:
        return np.zeros((0, B.shape[1]), dtype=B.dtype)
    return _scatter(D.bounds, D.n_rows, _sentinel_prefix(B), 0, 1, 2, 3)


def mv_reference(D: RectDecomposition, v, counter: OpCounter | None = None) -> list:
    """Scalar, rectangle-at-a-time version of :func:`mv` with 1-based bookkeeping.

    Kept deliberately literal; used to cross-check the vectorised path and the
    operation tally.
    """
    v = list(_as_vector(v, D.n_cols, "mv_reference"))
    n = D.n_rows
    c = counter if counter is not None else OpCounter()
    u = [0] * (D.n_cols + 1)
    if D.n_cols:
        u[1] = v[0]
    for k in range(2, D.n_cols + 1):
        u[k] = u[k - 1] + v[k - 1]
        c.adds += 1
    y = [0] * (n + 1)  # 1-based
    for r0, r1, c0, c1 in D.bounds.tolist():
        a, b, top, bottom = c0 + 1, c1 + 1, r0 + 1, r1 + 1
        q = u[b] - u[a - 1]
        c.subs += 1
        y[top] += q
        c.adds += 1
        if bottom < n:
            y[bottom + 1] -= q
            c.subs += 1
    x = []
    acc = 0
    for i in range(1, n + 1):
        if i == 1:
            acc = y[1]
        else:
            acc = acc + y[i]
            c.adds += 1
        x.append(acc)
    return x


@dataclass(frozen=True)
class RectProduct:
    """A preprocessed matrix ready for repeated products."""

    decomposition: RectDecomposition
    shape: tuple[int, int] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "shape", (self.decomposition.n_rows, self.decomposition.n_cols))

    def __len__(self) -> int:
        return len(self.decomposition)

    def mv(self, v, counter: OpCounter | None = None) -> np.ndarray:
        return mv(self.decomposition, v, counter)

    def vt_m(self, v, counter: OpCounter | None = None) -> np.ndarray:
        return vt_m(self.decomposition, v, counter)

    def matmul(self, B) -> np.ndarray:
        return matmul(self.decomposition, B)

    def __matmul__(self, other):
        other = np.asarray(other)
        return self.mv(other) if other.ndim == 1 else self.matmul(other)


class InvariantError(RuntimeError):
    """An internal consistency check failed."""


def preprocess_and_wrap(M: BitMatrix) -> RectProduct:
    D = decompose(M)
    report = validate(D, M)
    if not report:
        raise InvariantError(f"decomposition failed validation: {report.message}")
    return RectProduct(D)
