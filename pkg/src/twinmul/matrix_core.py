"""Bit-packed binary matrices and the small numeric helpers shared by the engines.

Rows are packed into little-endian 64-bit words: column ``j`` lives in word
``j // 64`` at bit ``j % 64``. Padding bits past ``n_cols`` are always zero,
so popcounts never need masking.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

WORD_BITS = 64


class DimensionError(ValueError):
    """Operand shapes do not agree."""


def _n_words(n_cols: int) -> int:
    return (n_cols + WORD_BITS - 1) // WORD_BITS


def _pack_rows(dense: np.ndarray) -> np.ndarray:
    n_rows, n_cols = dense.shape
    n_words = _n_words(n_cols)
    padded = np.zeros((n_rows, n_words * WORD_BITS), dtype=np.uint8)
    padded[:, :n_cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64).reshape(n_rows, n_words)


class BitMatrix:
    """Immutable binary matrix stored one bit per entry.

    Build one with :meth:`from_dense`, :meth:`zeros` or :meth:`from_rows`;
    the word array is read-only once constructed.
    """

    __slots__ = ("n_rows", "n_cols", "words")

    def __init__(self, n_rows: int, n_cols: int, words: np.ndarray):
        if n_rows < 0 or n_cols < 0:
            raise DimensionError(f"negative shape ({n_rows}, {n_cols})")
        words = np.asarray(words, dtype=np.uint64)
        if words.shape != (n_rows, _n_words(n_cols)):
            raise DimensionError(
                f"word array has shape {words.shape}, expected {(n_rows, _n_words(n_cols))}"
            )
        tail = n_cols % WORD_BITS
        if tail and n_rows and np.any(words[:, -1] >> np.uint64(tail)):
            raise ValueError("padding bits beyond n_cols must be zero")
        words = words.copy()
        words.flags.writeable = False
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.words = words

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        arr = np.asarray(dense)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise DimensionError(f"expected a 2-D array, got shape {arr.shape}")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("entries must be 0 or 1")
        arr = arr.astype(np.uint8)
        return cls(arr.shape[0], arr.shape[1], _pack_rows(arr))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], n_cols: int | None = None) -> "BitMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls.zeros(0, n_cols or 0)
        return cls.from_dense(np.array(rows, dtype=np.uint8).reshape(len(rows), -1))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(n_rows, n_cols, np.zeros((n_rows, _n_words(n_cols)), dtype=np.uint64))

    @classmethod
    def ones(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls.from_dense(np.ones((n_rows, n_cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    @property
    def n_words(self) -> int:
        return self.words.shape[1]

    def to_dense(self, dtype=np.uint8) -> np.ndarray:
        """Unpack into a ``(n_rows, n_cols)`` array of 0/1 values."""
        if self.n_rows == 0 or self.n_cols == 0:
            return np.zeros((self.n_rows, self.n_cols), dtype=dtype)
        raw = np.ascontiguousarray(self.words.astype("<u8")).view(np.uint8)
        bits = np.unpackbits(raw.reshape(self.n_rows, -1), axis=1, bitorder="little")
        return bits[:, : self.n_cols].astype(dtype, copy=False)

    def row(self, i: int) -> np.ndarray:
        return self.words[i]

    def count_ones(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(f"position ({i}, {j}) outside {self.shape}")
        return int((self.words[i, j // WORD_BITS] >> np.uint64(j % WORD_BITS)) & np.uint64(1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.words, other.words))

    def __hash__(self) -> int:
        return hash((self.n_rows, self.n_cols, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.n_rows}x{self.n_cols}, ones={self.count_ones()})"

    @property
    def T(self) -> "BitMatrix":
        return transpose(self)


def hamming_distance(a, b) -> int:
    """Number of positions where two packed rows differ (XOR + popcount)."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    if a.shape != b.shape:
        raise DimensionError(f"row lengths differ: {a.shape} vs {b.shape}")
    return int(np.bitwise_count(a ^ b).sum())


def hamming_to_all(M: BitMatrix, i: int) -> np.ndarray:
    """Distances from row ``i`` to every row of ``M``."""
    return np.bitwise_count(M.words ^ M.words[i]).sum(axis=1, dtype=np.int64)


def pack_bits(bits) -> np.ndarray:
    """Pack a 1-D 0/1 sequence into a word row, the format ``hamming_distance`` takes."""
    bits = np.asarray(bits, dtype=np.uint8).reshape(1, -1)
    return _pack_rows(bits)[0]


def prefix_sum(v) -> np.ndarray:
    """Running sums ``out[k] = v[0] + ... + v[k]``; integer input stays exact."""
    v = np.asarray(v)
    return np.cumsum(v, dtype=v.dtype if v.size else None)


def diff(x) -> np.ndarray:
    """Neighbour differences ``y[0] = x[0]``, ``y[i] = x[i] - x[i-1]``."""
    x = np.asarray(x)
    if x.size == 0:
        return x.copy()
    return np.concatenate((x[:1], x[1:] - x[:-1]))


def from_difference_representation(y) -> np.ndarray:
    """Recover a vector from its neighbour-difference form; same map as prefix_sum."""
    return prefix_sum(y)


def _check_permutation(pi, n: int) -> np.ndarray:
    pi = np.asarray(pi, dtype=np.int64)
    if pi.shape != (n,):
        raise DimensionError(f"permutation has length {pi.size}, expected {n}")
    if n and not np.array_equal(np.sort(pi), np.arange(n)):
        raise ValueError("not a permutation of range(n)")
    return pi


def row_hamming_sum(M: BitMatrix, pi=None) -> int:
    """Sum of Hamming distances between consecutive rows in the order ``pi``.

    ``pi`` defaults to the identity order.
    """
    if pi is None:
        pi = np.arange(M.n_rows)
    pi = _check_permutation(pi, M.n_rows)
    if M.n_rows <= 1:
        return 0
    w = M.words[pi]
    return int(np.bitwise_count(w[1:] ^ w[:-1]).sum())


def column_hamming_sum(M: BitMatrix, pi=None) -> int:
    return row_hamming_sum(transpose(M), pi)


def transpose(M: BitMatrix) -> BitMatrix:
    return BitMatrix.from_dense(M.to_dense().T)


def flip_entries(M: BitMatrix, positions) -> BitMatrix:
    """Copy of ``M`` with each listed ``(row, col)`` toggled, in list order."""
    words = M.words.copy()
    for i, j in positions:
        if not (0 <= i < M.n_rows and 0 <= j < M.n_cols):
            raise IndexError(f"position ({i}, {j}) outside {M.shape}")
        words[i, j // WORD_BITS] ^= np.uint64(1) << np.uint64(j % WORD_BITS)
    return BitMatrix(M.n_rows, M.n_cols, words)


def permute(M: BitMatrix, row_order=None, col_order=None) -> BitMatrix:
    """Reorder rows and/or columns: ``out[i, j] = M[row_order[i], col_order[j]]``."""
    dense = M.to_dense()
    if row_order is not None:
        dense = dense[_check_permutation(row_order, M.n_rows)]
    if col_order is not None:
        dense = dense[:, _check_permutation(col_order, M.n_cols)]
    return BitMatrix.from_dense(dense)
