"""Seeded matrix families.

Randomness comes from :class:`SplitMix64`, a counter-based 64-bit generator:
the k-th output for seed ``s`` is ``mix(s + (k + 1) * 0x9E3779B97F4A7C15)``
with the usual splitmix64 finaliser (shifts 30/27/31, multipliers
``0xBF58476D1CE4E5B9`` and ``0x94D049BB133111EB``), all arithmetic mod 2^64.
Output depends only on the seed, never on the platform or numpy version.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .matrix_core import BitMatrix
from .twinwidth import Axis, MergeOp, MergeSequence, gen_block_example, max_wideness

GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int = 0):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * MIX1) & _MASK
        z = ((z ^ (z >> 27)) * MIX2) & _MASK
        return z ^ (z >> 31)

    def u64_array(self, count: int) -> np.ndarray:
        """The next ``count`` outputs, computed in bulk."""
        k = np.arange(1, count + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self.state) + k * np.uint64(GOLDEN)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(MIX1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(MIX2)
        z = z ^ (z >> np.uint64(31))
        self.state = (self.state + count * GOLDEN) & _MASK
        return z

    def below(self, n: int) -> int:
        """Uniform integer in ``range(n)`` (multiply-shift; bias under 2^-32 for n < 2^32)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return (self.next_u64() * n) >> 64

    def uniform_array(self, count: int) -> np.ndarray:
        """Floats in [0, 1) with 53 random bits each."""
        return (self.u64_array(count) >> np.uint64(11)).astype(np.float64) * (1.0 / (1 << 53))

    def sample(self, population: int, k: int) -> list[int]:
        """``k`` distinct integers from ``range(population)`` (Floyd's method), in draw order."""
        if not 0 <= k <= population:
            raise ValueError(f"cannot draw {k} distinct values from {population}")
        chosen: dict[int, None] = {}
        for j in range(population - k, population):
            t = self.below(j + 1)
            chosen[j if t in chosen else t] = None
        return list(chosen)


def gen_theorem4(i: int, n: int | None = None) -> BitMatrix:
    """The recursive matrix ``M_i`` of size ``2*3^i``.

    ``M_0 = [[1, 0], [0, 1]]`` and ``M_i = [[M, 0, 1], [1, M, 0], [0, 1, M]]``
    with ``M = M_{i-1}`` and constant blocks of the same size. Passing ``n``
    pads with zeros to ``n x n``.
    """
    if i < 0:
        raise ValueError("level must be non-negative")
    size = 2 * 3**i
    if size > 2 * 3**9:
        raise OverflowError(f"M_{i} would be {size}x{size}")
    M = np.eye(2, dtype=np.uint8)
    for _ in range(i):
        Z, O = np.zeros_like(M), np.ones_like(M)
        M = np.block([[M, Z, O], [O, M, Z], [Z, O, M]])
    if n is not None:
        if n < size:
            raise ValueError(f"padding target {n} is smaller than {size}")
        M = np.pad(M, ((0, n - size), (0, n - size)))
    return BitMatrix.from_dense(M)


def gen_chessboard(n: int, n_cols: int | None = None) -> BitMatrix:
    m = n if n_cols is None else n_cols
    return BitMatrix.from_dense(np.add.outer(np.arange(n), np.arange(m)) % 2)


def gen_random_dense(n: int, density: float, seed: int = 0, n_cols: int | None = None) -> BitMatrix:
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    m = n if n_cols is None else n_cols
    u = SplitMix64(seed).uniform_array(n * m).reshape(n, m)
    return BitMatrix.from_dense((u < density).astype(np.uint8))


def gen_grid_sparse(n: int, d: int, seed: int = 0) -> BitMatrix:
    """Up to ``d * n`` isolated ones on even-even positions.

    No two ones share a 2x2 window, so the ones are pairwise non-adjacent.
    """
    slots = (n + 1) // 2
    k = min(d * n, slots * slots)
    picks = SplitMix64(seed).sample(slots * slots, k)
    dense = np.zeros((n, n), dtype=np.uint8)
    for p in picks:
        dense[2 * (p // slots), 2 * (p % slots)] = 1
    return BitMatrix.from_dense(dense)


def corrupt(M: BitMatrix, r: int, seed: int = 0) -> BitMatrix:
    """Flip ``r`` distinct positions chosen uniformly by the seeded generator."""
    total = M.n_rows * M.n_cols
    if not 0 <= r <= total:
        raise ValueError(f"cannot flip {r} of {total} entries")
    dense = M.to_dense().ravel().copy()
    idx = np.asarray(SplitMix64(seed).sample(total, r), dtype=np.int64)
    dense[idx] ^= 1
    return BitMatrix.from_dense(dense.reshape(M.shape))


@dataclass(frozen=True)
class TwinOrderedInstance:
    matrix: BitMatrix
    sequence: MergeSequence
    measured_width: int | None

    def __iter__(self):
        return iter((self.matrix, self.sequence, self.measured_width))


class _Node:
    __slots__ = ("children", "lo", "hi")

    def __init__(self):
        self.children: tuple[_Node, _Node] | None = None
        self.lo = self.hi = -1


def _assign_spans(roots: list[_Node], final: list[_Node]) -> None:
    for pos, leaf in enumerate(final):
        leaf.lo = leaf.hi = pos
    # children are always created after their parent, so reverse creation order is bottom-up
    for node in reversed(roots):
        if node.children is not None:
            a, b = node.children
            node.lo, node.hi = a.lo, b.hi


def gen_random_twin_ordered(n: int, d: int, seed: int = 0, measure: bool = True) -> TwinOrderedInstance:
    """Grow an ``n x n`` matrix by splitting rows and columns, then read the splits backwards.

    Starting from a random 1x1 matrix, ``n - 1`` row splits and ``n - 1``
    column splits are applied in random interleaved order. A split duplicates
    a random row (column) in place and flips up to ``d // 2`` random entries
    of the copy. Undoing the splits in reverse is a merge sequence; its width
    is measured with :func:`max_wideness` rather than promised.
    """
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    rng = SplitMix64(seed)
    max_flips = d // 2
    created: dict[Axis, list[_Node]] = {Axis.ROW: [], Axis.COL: []}
    current: dict[Axis, list[_Node]] = {}
    for ax in Axis:
        root = _Node()
        created[ax].append(root)
        current[ax] = [root]
    base = rng.below(2)
    flips: list[tuple[_Node, _Node]] = []  # (row node, column node) pairs toggled as blocks
    history: list[MergeOp] = []
    axes = [Axis.ROW] * (n - 1) + [Axis.COL] * (n - 1)
    # Fisher-Yates shuffle of the split axes
    for k in range(len(axes) - 1, 0, -1):
        j = rng.below(k + 1)
        axes[k], axes[j] = axes[j], axes[k]
    for ax in axes:
        other = Axis.COL if ax is Axis.ROW else Axis.ROW
        line = current[ax]
        p = rng.below(len(line))
        left, right = _Node(), _Node()
        line[p].children = (left, right)
        created[ax] += [left, right]
        line[p : p + 1] = [left, right]
        history.append(MergeOp(ax, p))
        k_flips = rng.below(max_flips + 1) if max_flips else 0
        k_flips = min(k_flips, len(current[other]))
        copy = right if rng.below(2) else left
        for q in rng.sample(len(current[other]), k_flips):
            target = current[other][q]
            flips.append((copy, target) if ax is Axis.ROW else (target, copy))
    for ax in Axis:
        _assign_spans(created[ax], current[ax])
    # each flip toggles the block of descendants, which is contiguous in the final order
    diffs = np.zeros((n + 1, n + 1), dtype=np.uint8)
    for rnode, cnode in flips:
        diffs[rnode.lo, cnode.lo] ^= 1
        diffs[rnode.hi + 1, cnode.lo] ^= 1
        diffs[rnode.lo, cnode.hi + 1] ^= 1
        diffs[rnode.hi + 1, cnode.hi + 1] ^= 1
    dense = np.bitwise_xor.accumulate(np.bitwise_xor.accumulate(diffs, axis=0), axis=1)[:n, :n]
    dense ^= base
    M = BitMatrix.from_dense(dense)
    seq = MergeSequence(n, tuple(reversed(history)))
    width = max_wideness(M, seq) if measure else None
    return TwinOrderedInstance(M, seq, width)


Family = Literal["theorem4", "chessboard", "block_example", "random_dense", "random_twin_ordered", "grid_sparse"]
FAMILIES = ("theorem4", "chessboard", "block_example", "random_dense", "random_twin_ordered", "grid_sparse")


@dataclass(frozen=True)
class GeneratorSpec:
    """Everything needed to rebuild one generated matrix.

    ``n`` is the side length, except for ``theorem4`` where ``i`` picks the
    level (and ``n``, if set, pads the result).
    """

    family: Family
    n: int | None = None
    i: int | None = None
    density: float = 0.5
    d: int = 2
    seed: int = 0

    def build(self) -> BitMatrix:
        f = self.family
        if f == "theorem4":
            if self.i is None:
                raise ValueError("theorem4 needs i")
            return gen_theorem4(self.i, self.n)
        if self.n is None:
            raise ValueError(f"{f} needs n")
        if f == "chessboard":
            return gen_chessboard(self.n)
        if f == "block_example":
            return gen_block_example(self.n)
        if f == "random_dense":
            return gen_random_dense(self.n, self.density, self.seed)
        if f == "random_twin_ordered":
            return gen_random_twin_ordered(self.n, self.d, self.seed, measure=False).matrix
        if f == "grid_sparse":
            return gen_grid_sparse(self.n, self.d, self.seed)
        raise ValueError(f"unknown family {f!r}")


def generate(spec: GeneratorSpec) -> BitMatrix:
    return spec.build()
