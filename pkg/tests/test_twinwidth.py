from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from twinmul import BitMatrix, build_theorem4_sequence, corner_count, gen_block_example, gen_chessboard
from twinmul import gen_random_twin_ordered, gen_theorem4, is_mixed, max_wideness, mixed_free_check, verify_wideness
from twinmul.twinwidth import Axis, CapacityError, Division, MergeOp, MergeSequence, StructureError
from twinmul.twinwidth import grid_free_check, is_horizontal, is_vertical


def brute_wideness(M, seq):
    dense = M.to_dense()
    best = 0
    for div in seq.divisions():
        grid = np.array([[len(np.unique(dense[a : b + 1, c : e + 1])) > 1 for c, e in div.col_intervals]
                         for a, b in div.row_intervals])
        best = max(best, int(grid.sum(axis=1).max()), int(grid.sum(axis=0).max()))
    return best


def random_sequence(n, draw):
    ops, rows, cols = [], n, n
    while rows > 1 or cols > 1:
        ax = draw(st.sampled_from([a for a, k in ((Axis.ROW, rows), (Axis.COL, cols)) if k > 1]))
        k = rows if ax is Axis.ROW else cols
        ops.append(MergeOp(ax, draw(st.integers(0, k - 2))))
        if ax is Axis.ROW:
            rows -= 1
        else:
            cols -= 1
    return MergeSequence(n, tuple(ops))


@settings(max_examples=150)
@given(st.integers(1, 7).flatmap(lambda n: arrays(np.uint8, (n, n), elements=st.integers(0, 1))), st.data())
def test_max_wideness_against_brute_force(dense, data):
    M = BitMatrix.from_dense(dense)
    seq = random_sequence(M.n_rows, data.draw)
    w = max_wideness(M, seq)
    assert w == brute_wideness(M, seq)
    assert w == max(d.wideness(M) for d in seq.divisions())


@pytest.mark.parametrize("i,expect", [(0, 2), (1, 3), (2, 3), (3, 3)])
def test_theorem4_wideness(i, expect):
    M, seq = gen_theorem4(i), build_theorem4_sequence(i)
    assert len(seq) == 2 * M.n_rows - 2
    assert max_wideness(M, seq) == expect
    assert verify_wideness(M, seq, 3)


def test_theorem4_sequence_level1_matches_brute():
    assert brute_wideness(gen_theorem4(1), build_theorem4_sequence(1)) == 3


def test_constant_matrix_has_width_zero():
    seq = build_theorem4_sequence(1)
    assert verify_wideness(BitMatrix.ones(6, 6), seq, 0)
    assert verify_wideness(BitMatrix.zeros(6, 6), seq, 0)


def test_structure_errors():
    with pytest.raises(StructureError):
        max_wideness(BitMatrix.ones(3, 3), build_theorem4_sequence(0))
    bad = MergeSequence(2, (MergeOp(Axis.ROW, 1), MergeOp(Axis.COL, 0)))
    with pytest.raises(StructureError) as exc:
        max_wideness(BitMatrix.ones(2, 2), bad)
    assert exc.value.op_index == 0
    with pytest.raises(StructureError):
        max_wideness(BitMatrix.ones(2, 2), MergeSequence(2, (MergeOp(Axis.ROW, 0),)))


def test_division_validate():
    Division(((0, 1), (2, 2)), ((0, 2),)).validate(3, 3)
    with pytest.raises(StructureError):
        Division(((0, 0), (2, 2)), ((0, 2),)).validate(3, 3)
    with pytest.raises(StructureError):
        Division(((0, 1),), ((0, 2),)).validate(3, 3)


def test_horizontal_vertical_mixed():
    assert is_horizontal(np.array([[1, 0], [1, 0]])) and not is_vertical(np.array([[1, 0], [1, 0]]))
    assert is_vertical(np.array([[1, 1], [0, 0]]))
    assert is_mixed(BitMatrix.from_rows([[1, 0], [1, 1]]), (0, 1, 0, 1))
    assert not is_mixed(BitMatrix.ones(3, 3), (0, 2, 0, 2))
    with pytest.raises(IndexError):
        is_mixed(BitMatrix.ones(2, 2), (0, 2, 0, 1))


@settings(max_examples=200)
@given(st.tuples(st.integers(1, 6), st.integers(1, 6)).flatmap(lambda s: arrays(np.uint8, s, elements=st.integers(0, 1))))
def test_mixed_iff_contains_corner(dense):
    M = BitMatrix.from_dense(dense)
    whole = (0, M.n_rows - 1, 0, M.n_cols - 1)
    assert is_mixed(M, whole) == (corner_count(M) > 0)


@pytest.mark.parametrize("n", [2, 5, 9])
def test_chessboard_corners(n):
    assert corner_count(gen_chessboard(n)) == (n - 1) ** 2


def brute_mixed_free(M, d):
    for rc in combinations(range(1, M.n_rows), d - 1):
        for cc in combinations(range(1, M.n_cols), d - 1):
            r, c = (0,) + rc + (M.n_rows,), (0,) + cc + (M.n_cols,)
            if all(is_mixed(M, (r[a], r[a + 1] - 1, c[b], c[b + 1] - 1)) for a in range(d) for b in range(d)):
                return False
    return True


@settings(max_examples=80)
@given(st.integers(2, 6).flatmap(lambda n: arrays(np.uint8, (n, n), elements=st.integers(0, 1))), st.integers(1, 3))
def test_mixed_free_against_brute_force(dense, d):
    M = BitMatrix.from_dense(dense)
    assert mixed_free_check(M, d) == brute_mixed_free(M, d)


def test_mixed_free_examples():
    assert mixed_free_check(gen_block_example(8), 2)
    assert not mixed_free_check(gen_chessboard(4), 2)
    assert mixed_free_check(BitMatrix.ones(5, 5), 1)


def test_mixed_free_budget():
    with pytest.raises(CapacityError):
        mixed_free_check(gen_chessboard(60), 5, budget=1000)


def test_grid_free():
    assert not grid_free_check(BitMatrix.identity(4), 1)
    # a 2-division of the identity always leaves one off-diagonal cell empty
    assert grid_free_check(BitMatrix.identity(4), 2)
    assert not grid_free_check(BitMatrix.ones(4, 4), 2)
    assert grid_free_check(BitMatrix.zeros(4, 4), 1)


def test_block_example_structure():
    M = gen_block_example(8)
    dense = M.to_dense()
    swapped = np.concatenate([dense[:, 4:], dense[:, :4]], axis=1)
    assert np.array_equal(dense.T, swapped)
    with pytest.raises(ValueError):
        gen_block_example(7)


@pytest.mark.parametrize("seed", range(5))
def test_twin_ordered_width_zero_budget(seed):
    inst = gen_random_twin_ordered(20, 0, seed)
    assert inst.measured_width == 0
    assert max_wideness(inst.matrix, inst.sequence) == 0
