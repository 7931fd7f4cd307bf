import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.sparse.csgraph import minimum_spanning_tree

from corpus import full_corpus
from twinmul import BitMatrix, DimensionError, build_plan, coherence_upper_bound, gen_block_example, gen_theorem4
from twinmul import mst_order, row_hamming_sum
from twinmul.hamming_engine import HammingProduct, matmul, mst_edges, mv, mv_reference, vt_m
from twinmul.oracle import hamming_distance_matrix, naive_matmul, naive_mv, naive_vt_m, optimal_row_ordering
from twinmul.rect_engine import OpCounter


def bits(max_rows=10, max_cols=12):
    shapes = st.tuples(st.integers(1, max_rows), st.integers(1, max_cols))
    return shapes.flatmap(lambda s: arrays(np.uint8, s, elements=st.integers(0, 1)))


@given(bits())
def test_mst_weight_matches_scipy(dense):
    M = BitMatrix.from_dense(dense)
    _, w = mst_edges(M)
    # scipy reads a zero as "no edge", so shift every off-diagonal weight by one
    shifted = hamming_distance_matrix(M) + 1 - np.eye(M.n_rows, dtype=np.int64)
    assert int(w.sum()) == int(minimum_spanning_tree(shifted).sum()) - (M.n_rows - 1)


@given(bits())
def test_mst_order_is_permutation_and_bounded(dense):
    M = BitMatrix.from_dense(dense)
    pi = mst_order(M)
    assert sorted(pi.tolist()) == list(range(M.n_rows))
    assert pi[0] == 0
    _, w = mst_edges(M)
    # shortcutting a doubled tree walk never costs more than twice the tree
    assert row_hamming_sum(M, pi) <= 2 * int(w.sum())


@settings(max_examples=60)
@given(bits(max_rows=8))
def test_mst_order_within_twice_optimum(dense):
    M = BitMatrix.from_dense(dense)
    _, best = optimal_row_ordering(M)
    assert coherence_upper_bound(M) <= 2 * best


def test_prim_tie_break():
    # rows 1 and 2 are both at distance 1 from row 0; row 1 joins first
    M = BitMatrix.from_rows([[0, 0], [1, 0], [0, 1]])
    parent, weight = mst_edges(M)
    assert parent.tolist() == [-1, 0, 0] and weight.tolist() == [0, 1, 1]
    assert mst_order(M).tolist() == [0, 1, 2]


@given(bits())
def test_plan_replays_matrix(dense):
    M = BitMatrix.from_dense(dense)
    plan = build_plan(M)
    assert plan.replay() == M
    assert plan.total_weight == row_hamming_sum(M, plan.order)


@settings(max_examples=200)
@given(bits(), st.data())
def test_products_match_naive(dense, data):
    M = BitMatrix.from_dense(dense)
    v = np.array(data.draw(st.lists(st.integers(-100, 100), min_size=M.n_cols, max_size=M.n_cols)), dtype=np.int64)
    w = np.array(data.draw(st.lists(st.integers(-100, 100), min_size=M.n_rows, max_size=M.n_rows)), dtype=np.int64)
    plan = build_plan(M)
    assert np.array_equal(mv(plan, v), naive_mv(M, v))
    assert mv_reference(plan, v) == naive_mv(M, v).tolist()
    assert np.array_equal(vt_m(M, w), naive_vt_m(M, w))
    B = np.stack([v, -v, 2 * v], axis=1)
    assert np.array_equal(matmul(M, B), naive_matmul(M, B))


def test_identity_order_plan():
    M = gen_theorem4(1)
    plan = build_plan(M, np.arange(6))
    assert plan.total_weight == 14
    v = np.arange(6)
    assert np.array_equal(mv(plan, v), naive_mv(M, v))


def test_counter_bound_on_corpus():
    rng = np.random.default_rng(2)
    for _, M in full_corpus():
        plan = build_plan(M)
        v = rng.integers(-100, 101, M.n_cols)
        fast, slow = OpCounter(), OpCounter()
        mv(plan, v, fast)
        mv_reference(plan, v, slow)
        assert (fast.adds, fast.subs) == (slow.adds, slow.subs)
        assert fast.total <= M.n_rows + M.n_cols + plan.total_weight


def test_handle():
    M = gen_block_example(8)
    h = HammingProduct(M)
    ones = np.ones(8, dtype=np.int64)
    assert h.mv(ones).tolist() == [2, 6] * 4
    assert h.vt_m(ones).tolist() == [2, 6] * 4
    assert np.array_equal(h.matmul(np.eye(8, dtype=np.int64)), M.to_dense(np.int64))


def test_bad_order_rejected():
    with pytest.raises(DimensionError):
        build_plan(BitMatrix.identity(3), [0, 1, 1])


def test_dimension_error():
    with pytest.raises(DimensionError):
        mv(build_plan(BitMatrix.identity(3)), [1, 2])
