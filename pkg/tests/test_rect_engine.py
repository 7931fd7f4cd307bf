import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from corpus import BLOCK8_ROWS, full_corpus
from twinmul import BitMatrix, DimensionError, decompose, gen_block_example, preprocess_and_wrap
from twinmul.oracle import naive_matmul, naive_mv, naive_vt_m
from twinmul.rect_engine import OpCounter, matmul, mv, mv_reference, vt_m


def matrices_with_vectors():
    shapes = st.tuples(st.integers(1, 10), st.integers(1, 10))

    def build(s):
        return st.tuples(
            arrays(np.uint8, s, elements=st.integers(0, 1)),
            arrays(np.int64, s[1], elements=st.integers(-100, 100)),
            arrays(np.int64, s[0], elements=st.integers(-100, 100)),
        )

    return shapes.flatmap(build)


@settings(max_examples=300)
@given(matrices_with_vectors())
def test_products_match_naive(data):
    dense, v, w = data
    M = BitMatrix.from_dense(dense)
    D = decompose(M)
    assert np.array_equal(mv(D, v), naive_mv(M, v))
    assert np.array_equal(vt_m(D, w), naive_vt_m(M, w))
    assert mv_reference(D, v) == naive_mv(M, v).tolist()


@settings(max_examples=100)
@given(matrices_with_vectors(), st.integers(1, 4))
def test_matmul_matches_naive(data, k):
    dense, v, _ = data
    M = BitMatrix.from_dense(dense)
    B = np.stack([np.roll(v, s) * (s + 1) for s in range(k)], axis=1)
    assert np.array_equal(matmul(decompose(M), B), naive_matmul(M, B))


def test_block_example_golden():
    M = gen_block_example(8)
    assert [''.join(map(str, r)) for r in M.to_dense()] == BLOCK8_ROWS
    ones = np.ones(8, dtype=np.int64)
    handle = preprocess_and_wrap(M)
    assert handle.mv(ones).tolist() == [2, 6, 2, 6, 2, 6, 2, 6]
    assert handle.vt_m(ones).tolist() == [2, 6, 2, 6, 2, 6, 2, 6]
    assert (handle @ ones).tolist() == [2, 6, 2, 6, 2, 6, 2, 6]


def test_counter_matches_scalar_reference():
    rng = np.random.default_rng(5)
    for _, M in full_corpus()[:40]:
        D = decompose(M)
        v = rng.integers(-100, 101, M.n_cols)
        fast, slow = OpCounter(), OpCounter()
        mv(D, v, fast)
        mv_reference(D, v, slow)
        assert (fast.adds, fast.subs) == (slow.adds, slow.subs)
        n = max(M.shape)
        assert fast.total <= 3 * len(D) + 2 * n - 2


def test_counter_formula_small():
    # two rectangles, one ending on the last row
    M = BitMatrix.from_rows([[1, 0], [1, 1]])
    c = OpCounter()
    mv(decompose(M), [1, 1], c)
    # prefix: 1, span sums: 2, first-row adds: 2, past-end subtraction: 0, final prefix: 1
    assert (c.adds, c.subs) == (1 + 2 + 1, 2)
    c.reset()
    assert c.total == 0


def test_float_vectors_close_to_naive():
    rng = np.random.default_rng(1)
    M = BitMatrix.from_dense(rng.integers(0, 2, (30, 40), dtype=np.uint8))
    v = rng.standard_normal(40)
    np.testing.assert_allclose(mv(decompose(M), v), M.to_dense(float) @ v, rtol=1e-12, atol=1e-12)


def test_bool_vector_is_promoted():
    M = BitMatrix.ones(2, 3)
    assert mv(decompose(M), np.array([True, True, False])).tolist() == [2, 2]


def test_dimension_errors():
    D = decompose(BitMatrix.ones(2, 3))
    with pytest.raises(DimensionError):
        mv(D, [1, 2])
    with pytest.raises(DimensionError):
        vt_m(D, [1, 2, 3])
    with pytest.raises(DimensionError):
        matmul(D, np.ones((2, 2)))


def test_zero_vector_and_empty_matrix():
    D = decompose(BitMatrix.zeros(3, 3))
    assert mv(D, [5, 6, 7]).tolist() == [0, 0, 0]
    assert mv(decompose(BitMatrix.ones(0, 2)), [1, 1]).shape == (0,)
