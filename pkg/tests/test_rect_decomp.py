import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy import ndimage

from corpus import full_corpus, ring
from twinmul import BitMatrix, RectDecomposition, decompose, polygon_stats, validate
from twinmul.rect_decomp import Rect, component_stats


def small_bits(max_side=9):
    shapes = st.tuples(st.integers(0, max_side), st.integers(0, max_side))
    return shapes.flatmap(lambda s: arrays(np.uint8, s, elements=st.integers(0, 1)))


def holes_by_flood(dense):
    """Bounded 0-regions: 8-connected zero components of the padded grid, minus the outside."""
    pad = np.pad(dense, 1)
    _, n = ndimage.label(pad == 0, structure=np.ones((3, 3)))
    return n - 1


def vertices_by_loop(dense):
    pad = np.pad(dense, 1).astype(int)
    convex = concave = 0
    for i in range(pad.shape[0] - 1):
        for j in range(pad.shape[1] - 1):
            w = pad[i : i + 2, j : j + 2]
            s = w.sum()
            if s == 1:
                convex += 1
            elif s == 3:
                concave += 1
            elif s == 2 and w[0, 0] == w[1, 1]:
                convex += 2
    return convex, concave


@given(small_bits())
def test_polygon_stats_against_loops(dense):
    st_ = polygon_stats(BitMatrix.from_dense(dense))
    assert (st_.V, st_.C) == vertices_by_loop(dense)
    assert st_.H == holes_by_flood(dense)
    assert st_.P == ndimage.label(dense)[1]


@given(small_bits())
def test_component_stats_sum_to_totals(dense):
    M = BitMatrix.from_dense(dense)
    comps = component_stats(M)
    total = polygon_stats(M)
    assert len(comps) == total.P
    assert sum(c.convex_vertices for c in comps) == total.V
    assert sum(c.concave_vertices for c in comps) == total.C
    assert sum(c.holes for c in comps) == total.H
    assert sum(c.cells for c in comps) == int(dense.sum())


def test_ring_stats():
    s = polygon_stats(ring())
    assert (s.P, s.V, s.C, s.H) == (1, 4, 4, 1)
    assert s.V - s.C == 4 * (s.P - s.H)


def test_l_shape():
    M = BitMatrix.from_rows([[1, 0], [1, 1]])
    s = polygon_stats(M)
    assert (s.P, s.V, s.C, s.H) == (1, 5, 1, 0)
    assert decompose(M).rects == [Rect(0, 1, 0, 0), Rect(1, 1, 1, 1)]


def test_diagonal_touch_is_two_polygons():
    s = polygon_stats(BitMatrix.identity(2))
    assert (s.P, s.V, s.C, s.H) == (2, 8, 0, 0)


def test_empty_and_full():
    assert len(decompose(BitMatrix.zeros(4, 4))) == 0
    assert decompose(BitMatrix.ones(4, 4)).rects == [Rect(0, 3, 0, 3)]
    assert len(decompose(BitMatrix.identity(4))) == 4
    assert len(decompose(ring())) == 4


@settings(max_examples=300)
@given(small_bits(12))
def test_decompose_is_valid_and_bounded(dense):
    M = BitMatrix.from_dense(dense)
    D = decompose(M)
    assert validate(D, M)
    assert D.to_matrix() == M
    s = polygon_stats(M)
    assert len(D) <= s.C - s.H + s.P


def test_decompose_is_deterministic_and_row_major():
    for _, M in full_corpus()[:20]:
        D = decompose(M)
        assert np.array_equal(D.bounds, decompose(M).bounds)
        keys = [(r.row_lo, r.col_lo) for r in D.rects]
        assert keys == sorted(keys)


def test_transpose_decomposition():
    M = BitMatrix.from_rows([[1, 1, 0], [1, 1, 1]])
    D = decompose(M)
    assert D.transpose().to_matrix() == M.T


def test_rect_geometry():
    r = Rect(1, 3, 2, 2)
    assert (r.height, r.width, r.area) == (3, 1, 3)


def test_validate_reports_overlap():
    M = BitMatrix.ones(2, 2)
    D = RectDecomposition.from_rects(2, 2, [(0, 1, 0, 1), (1, 1, 1, 1)])
    rep = validate(D, M)
    assert not rep and rep.kind == "overlap" and rep.cell == (1, 1)


def test_validate_reports_coverage():
    M = BitMatrix.from_rows([[1, 0], [1, 1]])
    rep = validate(RectDecomposition.from_rects(2, 2, [(0, 1, 0, 0)]), M)
    assert not rep and rep.kind == "coverage" and rep.cell == (1, 1)
    rep = validate(RectDecomposition.from_rects(2, 2, [(0, 1, 0, 1)]), M)
    assert not rep and rep.cell == (0, 1) and "0-entry" in rep.message


def test_bad_rectangles_rejected():
    with pytest.raises(ValueError):
        RectDecomposition.from_rects(2, 2, [(1, 0, 0, 0)])
    with pytest.raises(ValueError):
        RectDecomposition.from_rects(2, 2, [(0, 2, 0, 0)])
