"""Multiply by a binary matrix through its rectangle decomposition."""
import numpy as np

from twinmul import decompose, gen_block_example, polygon_stats, preprocess_and_wrap
from twinmul.oracle import naive_mv, optimal_rect_partition
from twinmul.rect_engine import OpCounter

M = gen_block_example(8)
print(M.to_dense())

D = decompose(M)
for r in D.rects:
    print(f"rows {r.row_lo}..{r.row_hi}  cols {r.col_lo}..{r.col_hi}")

s = polygon_stats(M)
print(f"{len(D)} rectangles from {s.P} polygons, {s.C} concave vertices, {s.H} holes")
print("smallest possible:", optimal_rect_partition(M, max_cells=64)[0])

handle = preprocess_and_wrap(M)
ones = np.ones(8, dtype=np.int64)
print("M @ 1   =", handle.mv(ones))
print("1^T M   =", handle.vt_m(ones))

# every product is checked against the plain row-by-row sum
v = np.arange(8) - 3
c = OpCounter()
x = handle.mv(v, c)
assert np.array_equal(x, naive_mv(M, v))
print(f"M @ v = {x}, {c.adds} additions and {c.subs} subtractions")
