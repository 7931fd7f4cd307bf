"""A few flipped entries cost a bounded number of extra rectangles."""
import numpy as np

from twinmul import corrupt, decompose, gen_random_twin_ordered, preprocess_and_wrap
from twinmul.oracle import naive_mv

M = gen_random_twin_ordered(200, 2, seed=7, measure=False).matrix
base = len(decompose(M))
for r in (0, 10, 50, 200):
    C = corrupt(M, r, seed=r)
    extra = len(decompose(C)) - base
    print(f"{r:4d} flips: {extra:5d} extra rectangles (at most {8 * r})")

v = np.arange(200) % 7 - 3
C = corrupt(M, 200, seed=1)
assert np.array_equal(preprocess_and_wrap(C).mv(v), naive_mv(C, v))
print("products on the corrupted matrix still match")
