"""Row orders with small Hamming sums, and products that walk them."""
import numpy as np

from twinmul import build_plan, gen_random_dense, gen_theorem4, mst_order, row_hamming_sum
from twinmul.hamming_engine import mv
from twinmul.matrix_core import permute
from twinmul.oracle import naive_mv, optimal_row_ordering
from twinmul.rect_engine import OpCounter

for i in range(5):
    print(f"level {i}: identity-order row sum {row_hamming_sum(gen_theorem4(i))}")

# shuffle the rows of a structured matrix, then recover a good order
M = permute(gen_theorem4(1), [3, 0, 5, 1, 4, 2])
pi = mst_order(M)
order, best = optimal_row_ordering(M)
print("shuffled:", row_hamming_sum(M), " mst order:", row_hamming_sum(M, pi), " optimum:", best)

R = gen_random_dense(12, 0.15, seed=4)
plan = build_plan(R)
v = np.arange(12)
c = OpCounter()
assert np.array_equal(mv(plan, v, c), naive_mv(R, v))
print(f"12x12 sparse random: {plan.total_weight} flips along the order, {c.total} scalar ops")
