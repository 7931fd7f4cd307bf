"""Merge sequences, their width, and the mixed-minor test."""
from twinmul import build_theorem4_sequence, corner_count, gen_block_example, gen_chessboard
from twinmul import gen_random_twin_ordered, gen_theorem4, max_wideness, mixed_free_check
from twinmul import decompose

for i in range(4):
    M, seq = gen_theorem4(i), build_theorem4_sequence(i)
    print(f"level {i}: {M.n_rows}x{M.n_cols}, {len(seq)} merges, width {max_wideness(M, seq)}")

print("block example 2-mixed-free:", mixed_free_check(gen_block_example(8), 2))
print("chessboard 2-mixed-free:", mixed_free_check(gen_chessboard(4), 2))
print("chessboard corners:", [corner_count(gen_chessboard(n)) for n in (2, 5, 9)])

# a generated instance reports the width it actually reached
for d in (0, 2, 4):
    M, seq, w = gen_random_twin_ordered(128, d, seed=1)
    print(f"flip budget {d}: measured width {w}, {len(decompose(M))} rectangles, bound {3 * (w * 254 + 1)}")
