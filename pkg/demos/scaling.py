"""Query time of the rectangle engine against a dense product as n doubles."""
import sys

from twinmul.bench import run_bench

ns = [int(a) for a in sys.argv[1:]] or [512, 1024, 2048]
rows = run_bench(["random_twin_ordered"], ns, ["rect", "naive"], queries=10, d=4, repeats=3)
prev = {}
for r in rows:
    growth = f"{r.mean_query_ns / prev[r.engine]:.2f}x" if r.engine in prev else ""
    prev[r.engine] = r.mean_query_ns
    print(f"n={r.n:5d} {r.engine:6s} {r.mean_query_ns / 1e3:9.1f} us/query {growth:>7s}  size {r.structure_size}")
