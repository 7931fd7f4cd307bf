"""Timing harness: preprocess once, then time repeated matrix-vector queries."""
from __future__ import annotations

import csv
import statistics
import time
from dataclasses import astuple, dataclass
from typing import Callable, Iterable, TextIO

import numpy as np

from . import hamming_engine, rect_engine
from .generators import GeneratorSpec, SplitMix64
from .matrix_core import BitMatrix

CSV_HEADER = ("family", "n", "engine", "preprocess_ns", "mean_query_ns", "structure_size")
ENGINES = ("rect", "hamming", "naive")


@dataclass(frozen=True)
class BenchRow:
    family: str
    n: int
    engine: str
    preprocess_ns: int
    mean_query_ns: float | None
    structure_size: int


def _prepare(engine: str, M: BitMatrix) -> tuple[Callable[[np.ndarray], np.ndarray], int]:
    if engine == "rect":
        handle = rect_engine.preprocess_and_wrap(M)
        return handle.mv, len(handle)
    if engine == "hamming":
        plan = hamming_engine.build_plan(M)
        return (lambda v: hamming_engine.mv(plan, v)), plan.total_weight
    if engine == "naive":
        dense = M.to_dense(np.int64)
        return dense.__matmul__, M.count_ones()
    raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")


def bench_one(M: BitMatrix, engine: str, queries: int, seed: int = 0) -> tuple[int, float | None, int]:
    """``(preprocess_ns, mean_query_ns, structure_size)`` for one matrix and engine."""
    t0 = time.perf_counter_ns()
    query, size = _prepare(engine, M)
    pre = time.perf_counter_ns() - t0
    if queries == 0:
        return pre, None, size
    rng = SplitMix64(seed)
    vs = (rng.u64_array(queries * M.n_cols) % np.uint64(201)).astype(np.int64) - 100
    vs = vs.reshape(queries, M.n_cols)
    query(vs[0])  # warm caches
    t0 = time.perf_counter_ns()
    for v in vs:
        query(v)
    return pre, (time.perf_counter_ns() - t0) / queries, size


def run_bench(
    families: Iterable[str],
    ns: Iterable[int],
    engines: Iterable[str],
    queries: int = 10,
    seed: int = 0,
    d: int = 4,
    density: float = 0.5,
    repeats: int = 1,
) -> list[BenchRow]:
    """One row per (family, n, engine), in input order.

    With ``repeats > 1`` each engine is timed that many times on the same
    matrix and the median of each timing is reported.
    """
    engines = list(engines)
    rows = []
    for family in families:
        for n in ns:
            spec = GeneratorSpec(family, n=None if family == "theorem4" else n, i=n if family == "theorem4" else None,
                                 d=d, density=density, seed=seed)
            M = spec.build()
            for engine in engines:
                runs = [bench_one(M, engine, queries, seed + r) for r in range(repeats)]
                pre = int(statistics.median(r[0] for r in runs))
                q = None if queries == 0 else float(statistics.median(r[1] for r in runs))
                rows.append(BenchRow(family, M.n_rows, engine, pre, q, runs[0][2]))
    return rows


def write_csv(rows: Iterable[BenchRow], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        fields = list(astuple(r))
        fields[4] = "" if r.mean_query_ns is None else f"{r.mean_query_ns:.1f}"
        w.writerow(fields)
