"""Command-line entry point.

Exit codes: 0 success, 1 a verification that ran but did not pass,
2 bad usage or malformed input, 3 an internal invariant was violated.
"""
from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager


from . import formats, hamming_engine, oracle, rect_engine
from .bench import ENGINES, run_bench, write_csv
from .generators import FAMILIES, GeneratorSpec
from .matrix_core import BitMatrix, DimensionError, column_hamming_sum, row_hamming_sum
from .rect_decomp import decompose, polygon_stats, validate
from .twinwidth import StructureError, corner_count, max_wideness

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class _Internal(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse already exits with 2; keep the message format
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _load_operand(path) -> tuple[BitMatrix, object]:
    """Matrix file or decomposition file; returns the matrix and the decomposition if given."""
    kind = formats.sniff(path)
    if kind == "decomposition":
        D = formats.read_decomposition(path)
        return D.to_matrix(), D
    if kind == "numeric":
        raise formats.ParseError("expected a binary matrix or a decomposition", 1, str(path))
    return formats.read_matrix(path), None


def cmd_gen(args) -> int:
    family = args.family.replace("-", "_")
    if family == "theorem4":
        if args.i is None:
            raise ValueError("--family theorem4 needs --i")
    elif args.n is None:
        raise ValueError(f"--family {args.family} needs --n")
    spec = GeneratorSpec(family, n=args.n, i=args.i, density=args.density, d=args.d, seed=args.seed)
    M = spec.build()
    with _output(args.out) as fh:
        formats.write_matrix(M, fh, sparse=args.sparse)
    return EXIT_OK


def cmd_decompose(args) -> int:
    M = formats.read_matrix(args.matrix)
    D = decompose(M)
    report = validate(D, M)
    if not report:
        raise _Internal(f"decomposition failed validation: {report.message}")
    if args.out:
        formats.write_decomposition(D, args.out)
    st = polygon_stats(M)
    print(f"rects={len(D)} polygons={st.num_polygons} concave={st.concave_vertices} holes={st.holes}")
    return EXIT_OK


def _product(engine: str, M: BitMatrix, D, v, left: bool):
    if engine == "naive":
        return oracle.naive_vt_m(M, v) if left else oracle.naive_mv(M, v)
    if engine == "rect":
        if D is None:
            D = decompose(M)
            if not validate(D, M):
                raise _Internal("decomposition failed validation")
        return rect_engine.vt_m(D, v) if left else rect_engine.mv(D, v)
    if engine == "hamming":
        return hamming_engine.vt_m(M, v) if left else hamming_engine.mv(hamming_engine.build_plan(M), v)
    raise ValueError(f"unknown engine {engine!r}")


def cmd_mv(args) -> int:
    M, D = _load_operand(args.matrix)
    v = formats.read_vector(args.vector)
    x = _product(args.engine, M, D, v, args.left)
    with _output(args.out) as fh:
        formats.write_vector(x, fh)
    return EXIT_OK


def cmd_matmul(args) -> int:
    M, D = _load_operand(args.a)
    B = formats.read_numeric_matrix(args.b)
    if args.engine == "naive":
        C = oracle.naive_matmul(M, B)
    elif args.engine == "rect":
        C = rect_engine.matmul(D if D is not None else decompose(M), B)
    else:
        C = hamming_engine.matmul(M, B)
    with _output(args.out) as fh:
        formats.write_numeric_matrix(C, fh)
    return EXIT_OK


def cmd_stats(args) -> int:
    M = formats.read_matrix(args.matrix)
    st = polygon_stats(M)
    lines = [
        f"shape={M.n_rows}x{M.n_cols}",
        f"ones={M.count_ones()}",
        f"corners={corner_count(M)}",
        f"rects={len(decompose(M))}",
        f"polygons={st.num_polygons}",
        f"convex={st.convex_vertices}",
        f"concave={st.concave_vertices}",
        f"holes={st.holes}",
        f"row_hamming_identity={row_hamming_sum(M)}",
        f"col_hamming_identity={column_hamming_sum(M)}",
        f"row_hamming_mst={hamming_engine.coherence_upper_bound(M)}",
    ]
    print("\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    M = formats.read_matrix(args.matrix)
    seq = formats.read_merge_sequence(args.sequence)
    w = max_wideness(M, seq)
    ok = w <= args.d
    print(f"max_wideness={w} d={args.d} {'pass' if ok else 'fail'}")
    return EXIT_OK if ok else EXIT_FAIL


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _name_list(choices):
    def parse(text: str) -> list[str]:
        names = [t.replace("-", "_") for t in text.split(",") if t]
        bad = [t for t in names if t not in choices]
        if bad:
            raise argparse.ArgumentTypeError(f"unknown: {', '.join(bad)}; choose from {', '.join(choices)}")
        return names

    return parse


def cmd_bench(args) -> int:
    rows = run_bench(args.family, args.n_list, args.engine_list, queries=args.queries, seed=args.seed,
                     d=args.d, density=args.density, repeats=args.repeats)
    with _output(args.out) as fh:
        write_csv(rows, fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twinmul", description="Structure-exploiting products with binary matrices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a generated matrix")
    g.add_argument("--family", required=True, choices=[f.replace("_", "-") for f in FAMILIES] + list(FAMILIES))
    g.add_argument("--n", type=int, help="side length (padding target for theorem4)")
    g.add_argument("--i", type=int, help="recursion level for theorem4")
    g.add_argument("--d", type=int, default=2, help="flip budget (random-twin-ordered) or ones per row (grid-sparse)")
    g.add_argument("--density", type=float, default=0.5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--sparse", action="store_true", help="write the sparse format")
    g.add_argument("--out", "-o")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("decompose", help="rectangle decomposition plus a stats line")
    d.add_argument("matrix")
    d.add_argument("--out", "-o", help="decomposition file to write")
    d.set_defaults(func=cmd_decompose)

    m = sub.add_parser("mv", help="matrix-vector product")
    m.add_argument("matrix", help="matrix or decomposition file")
    m.add_argument("vector")
    m.add_argument("--engine", choices=ENGINES, default="rect")
    m.add_argument("--left", action="store_true", help="compute v^T M instead of M v")
    m.add_argument("--out", "-o")
    m.set_defaults(func=cmd_mv)

    mm = sub.add_parser("matmul", help="A @ B with binary A")
    mm.add_argument("a", help="binary matrix or decomposition file")
    mm.add_argument("b", help="numeric or binary matrix file")
    mm.add_argument("--engine", choices=ENGINES, default="rect")
    mm.add_argument("--out", "-o")
    mm.set_defaults(func=cmd_matmul)

    s = sub.add_parser("stats", help="corner, polygon and Hamming measures")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_stats)

    v = sub.add_parser("verify", help="check a merge sequence is d-wide")
    v.add_argument("matrix")
    v.add_argument("sequence")
    v.add_argument("--d", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time preprocessing and queries, CSV out")
    b.add_argument("--family", type=_name_list(FAMILIES), default=["random_twin_ordered"])
    b.add_argument("--n-list", type=_int_list, default=[256, 512, 1024])
    b.add_argument("--engine-list", type=_name_list(ENGINES), default=list(ENGINES))
    b.add_argument("--queries", type=int, default=10)
    b.add_argument("--repeats", type=int, default=1, help="report the median over this many timings")
    b.add_argument("--d", type=int, default=4)
    b.add_argument("--density", type=float, default=0.5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", "-o")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Internal as exc:
        print(f"twinmul: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (formats.ParseError, DimensionError, StructureError, ValueError, OSError) as exc:
        print(f"twinmul: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
