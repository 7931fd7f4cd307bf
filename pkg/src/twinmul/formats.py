"""Plain-text file formats. Indices in files are 1-based and inclusive.

matrix (dense)    ``R C`` then R lines of C characters from ``01``
matrix (sparse)   ``R C NNZ sparse`` then NNZ lines ``i j``
numeric matrix    ``R C numeric`` then R lines of C whitespace-separated numbers
vector            ``N`` then N lines, one number each
decomposition     ``R C K`` then K lines ``r1 r2 c1 c2``
ordering          ``N`` then N lines, one row index each
merge sequence    ``N`` then 2N-2 lines ``R p`` or ``C p`` (merge interval p with p+1)

Every file ends with a newline; there is no trailing whitespace.
"""
from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable, TextIO, Union

import numpy as np

from .matrix_core import BitMatrix
from .rect_decomp import RectDecomposition
from .twinwidth import Axis, MergeOp, MergeSequence

PathLike = Union[str, os.PathLike, TextIO]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.source = source


def _read_lines(src: PathLike) -> tuple[list[str], str]:
    if hasattr(src, "read"):
        return src.read().splitlines(), getattr(src, "name", "<stream>")
    path = Path(src)
    return path.read_text().splitlines(), str(path)


def _write(dst: PathLike, lines: Iterable[str]) -> None:
    text = "".join(f"{line}\n" for line in lines)
    if hasattr(dst, "write"):
        dst.write(text)
    else:
        Path(dst).write_text(text)


def _ints(line: str, lineno: int, source: str, count: int | None = None) -> list[int]:
    parts = line.split()
    if count is not None and len(parts) != count:
        raise ParseError(f"expected {count} integers, got {line!r}", lineno, source)
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"not an integer in {line!r}", lineno, source) from None
    return values


def _header(lines: list[str], source: str) -> list[str]:
    if not lines:
        raise ParseError("empty file", 1, source)
    return lines[0].split()


def _expect_count(lines: list[str], k: int, source: str) -> None:
    body = len(lines) - 1
    # allow a single trailing blank line from editors
    if body == k + 1 and lines[-1] == "":
        return
    if body < k:
        raise ParseError(f"expected {k} lines after the header, found {body}", len(lines) + 1, source)
    if body > k:
        raise ParseError(f"unexpected extra line after {k} entries", k + 2, source)


# --- matrices ---------------------------------------------------------------

def format_matrix(M: BitMatrix) -> list[str]:
    dense = M.to_dense()
    return [f"{M.n_rows} {M.n_cols}"] + ["".join("01"[b] for b in row) for row in dense]


def format_sparse_matrix(M: BitMatrix) -> list[str]:
    ij = np.argwhere(M.to_dense())
    return [f"{M.n_rows} {M.n_cols} {len(ij)} sparse"] + [f"{i + 1} {j + 1}" for i, j in ij]


def write_matrix(M: BitMatrix, dst: PathLike, sparse: bool = False) -> None:
    _write(dst, format_sparse_matrix(M) if sparse else format_matrix(M))


def _parse_dense(lines, R, C, source) -> BitMatrix:
    _expect_count(lines, R, source)
    dense = np.zeros((R, C), dtype=np.uint8)
    for i in range(R):
        row = lines[i + 1]
        if len(row) != C or set(row) - {"0", "1"}:
            raise ParseError(f"row must be {C} characters of 0/1, got {row!r}", i + 2, source)
        if C:
            dense[i] = np.frombuffer(row.encode(), dtype=np.uint8) - ord("0")
    return BitMatrix.from_dense(dense)


def _parse_sparse(lines, R, C, nnz, source) -> BitMatrix:
    _expect_count(lines, nnz, source)
    dense = np.zeros((R, C), dtype=np.uint8)
    for k in range(nnz):
        i, j = _ints(lines[k + 1], k + 2, source, 2)
        if not (1 <= i <= R and 1 <= j <= C):
            raise ParseError(f"entry ({i}, {j}) outside {R}x{C}", k + 2, source)
        dense[i - 1, j - 1] = 1
    return BitMatrix.from_dense(dense)


def read_matrix(src: PathLike) -> BitMatrix:
    """Read a binary matrix in dense or sparse form (detected from the header)."""
    return _matrix_from_lines(*_read_lines(src))


def _matrix_from_lines(lines: list[str], source: str) -> BitMatrix:
    head = _header(lines, source)
    if len(head) == 2:
        R, C = _ints(lines[0], 1, source, 2)
        return _parse_dense(lines, R, C, source)
    if len(head) == 4 and head[3] == "sparse":
        R, C, nnz = _ints(" ".join(head[:3]), 1, source, 3)
        return _parse_sparse(lines, R, C, nnz, source)
    raise ParseError(f"unrecognised matrix header {lines[0]!r}", 1, source)


def _number(tok: str, lineno: int, source: str):
    try:
        return int(tok)
    except ValueError:
        try:
            return float(tok)
        except ValueError:
            raise ParseError(f"not a number: {tok!r}", lineno, source) from None


def _as_array(values: list) -> np.ndarray:
    if all(isinstance(x, int) for x in values):
        return np.array(values, dtype=np.int64)
    return np.array(values, dtype=np.float64)


def _format_number(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(int(x))


def format_numeric_matrix(A) -> list[str]:
    A = np.asarray(A)
    return [f"{A.shape[0]} {A.shape[1]} numeric"] + [" ".join(_format_number(x) for x in row) for row in A]


def write_numeric_matrix(A, dst: PathLike) -> None:
    _write(dst, format_numeric_matrix(A))


def read_numeric_matrix(src: PathLike) -> np.ndarray:
    """Read a numeric matrix; binary matrix files are accepted and returned as int64."""
    lines, source = _read_lines(src)
    head = _header(lines, source)
    if not (len(head) == 3 and head[2] == "numeric"):
        return _matrix_from_lines(lines, source).to_dense(np.int64)
    R, C = _ints(" ".join(head[:2]), 1, source, 2)
    _expect_count(lines, R, source)
    values = []
    for i in range(R):
        toks = lines[i + 1].split()
        if len(toks) != C:
            raise ParseError(f"expected {C} numbers, got {len(toks)}", i + 2, source)
        values.extend(_number(t, i + 2, source) for t in toks)
    return _as_array(values).reshape(R, C)


# --- vectors and orderings -------------------------------------------------------

def write_vector(v, dst: PathLike) -> None:
    v = np.asarray(v)
    _write(dst, [str(v.shape[0])] + [_format_number(x) for x in v])


def read_vector(src: PathLike) -> np.ndarray:
    lines, source = _read_lines(src)
    (n,) = _ints(lines[0] if lines else "", 1, source, 1)
    _expect_count(lines, n, source)
    return _as_array([_number(lines[i + 1].strip(), i + 2, source) for i in range(n)])


def write_ordering(pi, dst: PathLike) -> None:
    pi = np.asarray(pi)
    _write(dst, [str(pi.shape[0])] + [str(int(p) + 1) for p in pi])


def read_ordering(src: PathLike) -> np.ndarray:
    lines, source = _read_lines(src)
    (n,) = _ints(lines[0] if lines else "", 1, source, 1)
    _expect_count(lines, n, source)
    pi = np.array([_ints(lines[i + 1], i + 2, source, 1)[0] - 1 for i in range(n)], dtype=np.int64)
    if n and not np.array_equal(np.sort(pi), np.arange(n)):
        raise ParseError(f"not a permutation of 1..{n}", None, source)
    return pi


# --- decompositions and merge sequences ------------------------------------------------

def write_decomposition(D: RectDecomposition, dst: PathLike) -> None:
    lines = [f"{D.n_rows} {D.n_cols} {len(D)}"]
    lines += [f"{r0 + 1} {r1 + 1} {c0 + 1} {c1 + 1}" for r0, r1, c0, c1 in D.bounds.tolist()]
    _write(dst, lines)


def read_decomposition(src: PathLike) -> RectDecomposition:
    lines, source = _read_lines(src)
    R, C, K = _ints(lines[0] if lines else "", 1, source, 3)
    _expect_count(lines, K, source)
    bounds = []
    for k in range(K):
        r1, r2, c1, c2 = _ints(lines[k + 1], k + 2, source, 4)
        if not (1 <= r1 <= r2 <= R and 1 <= c1 <= c2 <= C):
            raise ParseError(f"rectangle [{r1},{r2}]x[{c1},{c2}] invalid for {R}x{C}", k + 2, source)
        bounds.append((r1 - 1, r2 - 1, c1 - 1, c2 - 1))
    return RectDecomposition(R, C, np.array(bounds, dtype=np.int64).reshape(-1, 4))


def write_merge_sequence(seq: MergeSequence, dst: PathLike) -> None:
    _write(dst, [str(seq.n)] + [f"{op.axis.value} {op.position + 1}" for op in seq.ops])


def read_merge_sequence(src: PathLike) -> MergeSequence:
    lines, source = _read_lines(src)
    (n,) = _ints(lines[0] if lines else "", 1, source, 1)
    k = max(2 * n - 2, 0)
    _expect_count(lines, k, source)
    ops = []
    for idx in range(k):
        toks = lines[idx + 1].split()
        if len(toks) != 2 or toks[0] not in ("R", "C"):
            raise ParseError(f"expected 'R p' or 'C p', got {lines[idx + 1]!r}", idx + 2, source)
        (p,) = _ints(toks[1], idx + 2, source, 1)
        if p < 1:
            raise ParseError(f"position must be at least 1, got {p}", idx + 2, source)
        ops.append(MergeOp(Axis(toks[0]), p - 1))
    return MergeSequence(n, tuple(ops))


def sniff(src: PathLike) -> str:
    """Guess the kind of a matrix-like file: 'dense', 'sparse', 'decomposition' or 'numeric'."""
    lines, source = _read_lines(src)
    head = _header(lines, source)
    if len(head) == 2:
        return "dense"
    if len(head) == 3:
        return "numeric" if head[2] == "numeric" else "decomposition"
    if len(head) == 4 and head[3] == "sparse":
        return "sparse"
    raise ParseError(f"unrecognised header {lines[0]!r}", 1, source)
