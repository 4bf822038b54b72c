"""Dense matrices over GF(p^m) with Gaussian elimination.

A :class:`Matrix` wraps a read-only int64 array of encoded entries together
with its field.  Elimination always pivots on the first nonzero entry of the
current column, so results are deterministic.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    MalformedInput,
    NotStrictlyIncreasing,
    SpecMismatch,
)
from .gf import FieldSpec

__all__ = [
    "Matrix",
    "block_diagonal",
    "frobenius",
    "matmul",
    "nullspace",
    "rank",
    "row_basis",
    "rref",
    "same_row_space",
    "select_columns",
    "stack_horizontal",
    "stack_vertical",
]


class Matrix:
    """Immutable rows x cols matrix of encoded field elements."""

    __slots__ = ("spec", "data")

    def __init__(self, spec: FieldSpec, data, cols: int | None = None):
        arr = np.array(data, dtype=np.int64)
        if arr.size == 0:
            n_rows = arr.shape[0] if arr.ndim >= 1 else 0
            n_cols = cols if cols is not None else (arr.shape[1] if arr.ndim == 2 else 0)
            arr = np.zeros((n_rows, n_cols), dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatch(f"matrix data must be 2-dimensional, got shape {arr.shape}")
        if cols is not None and arr.shape[1] != cols:
            raise DimensionMismatch(f"expected {cols} columns, got {arr.shape[1]}")
        if arr.size and (arr.min() < 0 or arr.max() >= spec.order):
            raise MalformedInput(f"entries must be encodings in 0..{spec.order - 1}")
        arr.flags.writeable = False
        self.spec = spec
        self.data = arr

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> Matrix:
        return cls(spec, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, spec: FieldSpec, size: int) -> Matrix:
        return cls(spec, np.eye(size, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> Matrix:
        return Matrix(self.spec, self.data.T)

    def to_list(self) -> list[list[int]]:
        return self.data.tolist()

    def __getitem__(self, idx):
        return self.data[idx]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix({self.spec!r}, {self.rows}x{self.cols})"

    def is_zero(self) -> bool:
        return not self.data.any()

    # -- serialisation
    def to_json(self) -> dict:
        return {
            "field": self.spec.to_json(),
            "rows": self.rows,
            "cols": self.cols,
            "data": self.data.reshape(-1).tolist(),
        }

    @classmethod
    def from_json(cls, obj: dict, spec: FieldSpec | None = None) -> Matrix:
        try:
            if spec is None:
                spec = FieldSpec.from_json(obj["field"])
            rows, cols = int(obj["rows"]), int(obj["cols"])
            flat = [int(v) for v in obj["data"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad matrix object: {exc}") from exc
        if len(flat) != rows * cols:
            raise MalformedInput(f"{len(flat)} entries for a {rows}x{cols} matrix")
        return cls(spec, np.array(flat, dtype=np.int64).reshape(rows, cols), cols=cols)

    def to_text(self) -> str:
        return "".join(" ".join(str(v) for v in row) + "\n" for row in self.data.tolist())

    @classmethod
    def from_text(cls, spec: FieldSpec, text: str, cols: int | None = None) -> Matrix:
        rows = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                rows.append([int(tok) for tok in line.split()])
            except ValueError as exc:
                raise MalformedInput(f"line {lineno}: {exc}") from exc
        if rows and len({len(r) for r in rows}) != 1:
            raise MalformedInput("rows have different lengths")
        if not rows:
            return cls(spec, np.zeros((0, cols or 0), dtype=np.int64))
        return cls(spec, rows, cols=cols)

    def to_latex(self) -> str:
        body = " \\\\\n".join(" & ".join(str(v) for v in row) for row in self.data.tolist())
        return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}\n"

    @classmethod
    def from_latex(cls, spec: FieldSpec, text: str, cols: int | None = None) -> Matrix:
        """Parse the pmatrix rendering produced by to_latex."""
        body = text.strip()
        head, tail = "\\begin{pmatrix}", "\\end{pmatrix}"
        if not (body.startswith(head) and body.endswith(tail)):
            raise MalformedInput("expected a pmatrix environment")
        body = body[len(head) : -len(tail)]
        lines = [row.replace("&", " ") for row in body.split("\\\\")]
        return cls.from_text(spec, "\n".join(lines), cols)


def _same_spec(parts: Sequence[Matrix], spec: FieldSpec | None) -> FieldSpec:
    if not parts:
        if spec is None:
            raise ValueError("an empty list of blocks needs an explicit field")
        return spec
    first = parts[0].spec if spec is None else spec
    for part in parts:
        if part.spec != first:
            raise SpecMismatch(f"blocks over {part.spec!r} and {first!r}")
    return first


def _rref_array(arr: np.ndarray, spec: FieldSpec) -> tuple[np.ndarray, list[int]]:
    ops = spec.ops
    a = np.array(arr, dtype=np.int64, copy=True)
    n_rows, n_cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        if a[r, c] != 1:
            a[r] = ops.mul(a[r], ops.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = ops.sub(a[hit], ops.outer(col[hit], a[r]))
        pivots.append(c)
        r += 1
    return a, pivots


def rref(M: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form (zero rows kept at the bottom) and pivot columns."""
    arr, piv = _rref_array(M.data, M.spec)
    return Matrix(M.spec, arr, cols=M.cols), tuple(piv)


def rank(M: Matrix) -> int:
    return len(_rref_array(M.data, M.spec)[1])


def row_basis(M: Matrix) -> Matrix:
    """Nonzero rows of the reduced echelon form."""
    arr, piv = _rref_array(M.data, M.spec)
    return Matrix(M.spec, arr[: len(piv)], cols=M.cols)


def nullspace(M: Matrix) -> Matrix:
    """Basis (as rows) of {x : M x^T = 0}, one vector per free column."""
    arr, piv = _rref_array(M.data, M.spec)
    ops = M.spec.ops
    n = M.cols
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, pc in enumerate(piv):
            out[i, pc] = int(ops.neg(arr[r, f]))
    return Matrix(M.spec, out, cols=n)


def select_columns(M: Matrix, indices: Sequence[int]) -> Matrix:
    idx = [int(i) for i in indices]
    for i in idx:
        if not 0 <= i < M.cols:
            raise IndexOutOfRange(f"column {i} outside 0..{M.cols - 1}")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise NotStrictlyIncreasing(f"column indices {idx} are not strictly increasing")
    return Matrix(M.spec, M.data[:, idx], cols=len(idx))


def stack_vertical(parts: Sequence[Matrix], spec: FieldSpec | None = None) -> Matrix:
    spec = _same_spec(parts, spec)
    if not parts:
        return Matrix.zeros(spec, 0, 0)
    widths = {p.cols for p in parts}
    if len(widths) != 1:
        raise DimensionMismatch(f"column counts differ: {sorted(widths)}")
    return Matrix(spec, np.vstack([p.data for p in parts]), cols=parts[0].cols)


def stack_horizontal(parts: Sequence[Matrix], spec: FieldSpec | None = None) -> Matrix:
    spec = _same_spec(parts, spec)
    if not parts:
        return Matrix.zeros(spec, 0, 0)
    heights = {p.rows for p in parts}
    if len(heights) != 1:
        raise DimensionMismatch(f"row counts differ: {sorted(heights)}")
    return Matrix(spec, np.hstack([p.data for p in parts]), cols=sum(p.cols for p in parts))


def block_diagonal(parts: Sequence[Matrix], spec: FieldSpec | None = None) -> Matrix:
    spec = _same_spec(parts, spec)
    rows = sum(p.rows for p in parts)
    cols = sum(p.cols for p in parts)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for p in parts:
        out[r : r + p.rows, c : c + p.cols] = p.data
        r += p.rows
        c += p.cols
    return Matrix(spec, out, cols=cols)


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A.spec != B.spec:
        raise SpecMismatch(f"{A.spec!r} vs {B.spec!r}")
    if A.cols != B.rows:
        raise DimensionMismatch(f"{A.rows}x{A.cols} times {B.rows}x{B.cols}")
    return Matrix(A.spec, A.spec.ops.dot_rows(A.data, B.data.T), cols=B.cols)


def frobenius(M: Matrix, exponent: int) -> Matrix:
    """Entrywise power x -> x^exponent (the Frobenius map when exponent = p^j)."""
    return Matrix(M.spec, M.spec.ops.power(M.data, exponent), cols=M.cols)


def same_row_space(A: Matrix, B: Matrix) -> bool:
    if A.spec != B.spec or A.cols != B.cols:
        return False
    return row_basis(A) == row_basis(B)
