"""Polynomial matrices: determinants, minors, and ranks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Sequence, Tuple

from .polyring import Poly, PolyParseError, format_poly, parse_poly


class PolyMatrix:
    """An immutable ``rows x cols`` grid of :class:`Poly` in ``nvars`` variables."""

    __slots__ = ("entries", "rows", "cols", "nvars")

    def __init__(self, entries: Sequence[Sequence[Poly]], nvars: int = None):
        grid = tuple(tuple(row) for row in entries)
        if not grid or not grid[0]:
            raise ValueError("a matrix needs at least one row and one column")
        if any(len(r) != len(grid[0]) for r in grid):
            raise ValueError("rows have inconsistent lengths")
        if nvars is None:
            nvars = grid[0][0].nvars
        for row in grid:
            for p in row:
                if not isinstance(p, Poly):
                    raise TypeError("matrix entries must be Poly")
                if p.nvars != nvars:
                    raise ValueError("variable-count mismatch among entries")
        self.entries = grid
        self.rows = len(grid)
        self.cols = len(grid[0])
        self.nvars = nvars

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], nvars: int) -> "PolyMatrix":
        return cls([[parse_poly(s, nvars) for s in row] for row in rows], nvars)

    @classmethod
    def identity(cls, k: int, nvars: int) -> "PolyMatrix":
        return cls(
            [[Poly.one(nvars) if i == j else Poly.zero(nvars) for j in range(k)] for i in range(k)],
            nvars,
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[Poly, ...]:
        return self.entries[i]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.nvars)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(c) for c in zip(*self.entries)], self.nvars)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = Poly.zero(self.nvars)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, self.nvars)

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.nvars == other.nvars and self.entries == other.entries

    def __hash__(self):
        return hash((self.nvars, self.entries))

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def __str__(self):
        return format_matrix(self)

    def __repr__(self):
        body = "; ".join(", ".join(format_poly(p) for p in row) for row in self.entries)
        return f"PolyMatrix([{body}], nvars={self.nvars})"


@dataclass(frozen=True)
class Minor:
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    det: Poly


@dataclass(frozen=True)
class MinorSet:
    size: int
    minors: Tuple[Minor, ...]

    def nonzero(self) -> List[Poly]:
        return [m.det for m in self.minors if not m.det.is_zero()]

    def __len__(self):
        return len(self.minors)


def determinant(m: PolyMatrix) -> Poly:
    """Exact determinant by Bareiss fraction-free elimination."""
    if m.rows != m.cols:
        raise ValueError(f"determinant needs a square matrix, got {m.shape}")
    n = m.rows
    a = [list(r) for r in m.entries]
    sign = 1
    prev = Poly.one(m.nvars)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Poly.zero(m.nvars)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]).exact_div(prev)
        prev = piv
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def minors(m: PolyMatrix, r: int) -> MinorSet:
    """All ``r x r`` minors, rows-then-columns in lexicographic index order."""
    if not 1 <= r <= min(m.rows, m.cols):
        raise ValueError(f"minor size {r} out of range for a {m.rows}x{m.cols} matrix")
    out = []
    for rs in combinations(range(m.rows), r):
        for cs in combinations(range(m.cols), r):
            out.append(Minor(rs, cs, determinant(m.submatrix(rs, cs))))
    return MinorSet(r, tuple(out))


def rank_over_fraction_field(m: PolyMatrix) -> int:
    """Rank over Q(d1..dn) via fraction-free elimination, first nonzero pivot."""
    a = [list(r) for r in m.entries]
    rank = 0
    prev = Poly.one(m.nvars)
    for c in range(m.cols):
        piv_row = next((i for i in range(rank, m.rows) if not a[i][c].is_zero()), None)
        if piv_row is None:
            continue
        a[rank], a[piv_row] = a[piv_row], a[rank]
        piv = a[rank][c]
        for i in range(rank + 1, m.rows):
            for j in range(c + 1, m.cols):
                a[i][j] = (piv * a[i][j] - a[i][c] * a[rank][j]).exact_div(prev)
            a[i][c] = Poly.zero(m.nvars)
        prev = piv
        rank += 1
        if rank == m.rows:
            break
    return rank


def rational_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by exact Gaussian elimination."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, nrows):
            if a[i][c]:
                f = a[i][c] / a[rank][c]
                for j in range(c, ncols):
                    a[i][j] -= f * a[rank][j]
        rank += 1
    return rank


def eval_matrix(m: PolyMatrix, point: Sequence) -> Tuple[List[List[Fraction]], int]:
    """Evaluate entrywise at ``point``; return the rational matrix and its rank."""
    if len(point) != m.nvars:
        raise ValueError(f"point has length {len(point)}, expected {m.nvars}")
    values = [[p.eval(point) for p in row] for row in m.entries]
    return values, rational_rank(values)


# ---------------------------------------------------------------------------
# matrix text format


class MatrixParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}" + (f", column {column}" if column else "")
        super().__init__(f"{where}: {message}" if line else message)


def parse_matrix(text: str) -> PolyMatrix:
    """Parse the ``vars: n`` header plus ``;``-separated rows format."""
    nvars = None
    rows: List[List[Poly]] = []
    row_lines: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if nvars is None:
            head, sep, value = line.partition(":")
            if not sep or head.strip() != "vars":
                raise MatrixParseError("expected header 'vars: n'", lineno, 1)
            try:
                nvars = int(value.strip())
            except ValueError:
                raise MatrixParseError(f"bad variable count {value.strip()!r}", lineno) from None
            if nvars < 1:
                raise MatrixParseError("variable count must be positive", lineno)
            continue
        row = []
        offset = 0
        for cell in line.split(";"):
            try:
                row.append(parse_poly(cell, nvars))
            except PolyParseError as exc:
                msg = str(exc).rsplit(" (column", 1)[0]
                raise MatrixParseError(msg, lineno, offset + exc.column) from None
            offset += len(cell) + 1
        if rows and len(row) != len(rows[0]):
            raise MatrixParseError(
                f"row has {len(row)} entries, expected {len(rows[0])} (as on line {row_lines[0]})",
                lineno,
            )
        rows.append(row)
        row_lines.append(lineno)
    if nvars is None:
        raise MatrixParseError("empty matrix file: missing 'vars: n' header")
    if not rows:
        raise MatrixParseError("matrix has no rows")
    return PolyMatrix(rows, nvars)


def format_matrix(m: PolyMatrix) -> str:
    lines = [f"vars: {m.nvars}"]
    for row in m.entries:
        lines.append("; ".join(format_poly(p) for p in row))
    return "\n".join(lines) + "\n"
