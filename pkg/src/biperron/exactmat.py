"""Integer matrices, symplectic forms and exact characteristic polynomials."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BiPerronError
from .intpoly import IntPoly


@dataclass(frozen=True)
class IntMatrix:
    """Square matrix of Python ints, stored as a tuple of row tuples."""

    rows: tuple

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise BiPerronError("dimension", "empty matrix")
        if any(len(r) != n for r in rows):
            raise BiPerronError("dimension", "matrix is not square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["IntMatrix"]]) -> "IntMatrix":
        """Assemble a matrix from a square grid of equally sized square blocks."""
        rows = []
        for block_row in blocks:
            k = block_row[0].n
            for i in range(k):
                rows.append([v for b in block_row for v in b.rows[i]])
        return cls(rows)

    @classmethod
    def direct_sum(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        n = sum(b.n for b in blocks)
        out = [[0] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[off + i][off : off + b.n] = row
            off += b.n
        return cls(out)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        _check_same(self, other)
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        _check_same(self, other)
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix([[a * other for a in r] for r in self.rows])
        return self @ other

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        _check_same(self, other)
        cols = list(zip(*other.rows))
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows))

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def block(self, i0: int, j0: int, k: int) -> "IntMatrix":
        return IntMatrix([r[j0 : j0 + k] for r in self.rows[i0 : i0 + k]])

    def to_lists(self):
        return [list(r) for r in self.rows]

    def __str__(self):
        return format_matrix(self)


def _check_same(a: IntMatrix, b: IntMatrix):
    if a.n != b.n:
        raise BiPerronError("dimension", f"{a.n}x{a.n} vs {b.n}x{b.n}")


# -- symplectic forms -------------------------------------------------------


class FormVariant(enum.Enum):
    STANDARD = "standard"
    PAIRWISE = "pairwise"
    TRIDIAGONAL = "tridiagonal"


@dataclass(frozen=True)
class SymplecticForm:
    variant: FormVariant
    g: int

    def __post_init__(self):
        if self.g < 1:
            raise BiPerronError("dimension", "half-dimension must be >= 1")
        J = self.matrix()
        if J.transpose() != -J or det(J) != 1:
            raise AssertionError(f"{self.variant.value} form is not a symplectic form")

    @classmethod
    def standard(cls, g: int) -> "SymplecticForm":
        return cls(FormVariant.STANDARD, g)

    @classmethod
    def pairwise(cls, g: int) -> "SymplecticForm":
        return cls(FormVariant.PAIRWISE, g)

    @classmethod
    def tridiagonal(cls, g: int) -> "SymplecticForm":
        return cls(FormVariant.TRIDIAGONAL, g)

    @classmethod
    def named(cls, name: str, g: int) -> "SymplecticForm":
        return cls(FormVariant(name), g)

    @property
    def dim(self) -> int:
        return 2 * self.g

    def matrix(self) -> IntMatrix:
        g, n = self.g, 2 * self.g
        J = [[0] * n for _ in range(n)]
        if self.variant is FormVariant.STANDARD:
            for i in range(g):
                J[i][g + i] = 1
                J[g + i][i] = -1
        elif self.variant is FormVariant.PAIRWISE:
            for k in range(g):
                J[2 * k][2 * k + 1] = 1
                J[2 * k + 1][2 * k] = -1
        else:
            # J_ij = delta_{i,j-1} - delta_{i-1,j}
            for i in range(n - 1):
                J[i][i + 1] = 1
                J[i + 1][i] = -1
        return IntMatrix(J)


def is_symplectic(A: IntMatrix, form: SymplecticForm) -> bool:
    if A.n % 2:
        raise BiPerronError("odd-dimension", f"dimension {A.n} is odd")
    if A.n != form.dim:
        raise BiPerronError("dimension", f"matrix is {A.n}x{A.n}, form needs {form.dim}")
    J = form.matrix()
    return A.transpose() @ J @ A == J


# -- determinant and characteristic polynomial ------------------------------


def det(A: IntMatrix) -> int:
    """Bareiss fraction-free elimination."""
    M = [list(r) for r in A.rows]
    n = len(M)
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def charpoly(A: IntMatrix) -> IntPoly:
    """det(xI - A) by Berkowitz's division-free algorithm.

    Returns the monic polynomial in ascending coefficient order.
    """
    M = A.rows
    n = len(M)
    # Coefficient vectors are kept descending (leading term first) during the
    # recursion over leading principal submatrices.
    C = [1, -M[0][0]]
    for r in range(1, n):
        R = M[r][:r]  # row r, columns < r
        S = [M[i][r] for i in range(r)]  # column r, rows < r
        a = M[r][r]
        # Toeplitz column: 1, -a, -R S, -R A S, -R A^2 S, ...
        col = [1, -a]
        v = S
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(M[i][j] * v[j] for j in range(r)) for i in range(r)]
        # new = T @ C where T is the (r+2)x(r+1) lower-triangular Toeplitz matrix
        new = []
        for i in range(r + 2):
            s = 0
            for j in range(min(i, r) + 1):
                s += col[i - j] * C[j]
            new.append(s)
        C = new
    return IntPoly(reversed(C))


# -- text / JSON formats ----------------------------------------------------


def parse_matrix(text: str) -> IntMatrix:
    """Read the text format ("n" then n rows) or a JSON array of arrays."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
            return IntMatrix([[int(str(v)) for v in row] for row in data])
        except (ValueError, TypeError) as exc:
            raise BiPerronError("parse", f"bad JSON matrix: {exc}") from None
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise BiPerronError("parse", "line 1: empty input")
    try:
        n = int(lines[0].split()[0])
    except (ValueError, IndexError):
        raise BiPerronError("parse", "line 1, column 1: expected dimension") from None
    if len(lines) - 1 != n:
        raise BiPerronError("parse", f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for lineno, ln in enumerate(lines[1:], start=2):
        toks = ln.split()
        row = []
        for col, tok in enumerate(toks, start=1):
            try:
                row.append(int(tok))
            except ValueError:
                raise BiPerronError("parse", f"line {lineno}, column {col}: {tok!r}") from None
        if len(row) != n:
            raise BiPerronError("parse", f"line {lineno}: expected {n} entries, got {len(row)}")
        rows.append(row)
    return IntMatrix(rows)


def format_matrix(A: IntMatrix) -> str:
    return "\n".join([str(A.n)] + [" ".join(str(v) for v in r) for r in A.rows]) + "\n"


def matrix_to_json(A: IntMatrix) -> list:
    return [[str(v) for v in r] for r in A.rows]
