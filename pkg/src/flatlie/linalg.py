"""Exact rational vectors and dense matrices.

Scalars are :class:`fractions.Fraction`; vectors are plain tuples of
fractions; :class:`Matrix` is an immutable row-major grid.  Everything here
is exact, so equality tests are decisive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


def parse_rational(text: str) -> Fraction:
    """Parse a ``p/q`` or ``p`` literal; anything else is a ValueError."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(x) -> str:
    return str(Fraction(x))


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


# -- vectors ---------------------------------------------------------------

def vec(values: Iterable) -> Vector:
    return tuple(as_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(int(k == i)) for k in range(n))


def vadd(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} and {len(v)} differ")
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} and {len(v)} differ")
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vector:
    c = as_fraction(c)
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"vector lengths {len(u)} and {len(v)} differ")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vector(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def format_vector(v: Sequence) -> str:
    return "(" + ", ".join(format_rational(a) for a in v) + ")"


# -- matrices --------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_fraction(x) for x in r) for r in self.rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> Matrix:
        m = n if m is None else m
        return cls(tuple((Fraction(0),) * m for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> Matrix:
        if not columns:
            raise DimensionError("no columns given")
        return cls(tuple(zip(*columns)))

    @classmethod
    def diag(cls, values: Sequence) -> Matrix:
        n = len(values)
        return cls(tuple(
            tuple(as_fraction(values[i]) if i == j else Fraction(0) for j in range(n))
            for i in range(n)))

    @classmethod
    def outer(cls, u: Sequence, v: Sequence) -> Matrix:
        return cls(tuple(tuple(a * b for b in v) for a in u))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> tuple:
        return tuple(zip(*self.rows)) if self.rows else ()

    def transpose(self) -> Matrix:
        return Matrix(tuple(zip(*self.rows)))

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def trace(self) -> Fraction:
        if self.n_rows != self.n_cols:
            raise DimensionError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.n_rows)), Fraction(0))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.n_cols:
            raise DimensionError(f"matrix with {self.n_cols} columns applied to length-{len(v)} vector")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> Matrix:
        return Matrix(tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c) -> Matrix:
        c = as_fraction(c)
        return Matrix(tuple(tuple(c * a for a in r) for r in self.rows))

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self.rows) + "]"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.n_cols != b.n_rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    cols = b.columns()
    zero = Fraction(0)
    return Matrix(tuple(
        tuple(sum((x * y for x, y in zip(r, c) if x and y), zero) for c in cols)
        for r in a.rows))


def commutator(a: Matrix, b: Matrix) -> Matrix:
    if a.n_rows != a.n_cols or a.shape != b.shape:
        raise DimensionError(f"commutator needs equal square shapes, got {a.shape} and {b.shape}")
    return mat_mul(a, b) - mat_mul(b, a)


def linear_combination(coeffs: Sequence, mats: Sequence[Matrix]) -> Matrix:
    if len(coeffs) != len(mats):
        raise DimensionError("coefficient count does not match matrix count")
    if not mats:
        raise DimensionError("empty combination")
    n, m = mats[0].shape
    acc = [[Fraction(0)] * m for _ in range(n)]
    for c, mat in zip(coeffs, mats):
        if c == 0:
            continue
        for i, r in enumerate(mat.rows):
            row = acc[i]
            for j, x in enumerate(r):
                if x:
                    row[j] += c * x
    return Matrix(tuple(tuple(r) for r in acc))


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(b.n_rows for b in blocks)
    m = sum(b.n_cols for b in blocks)
    acc = [[Fraction(0)] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            acc[r0 + i][c0:c0 + b.n_cols] = row
        r0 += b.n_rows
        c0 += b.n_cols
    return Matrix(tuple(tuple(r) for r in acc))


def embed(block: Matrix, positions: Sequence[int], size: int) -> Matrix:
    """Place a square block at the given row/column positions of a size x size zero matrix."""
    if block.shape != (len(positions), len(positions)):
        raise DimensionError("block shape does not match position count")
    acc = [[Fraction(0)] * size for _ in range(size)]
    for a, i in enumerate(positions):
        for b, j in enumerate(positions):
            acc[i][j] = block.rows[a][b]
    return Matrix(tuple(tuple(r) for r in acc))


# -- elimination -----------------------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[as_fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    n_cols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(a: Matrix) -> list[Vector]:
    """Basis of {x : a x = 0}, one vector per free column."""
    red, pivots = rref(a.rows)
    n = a.n_cols
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class AffineSolution:
    """Solution set ``particular + span(nullspace)`` of a linear system."""

    particular: Vector
    nullspace: tuple

    @property
    def unique(self) -> bool:
        return not self.nullspace

    def sample(self, coeffs: Sequence) -> Vector:
        x = self.particular
        for c, v in zip(coeffs, self.nullspace):
            x = vadd(x, vscale(c, v))
        return x


def solve_linear(a: Matrix, b: Sequence) -> AffineSolution | None:
    """Solve ``a x = b`` exactly.  Returns None when the system is infeasible."""
    b = vec(b)
    if len(b) != a.n_rows:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {a.n_rows}")
    n = a.n_cols
    aug = [list(r) + [rhs] for r, rhs in zip(a.rows, b)]
    if not aug:
        return AffineSolution(zero_vector(n), tuple(unit_vector(n, i) for i in range(n)))
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return AffineSolution(tuple(x), tuple(nullspace(a)))


def inverse(a: Matrix) -> Matrix:
    n, m = a.shape
    if n != m:
        raise DimensionError("inverse of a non-square matrix")
    aug = [list(r) + list(e) for r, e in zip(a.rows, Matrix.identity(n).rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix(tuple(tuple(r[n:]) for r in red))


def coordinates(columns: Sequence[Sequence], v: Sequence) -> Vector | None:
    """Coordinates of v in the basis given by independent columns, or None if v is outside their span."""
    sol = solve_linear(Matrix.from_columns(columns), v)
    if sol is None:
        return None
    if not sol.unique:
        raise ValueError("spanning vectors are linearly dependent")
    return sol.particular
