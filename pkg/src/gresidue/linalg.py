"""Exact dense linear algebra over the rationals.

Scalars are Python ``int`` (arbitrary precision) and ``fractions.Fraction``;
every value leaving this module is normalised by :func:`rational`, so an
integral value is always an ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import NotSymmetricError, ShapeError, SingularMatrixError


def rational(x) -> int | Fraction:
    """Normalise an int/Fraction/str to ``int`` when integral, else ``Fraction``."""
    if isinstance(x, bool):
        raise TypeError("bool is not a rational scalar")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (Rational, str)):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(x) -> str:
    """Decimal string form used in every external format ("p" or "p/q")."""
    x = rational(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


class RationalMatrix:
    """Immutable dense matrix with exact rational entries (row-major)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(rational(v) for v in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ShapeError("ragged rows")
        self.rows = len(data)
        self.cols = ncols
        self._data = data

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "RationalMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    @property
    def entries(self) -> tuple:
        return tuple(v for r in self._data for v in r)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square:
            return False
        d = self._data
        return all(d[i][j] == d[j][i] for i in range(self.rows) for j in range(i))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(zip(*self._data)) if self.rows else self

    def __neg__(self):
        return RationalMatrix([[-v for v in r] for r in self._data])

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other._data))
            return RationalMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._data]
            )
        vec = list(other)
        if len(vec) != self.cols:
            raise ShapeError("vector length does not match column count")
        return [rational(sum(a * b for a, b in zip(r, vec))) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        return f"RationalMatrix({self.tolist()!r})"


def char_poly(m: RationalMatrix) -> list:
    """Coefficients of det(lambda*I - m), leading 1 first.

    Berkowitz's division-free recurrence: the polynomial of each leading
    principal submatrix is a lower-triangular Toeplitz transform of the
    previous one.
    """
    if not m.is_square:
        raise ShapeError(f"char_poly needs a square matrix, got {m.shape}")
    n = m.rows
    a = m._data
    p = [1]
    for k in range(n):
        col = [a[i][k] for i in range(k)]
        row = a[k][:k]
        q = [1, -a[k][k]]
        v = col
        for _ in range(k):
            q.append(-sum(x * y for x, y in zip(row, v)))
            v = [sum(a[i][j] * v[j] for j in range(k)) for i in range(k)]
        p = [sum(q[i - j] * p[j] for j in range(max(0, i - len(q) + 1), min(i, k) + 1))
             for i in range(k + 2)]
    return [rational(c) for c in p]


def sign_variations(coeffs: Sequence) -> int:
    """Sign changes in a coefficient sequence, zeros skipped."""
    count = 0
    last = 0
    for c in coeffs:
        if c == 0:
            continue
        s = 1 if c > 0 else -1
        if last and s != last:
            count += 1
        last = s
    return count


def eigen_sign_counts(m: RationalMatrix) -> tuple[int, int, int]:
    """(#positive, #negative, #zero) eigenvalues of a symmetric matrix.

    Descartes' rule is exact here because every eigenvalue is real.
    """
    if not m.is_symmetric():
        raise NotSymmetricError("eigenvalue sign counts need a symmetric matrix")
    p = char_poly(m)
    n = len(p) - 1
    zeros = 0
    while zeros < n and p[n - zeros] == 0:
        zeros += 1
    pos = sign_variations(p)
    neg = sign_variations([c if (n - k) % 2 == 0 else -c for k, c in enumerate(p)])
    return pos, neg, zeros


def rank_and_signature(m: RationalMatrix) -> tuple[int, int]:
    pos, neg, zeros = eigen_sign_counts(m)
    return m.rows - zeros, pos - neg


def determinant(m: RationalMatrix):
    """Bareiss fraction-free elimination (exact for integer input)."""
    if not m.is_square:
        raise ShapeError(f"determinant needs a square matrix, got {m.shape}")
    n = m.rows
    a = [list(r) for r in m._data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
            a[i][k] = 0
        prev = a[k][k]
    return rational(sign * a[n - 1][n - 1]) if n else 1


def solve_linear(m: RationalMatrix, rhs: Sequence) -> list:
    """Exact solution of m·x = rhs by Gauss-Jordan elimination."""
    if not m.is_square:
        raise ShapeError(f"solve_linear needs a square matrix, got {m.shape}")
    n = m.rows
    rhs = [rational(v) for v in rhs]
    if len(rhs) != n:
        raise ShapeError(f"right-hand side has length {len(rhs)}, expected {n}")
    a = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(m._data, rhs)]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = 1 / a[k][k]
        a[k] = [v * inv for v in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return [rational(row[n]) for row in a]
