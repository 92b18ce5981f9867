"""Exact dense linear algebra over the rationals.

Matrices are immutable, row-major, with ``fractions.Fraction`` entries.  An
operator matrix follows the usual column convention: column j holds the
coordinates of the image of the j-th basis vector, and ``apply`` computes
M·v for a column vector v.

Determinants and characteristic polynomials run on denominator-cleared
integer matrices (fraction-free Bareiss elimination and the
Faddeev–LeVerrier recurrence respectively); everything stays exact, the
integer paths are just much faster than naive Fraction elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Callable, Iterable, Sequence

from .polynomials import Polynomial
from .rationals import RatLike, rat

Vector = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# vector helpers


def vec(entries: Iterable[RatLike]) -> Vector:
    return tuple(rat(x) for x in entries)


def zero_vec(n: int) -> Vector:
    return (Fraction(0),) * n


def vadd(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vscale(c: RatLike, v: Sequence[Fraction]) -> Vector:
    c = rat(c)
    return tuple(c * a for a in v)


def vdot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


def clear_denominators(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest positive integer multiple of v with integer entries."""
    d = lcm(*(a.denominator for a in v)) if v else 1
    return tuple(int(a * d) for a in v)


# ---------------------------------------------------------------------------
# integer kernels (private)


def _int_mat_mul(n: int, a: list[int], b: list[int]) -> list[int]:
    out = [0] * (n * n)
    for i in range(n):
        base = i * n
        arow = a[base : base + n]
        for t in range(n):
            ait = arow[t]
            if ait:
                tb = t * n
                for j in range(n):
                    out[base + j] += ait * b[tb + j]
    return out


def _int_char_poly(n: int, a: list[int]) -> list[int]:
    """Faddeev–LeVerrier over the integers.

    Returns ascending coefficients of det(xI − A); every intermediate trace
    is exactly divisible by its step index because the output coefficients
    are (signed) sums of principal minors, hence integers.
    """
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    if n == 0:
        return coeffs
    m = a[:]
    ck = 0
    for k in range(1, n + 1):
        if k > 1:
            for i in range(n):
                m[i * n + i] += ck
            m = _int_mat_mul(n, a, m)
        tr = sum(m[i * n + i] for i in range(n))
        q, r = divmod(tr, k)
        assert r == 0, "Faddeev-LeVerrier divisibility failed"
        ck = -q
        coeffs[n - k] = ck
    return coeffs


def _int_det_bareiss(n: int, rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; mutates its copy of ``rows``."""
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        rowk = rows[k]
        for i in range(k + 1, n):
            rowi = rows[i]
            head = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pivot - head * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return sign * rows[n - 1][n - 1]


# ---------------------------------------------------------------------------


class Matrix:
    """Immutable rational matrix."""

    __slots__ = ("rows", "cols", "_data")

    rows: int
    cols: int
    _data: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows: Iterable[Iterable[RatLike]]) -> None:
        data = tuple(tuple(rat(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
        else:
            width = 0
        object.__setattr__(self, "_data", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Matrix is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zero(rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return Matrix([[0] * cols for _ in range(rows)])

    @staticmethod
    def diagonal(values: Sequence[RatLike]) -> "Matrix":
        n = len(values)
        return Matrix(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_columns(columns: Sequence[Sequence[RatLike]]) -> "Matrix":
        if not columns:
            return Matrix([])
        n = len(columns[0])
        return Matrix([[col[i] for col in columns] for i in range(n)])

    @staticmethod
    def build(rows: int, cols: int, fn: Callable[[int, int], RatLike]) -> "Matrix":
        return Matrix([[fn(i, j) for j in range(cols)] for i in range(rows)])

    # -- access ----------------------------------------------------------

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Matrix):
            return self._data == other._data
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._data)

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(x) for x in row) for row in self._data
        )
        return f"Matrix[{self.rows}x{self.cols}: {body}]"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            [vadd(a, b) for a, b in zip(self._data, other._data)]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            [vsub(a, b) for a, b in zip(self._data, other._data)]
        )

    def __neg__(self) -> "Matrix":
        return Matrix([[-x for x in row] for row in self._data])

    def __mul__(self, other: "Matrix | RatLike") -> "Matrix":
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(
                    f"shape mismatch {self.rows}x{self.cols} * "
                    f"{other.rows}x{other.cols}"
                )
            cols = other.columns()
            return Matrix(
                [[vdot(row, c) for c in cols] for row in self._data]
            )
        c = rat(other)
        return Matrix([[c * x for x in row] for row in self._data])

    def __rmul__(self, other: RatLike) -> "Matrix":
        return self.__mul__(other)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(vdot(row, v) for row in self._data)

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum(
            (self._data[i][i] for i in range(self.rows)), Fraction(0)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self == self.transpose()

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def power(self, k: int) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        acc = Matrix.identity(self.rows)
        base = self
        while k > 0:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Matrix", list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        m = [list(row) for row in self._data]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot_row = next(
                (i for i in range(r, self.rows) if m[i][c] != 0), None
            )
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            inv = 1 / m[r][c]
            m[r] = [inv * x for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(m), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = Matrix(
            [list(self._data[i]) + [1 if i == j else 0 for j in range(n)]
             for i in range(n)]
        )
        red, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix([red.row(i)[n:] for i in range(n)])

    def solve(self, b: Sequence[Fraction]) -> Vector:
        """Unique solution of self · x = b (requires full column rank)."""
        if len(b) != self.rows:
            raise ValueError("right-hand side has wrong length")
        aug = Matrix(
            [list(self._data[i]) + [b[i]] for i in range(self.rows)]
        )
        red, pivots = aug.rref()
        if self.cols in pivots:
            raise ValueError("inconsistent linear system")
        if len(pivots) != self.cols:
            raise ValueError("system is underdetermined")
        x = [Fraction(0)] * self.cols
        for r, c in enumerate(pivots):
            x[c] = red[r, self.cols]
        return tuple(x)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return Fraction(1)
        scale = Fraction(1)
        int_rows: list[list[int]] = []
        for row in self._data:
            d = lcm(*(x.denominator for x in row))
            scale *= d
            int_rows.append([int(x * d) for x in row])
        return Fraction(_int_det_bareiss(n, int_rows), 1) / scale


# ---------------------------------------------------------------------------
# null spaces and characteristic polynomials


def kernel_basis(m: Matrix) -> list[Vector]:
    """Basis of {v : m·v = 0}, read off the reduced row echelon form.

    One basis vector per free column: it carries 1 in the free coordinate
    and compensating entries in the pivot coordinates.  Exact; no rank
    tolerance exists or is needed.
    """
    red, pivots = m.rref()
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r, free]
        basis.append(tuple(v))
    return basis


def char_poly(m: Matrix) -> Polynomial:
    """Exact characteristic polynomial det(λI − m), monic.

    Denominators are cleared first: with N = d·m integer, det(λI − m) =
    d^(−n)·det((dλ)I − N), so the integer Faddeev–LeVerrier coefficients of
    N rescale by powers of d.
    """
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial of non-square matrix")
    n = m.rows
    if n == 0:
        return Polynomial([1])
    d = lcm(*(x.denominator for row in m._data for x in row))
    flat = [int(x * d) for row in m._data for x in row]
    int_coeffs = _int_char_poly(n, flat)
    return Polynomial(
        [Fraction(int_coeffs[k], d ** (n - k)) for k in range(n + 1)]
    )


def evaluate_poly_at_matrix(p: Polynomial, m: Matrix) -> Matrix:
    """Horner evaluation p(m); used by the Cayley–Hamilton checks."""
    if m.rows != m.cols:
        raise ValueError("non-square matrix")
    n = m.rows
    acc = Matrix.zero(n)
    for c in reversed(p.coeffs):
        acc = acc * m + Matrix.identity(n) * c
    return acc
