"""
Exact Core Module - scalar, matrix and binary-form arithmetic over Q(i)

Everything downstream is decided here without floating point: Gaussian
rationals, quaternions stored as complex pairs (a + b*j with j*z = conj(z)*j),
dense matrices with exact elimination, homogeneous polynomials in two
variables, and a small sparse polynomial type for symbolic identities.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from errors import InvalidInputError

logger = logging.getLogger(__name__)

_F0 = Fraction(0)
_F1 = Fraction(1)


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------

class GaussianRational:
    """re + im*i with rational parts. Immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        result = _coerce(value)
        if result is None:
            raise InvalidInputError(f"Cannot use {value!r} as an exact scalar.")
        return result

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def conj(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational._raw(other.re - self.re, other.im - self.im)

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.im and not other.im:
            return GaussianRational._raw(self.re * other.re, _F0)
        return GaussianRational._raw(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.im:
            if not other.re:
                raise ZeroDivisionError("division by zero")
            return GaussianRational._raw(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        """Scalar text encoding: 'p/q', 'p/q+r/si', 'r/si', 'i', '-i'."""
        if not self.im:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}i"
        if not self.re:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.re}{sign}{imag}"


def _coerce(value) -> Optional[GaussianRational]:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational._raw(Fraction(value), _F0)
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I_UNIT = GaussianRational(0, 1)


def gq(value) -> GaussianRational:
    """Shorthand coercion to GaussianRational."""
    return GaussianRational.coerce(value)


# ---------------------------------------------------------------------------
# Quaternions as complex pairs
# ---------------------------------------------------------------------------

def pair_product(a, b, c, d):
    """(a + b j)(c + d j) with j z = conj(z) j, for any entries that have conj()."""
    return a * c - b * d.conj(), a * d + b * c.conj()


class QuaternionValue:
    """a + b*j with Gaussian-rational a and b."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", gq(a))
        object.__setattr__(self, "b", gq(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuaternionValue is immutable")

    @classmethod
    def from_real(cls, value) -> "QuaternionValue":
        return cls(value, 0)

    @classmethod
    def from_components(cls, w, x, y, z) -> "QuaternionValue":
        """w + x i + y j + z k, using k = i j = (0, i)."""
        return cls(GaussianRational(w, x), GaussianRational(y, z))

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero

    @property
    def real_part(self) -> Fraction:
        return self.a.re

    @property
    def imh(self) -> Tuple[Fraction, Fraction, Fraction]:
        """Coefficients of i, j, k."""
        return (self.a.im, self.b.re, self.b.im)

    @property
    def is_real(self) -> bool:
        return not any(self.imh)

    def conj(self) -> "QuaternionValue":
        return QuaternionValue(self.a.conj(), -self.b)

    def norm(self) -> Fraction:
        return self.a.norm() + self.b.norm()

    def inverse(self) -> "QuaternionValue":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of the zero quaternion")
        c = self.conj()
        return QuaternionValue(c.a / n, c.b / n)

    def __add__(self, other):
        if not isinstance(other, QuaternionValue):
            return NotImplemented
        return QuaternionValue(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        if not isinstance(other, QuaternionValue):
            return NotImplemented
        return QuaternionValue(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return QuaternionValue(-self.a, -self.b)

    def __mul__(self, other):
        if isinstance(other, QuaternionValue):
            return quat_mul(self, other)
        z = _coerce(other)
        if z is None:
            return NotImplemented
        # right multiplication by a complex scalar: b j z = b conj(z) j
        return QuaternionValue(self.a * z, self.b * z.conj())

    def __rmul__(self, other):
        z = _coerce(other)
        if z is None:
            return NotImplemented
        return QuaternionValue(z * self.a, z * self.b)

    def __eq__(self, other):
        if not isinstance(other, QuaternionValue):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"QuaternionValue({self.a}, {self.b})"


def quat_mul(q1: QuaternionValue, q2: QuaternionValue) -> QuaternionValue:
    return QuaternionValue(*pair_product(q1.a, q1.b, q2.a, q2.b))


Q_ONE = QuaternionValue(1, 0)
Q_I = QuaternionValue(I_UNIT, 0)
Q_J = QuaternionValue(0, 1)
Q_K = QuaternionValue(0, I_UNIT)


# ---------------------------------------------------------------------------
# Vectors and matrices
# ---------------------------------------------------------------------------

Vector = Tuple[GaussianRational, ...]


def vector(values: Iterable) -> Vector:
    return tuple(gq(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, index: int) -> Vector:
    return tuple(ONE if i == index else ZERO for i in range(n))


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    c = gq(c)
    return tuple(c * x for x in v)


def vec_conj(v: Sequence) -> Vector:
    return tuple(x.conj() for x in v)


def vec_is_zero(v: Sequence) -> bool:
    return all(x.is_zero for x in v)


def dot(u: Sequence, v: Sequence):
    """Bilinear pairing sum(u_i v_i); no conjugation."""
    total = ZERO
    for x, y in zip(u, v):
        total = total + x * y
    return total


class ExactMatrix:
    """Dense rows x cols grid of GaussianRational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable] = (), rows: Optional[int] = None, cols: Optional[int] = None):
        grid = tuple(tuple(gq(x) for x in row) for row in entries)
        if rows is None:
            rows = len(grid)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        if len(grid) != rows or any(len(row) != cols for row in grid):
            raise InvalidInputError(f"Entry grid does not match the declared shape {rows}x{cols}.")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([unit_vector(n, i) for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "ExactMatrix":
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls([[col[i] for col in columns] for i in range(rows)], rows, len(columns))

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_zero(self) -> bool:
        return all(x.is_zero for row in self.entries for x in row)

    @property
    def is_real(self) -> bool:
        return all(x.is_real for row in self.entries for x in row)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.columns(), self.cols, self.rows)

    def conj(self) -> "ExactMatrix":
        return ExactMatrix([vec_conj(row) for row in self.entries], self.rows, self.cols)

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([vec_scale(c, row) for row in self.entries], self.rows, self.cols)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise InvalidInputError(f"Vector of length {len(v)} does not fit a {self.rows}x{self.cols} matrix.")
        return tuple(dot(row, v) for row in self.entries)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if other.rows != self.rows:
            raise InvalidInputError("Row counts differ.")
        return ExactMatrix([a + b for a, b in zip(self.entries, other.entries)], self.rows, self.cols + other.cols)

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InvalidInputError("Matrix shapes differ.")
        return ExactMatrix([vec_add(a, b) for a, b in zip(self.entries, other.entries)], self.rows, self.cols)

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise InvalidInputError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}.")
        cols = other.columns()
        return ExactMatrix([[dot(row, col) for col in cols] for row in self.entries], self.rows, other.cols)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    def tolist(self) -> List[List[GaussianRational]]:
        return [list(row) for row in self.entries]


def rref(M: ExactMatrix) -> Tuple[List[List[GaussianRational]], List[int]]:
    """Reduced row echelon form; pivot = first nonzero entry in column order.

    Returns the nonzero rows and their pivot columns.
    """
    rows = [list(r) for r in M.entries]
    pivots: List[int] = []
    r = 0
    for c in range(M.cols):
        if r == len(rows):
            break
        pivot = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        base = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if not f.is_zero:
                    rows[i] = [x - f * y for x, y in zip(rows[i], base)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _integer_rows(M: ExactMatrix) -> List[List[int]]:
    out = []
    for row in M.entries:
        den = 1
        for x in row:
            den = math.lcm(den, x.re.denominator)
        out.append([int(x.re * den) for x in row])
    return out


def _bareiss_rank(rows: List[List[int]], ncols: int) -> int:
    """Fraction-free elimination over the integers."""
    rows = [r[:] for r in rows]
    m = len(rows)
    rank = 0
    prev = 1
    for c in range(ncols):
        if rank == m:
            break
        pivot = next((i for i in range(rank, m) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][c]
        top = rows[rank]
        for i in range(rank + 1, m):
            lead = rows[i][c]
            row = rows[i]
            rows[i] = row[:c] + [(p * row[j] - lead * top[j]) // prev for j in range(c, ncols)]
        prev = p
        rank += 1
    return rank


def mat_rank(M: ExactMatrix) -> int:
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.is_real:
        return _bareiss_rank(_integer_rows(M), M.cols)
    return len(rref(M)[1])


def mat_kernel_basis(M: ExactMatrix) -> List[Vector]:
    """Basis of the right kernel, one vector per free column (free entry 1)."""
    rows, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        v = [ZERO] * M.cols
        v[f] = ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def mat_solve(A: ExactMatrix, b: Sequence) -> Optional[Vector]:
    """One solution x of A x = b (free variables set to zero), or None."""
    if len(b) != A.rows:
        raise InvalidInputError("Right-hand side length does not match the matrix.")
    augmented = ExactMatrix([list(row) + [gq(x)] for row, x in zip(A.entries, b)], A.rows, A.cols + 1)
    rows, pivots = rref(augmented)
    if pivots and pivots[-1] == A.cols:
        return None
    x = [ZERO] * A.cols
    for row, p in zip(rows, pivots):
        x[p] = row[A.cols]
    return tuple(x)


def mat_det(M: ExactMatrix):
    if not M.is_square:
        raise InvalidInputError("Determinant needs a square matrix.")
    rows = [list(r) for r in M.entries]
    n = M.rows
    det = ONE
    for c in range(n):
        pivot = next((i for i in range(c, n) if not rows[i][c].is_zero), None)
        if pivot is None:
            return ZERO
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        p = rows[c][c]
        det = det * p
        for i in range(c + 1, n):
            f = rows[i][c] / p
            if not f.is_zero:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def mat_signature(S: ExactMatrix) -> Tuple[int, int]:
    """Inertia (positives, negatives) of a real symmetric matrix."""
    if not S.is_square:
        raise InvalidInputError("Signature needs a square matrix.")
    if not S.is_real:
        raise InvalidInputError("Signature needs a real matrix.")
    if S != S.transpose():
        raise InvalidInputError("Signature needs a symmetric matrix.")
    a = [[x.re for x in row] for row in S.entries]
    remaining = list(range(S.rows))
    positive = negative = 0
    while remaining:
        piv = next((i for i in remaining if a[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in remaining for j in remaining if i != j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # congruence by I + e_i e_j^T makes the diagonal entry 2 a_ij
            for t in remaining:
                a[i][t] += a[j][t]
            for t in remaining:
                a[t][i] += a[t][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            positive += 1
        else:
            negative += 1
        remaining.remove(piv)
        for i in remaining:
            if a[i][piv]:
                f = a[i][piv] / p
                for j in remaining:
                    a[i][j] -= f * a[piv][j]
    return positive, negative


# ---------------------------------------------------------------------------
# Univariate helpers (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _poly_trim(p: Sequence[GaussianRational]) -> List[GaussianRational]:
    p = list(p)
    while p and p[-1].is_zero:
        p.pop()
    return p


def _poly_divmod(num: Sequence[GaussianRational], den: Sequence[GaussianRational]):
    num = _poly_trim(num)
    den = _poly_trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return [], num
    quot = [ZERO] * (len(num) - len(den) + 1)
    rem = num[:]
    lead_inv = ONE / den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = rem[k + len(den) - 1] * lead_inv
        quot[k] = c
        if not c.is_zero:
            for j, d in enumerate(den):
                rem[k + j] = rem[k + j] - c * d
    return _poly_trim(quot), _poly_trim(rem[: len(den) - 1])


def _poly_monic(p: Sequence[GaussianRational]) -> List[GaussianRational]:
    p = _poly_trim(p)
    if not p:
        return p
    inv = ONE / p[-1]
    return [x * inv for x in p]


def _poly_gcd(a: Sequence[GaussianRational], b: Sequence[GaussianRational]) -> List[GaussianRational]:
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return _poly_monic(a)


# ---------------------------------------------------------------------------
# Binary forms
# ---------------------------------------------------------------------------

class BinaryForm:
    """Homogeneous form of a given degree in x0, x1.

    coeffs[i] is the coefficient of x0^(degree-i) * x1^i. The zero form keeps
    whatever degree it was declared with.
    """

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs: Optional[Sequence] = None):
        if degree < 0:
            raise InvalidInputError(f"Form degree must be nonnegative, got {degree}.")
        if coeffs is None:
            coeffs = (ZERO,) * (degree + 1)
        coeffs = tuple(gq(c) for c in coeffs)
        if len(coeffs) != degree + 1:
            raise InvalidInputError(f"A degree-{degree} form needs {degree + 1} coefficients, got {len(coeffs)}.")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryForm is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, degree: int = 0) -> "BinaryForm":
        return cls(degree)

    @classmethod
    def constant(cls, c) -> "BinaryForm":
        return cls(0, [c])

    @classmethod
    def monomial(cls, degree: int, x1_power: int, c=1) -> "BinaryForm":
        coeffs = [ZERO] * (degree + 1)
        coeffs[x1_power] = gq(c)
        return cls(degree, coeffs)

    @classmethod
    def linear(cls, a, b) -> "BinaryForm":
        """a*x0 + b*x1."""
        return cls(1, [a, b])

    @classmethod
    def x0(cls) -> "BinaryForm":
        return cls(1, [1, 0])

    @classmethod
    def x1(cls) -> "BinaryForm":
        return cls(1, [0, 1])

    @classmethod
    def from_affine(cls, poly: Sequence, degree: int) -> "BinaryForm":
        """Homogenize a polynomial in u = x1/x0 to the given degree."""
        poly = _poly_trim([gq(c) for c in poly])
        if len(poly) > degree + 1:
            raise InvalidInputError("Affine polynomial exceeds the requested degree.")
        return cls(degree, poly + [ZERO] * (degree + 1 - len(poly)))

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    @property
    def x1_multiplicity(self) -> int:
        """Power of x1 dividing the form (order of vanishing at [1:0])."""
        return next((i for i, c in enumerate(self.coeffs) if not c.is_zero), self.degree)

    @property
    def x0_multiplicity(self) -> int:
        """Power of x0 dividing the form (order of vanishing at [0:1])."""
        return next((i for i, c in enumerate(reversed(self.coeffs)) if not c.is_zero), self.degree)

    def affine(self) -> List[GaussianRational]:
        """Dehomogenize at x0 = 1."""
        return _poly_trim(self.coeffs)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if other.is_zero and other.degree != self.degree:
            return self
        if self.is_zero and other.degree != self.degree:
            return other
        if other.degree != self.degree:
            raise InvalidInputError(f"Cannot add forms of degrees {self.degree} and {other.degree}.")
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BinaryForm(self.degree, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [ZERO] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero:
                    continue
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero:
                        out[i + j] = out[i + j] + a * b
            return BinaryForm(self.degree + other.degree, out)
        c = _coerce(other)
        if c is None:
            return NotImplemented
        return BinaryForm(self.degree, [c * x for x in self.coeffs])

    def __rmul__(self, other):
        c = _coerce(other)
        if c is None:
            return NotImplemented
        return self * c

    def __pow__(self, exponent: int) -> "BinaryForm":
        result = BinaryForm.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self, variable: int) -> "BinaryForm":
        """Partial derivative by x0 (variable 0) or x1 (variable 1)."""
        d = self.degree
        if d == 0:
            return BinaryForm.zero(0)
        if variable == 0:
            return BinaryForm(d - 1, [self.coeffs[i] * (d - i) for i in range(d)])
        if variable == 1:
            return BinaryForm(d - 1, [self.coeffs[i] * i for i in range(1, d + 1)])
        raise InvalidInputError(f"Variable index must be 0 or 1, got {variable}.")

    def evaluate(self, x0, x1) -> GaussianRational:
        x0, x1 = gq(x0), gq(x1)
        total = ZERO
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                total = total + c * x0 ** (self.degree - i) * x1 ** i
        return total

    def conj(self) -> "BinaryForm":
        """Conjugate every coefficient."""
        return BinaryForm(self.degree, [c.conj() for c in self.coeffs])

    def compose(self, l0: "BinaryForm", l1: "BinaryForm") -> "BinaryForm":
        """Substitute the linear forms l0, l1 for x0, x1."""
        if l0.degree != 1 or l1.degree != 1:
            raise InvalidInputError("Substitution needs linear forms.")
        d = self.degree
        p0 = [BinaryForm.constant(1)]
        p1 = [BinaryForm.constant(1)]
        for _ in range(d):
            p0.append(p0[-1] * l0)
            p1.append(p1[-1] * l1)
        result = BinaryForm.zero(d)
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                result = result + (p0[d - i] * p1[i]) * c
        return result

    def normalized(self) -> "BinaryForm":
        """Scale so that the first nonzero coefficient is 1."""
        lead = next((c for c in self.coeffs if not c.is_zero), None)
        if lead is None:
            return self
        inv = ONE / lead
        return BinaryForm(self.degree, [c * inv for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if self.is_zero and other.is_zero:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_zero:
            return hash(("zero-form",))
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        return f"BinaryForm({self.degree}, {self})"

    def __str__(self):
        terms = []
        d = self.degree
        for i, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            mono = "*".join(
                part for part in (
                    _power("x0", d - i),
                    _power("x1", i),
                ) if part
            )
            if not mono:
                terms.append(f"({c})")
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"({c})*{mono}")
        return " + ".join(terms) if terms else "0"


def _power(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


def form_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Greatest common divisor, scaled so its first nonzero coefficient is 1."""
    if f.is_zero and g.is_zero:
        raise InvalidInputError("gcd of two zero forms is undefined.")
    if f.is_zero:
        return g.normalized()
    if g.is_zero:
        return f.normalized()
    m0 = min(f.x0_multiplicity, g.x0_multiplicity)
    m1 = min(f.x1_multiplicity, g.x1_multiplicity)
    # strip x1 factors (leading zeros of the affine polynomial); x0 factors only lower the affine degree
    fa = f.affine()[f.x1_multiplicity:]
    ga = g.affine()[g.x1_multiplicity:]
    h = _poly_gcd(fa, ga)
    core = BinaryForm.from_affine(h, len(h) - 1)
    result = core * (BinaryForm.x0() ** m0) * (BinaryForm.x1() ** m1)
    return result.normalized()


def form_gcd_many(forms: Iterable[BinaryForm]) -> Optional[BinaryForm]:
    """gcd of all nonzero forms in the iterable; None when every form is zero."""
    result = None
    for form in forms:
        if form.is_zero:
            continue
        result = form.normalized() if result is None else form_gcd(result, form)
        if result.degree == 0:
            break
    return result


def division_chart(g: BinaryForm) -> int:
    """Smallest c >= 0 with g(c, 1) != 0; c = 0 means g has full affine degree."""
    if g.is_zero:
        raise InvalidInputError("Cannot choose a division chart for the zero form.")
    c = 0
    while g.evaluate(c, 1).is_zero:
        c += 1
    if c:
        logger.debug("division chart shifted by x0 -> x0 + %d*x1", c)
    return c


def form_divrem(f: BinaryForm, g: BinaryForm) -> Tuple[BinaryForm, BinaryForm]:
    """Chart-consistent division of f by g.

    Returns (q, r) with deg r = deg g and f = q*g + pad^(deg f - deg g) * r,
    where pad = x0 - c*x1 for c = division_chart(g). In particular f and r
    agree up to the unit pad on the zero scheme of g.
    """
    if g.is_zero:
        raise InvalidInputError("Division by the zero form.")
    if f.degree < g.degree:
        raise InvalidInputError(f"Dividend degree {f.degree} is below divisor degree {g.degree}.")
    c = division_chart(g)
    if c:
        forward = (BinaryForm.linear(1, c), BinaryForm.x1())
        back = (BinaryForm.linear(1, -c), BinaryForm.x1())
        fs, gs = f.compose(*forward), g.compose(*forward)
    else:
        fs, gs = f, g
    q_aff, r_aff = _poly_divmod(fs.coeffs, gs.coeffs)
    q = BinaryForm.from_affine(q_aff, f.degree - g.degree)
    r = BinaryForm.from_affine(r_aff, g.degree)
    if c:
        q, r = q.compose(*back), r.compose(*back)
    return q, r


def division_pad(g: BinaryForm) -> BinaryForm:
    """The linear form x0 - c*x1 used to rehomogenize remainders by g."""
    return BinaryForm.linear(1, -division_chart(g))


ROOT_SEARCH_NORM_LIMIT = 10 ** 12


def _integer_divisors(m: int) -> List[int]:
    small, large = [], []
    for a in range(1, math.isqrt(m) + 1):
        if m % a == 0:
            small.append(a)
            if a * a != m:
                large.append(m // a)
    return small + large[::-1]


def _is_gaussian_integer(z: GaussianRational) -> bool:
    return z.re.denominator == 1 and z.im.denominator == 1


def gaussian_divisors(n: GaussianRational) -> List[GaussianRational]:
    """Every Gaussian integer w with n/w a Gaussian integer, units included."""
    if n.is_zero or not _is_gaussian_integer(n):
        raise InvalidInputError(f"Divisors are defined for nonzero Gaussian integers, got {n}.")
    out = []
    for m in _integer_divisors(int(n.norm())):
        for a in range(math.isqrt(m) + 1):
            b = math.isqrt(m - a * a)
            if a * a + b * b != m:
                continue
            for w in dict.fromkeys(GaussianRational(sa * a, sb * b) for sa in (1, -1) for sb in (1, -1)):
                if _is_gaussian_integer(n / w):
                    out.append(w)
    return out


def form_root(f: BinaryForm) -> Optional[Tuple[GaussianRational, GaussianRational]]:
    """A zero (x0, x1) of f with coordinates in Q(i), or None when none is found.

    Candidates x0/x1 = u/v run over divisors u of the constant term and v of
    the leading term of f(t, 1) after clearing denominators.
    """
    if f.is_zero or f.degree == 0:
        return None
    if f.coeffs[0].is_zero:
        return ONE, ZERO
    if f.coeffs[-1].is_zero:
        return ZERO, ONE
    scale = math.lcm(*(d for c in f.coeffs for d in (c.re.denominator, c.im.denominator)))
    lead, const = f.coeffs[0] * scale, f.coeffs[-1] * scale
    if max(lead.norm(), const.norm()) > ROOT_SEARCH_NORM_LIMIT:
        logger.debug("root search skipped; coefficient norms too large")
        return None
    leads = gaussian_divisors(lead)
    for u in gaussian_divisors(const):
        for v in leads:
            t = u / v
            if f.evaluate(t, ONE).is_zero:
                return t, ONE
    return None


def form_det(matrix: Sequence[Sequence[BinaryForm]]) -> BinaryForm:
    """Laplace expansion along the first row of a square matrix of forms."""
    n = len(matrix)
    if n == 0:
        return BinaryForm.constant(1)
    if n == 1:
        return matrix[0][0]
    total = BinaryForm.zero(0)
    for j, entry in enumerate(matrix[0]):
        if entry.is_zero:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = entry * form_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def maximal_minors(matrix: Sequence[Sequence[BinaryForm]], size: int) -> List[BinaryForm]:
    """All size x size minors built from `size` rows of a matrix with `size` columns."""
    return [form_det([matrix[i] for i in rows]) for rows in combinations(range(len(matrix)), size)]


# ---------------------------------------------------------------------------
# Sparse polynomials in real variables (symbolic identities)
# ---------------------------------------------------------------------------

class Polynomial:
    """Polynomial in real indexed variables with Q(i) coefficients.

    Monomials are sorted tuples of variable indices. Conjugation acts on
    coefficients only, since the variables are real.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, ...], GaussianRational]] = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = gq(c)
            if not c.is_zero:
                clean[tuple(sorted(mono))] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def variable(cls, index: int) -> "Polynomial":
        return cls({(index,): ONE})

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls({(): gq(c)})

    @classmethod
    def complex_variable(cls, index: int) -> "Polynomial":
        """X_(2 index) + i X_(2 index + 1)."""
        return cls({(2 * index,): ONE, (2 * index + 1,): I_UNIT})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _lift(self, other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            return other
        c = _coerce(other)
        return None if c is None else Polynomial.constant(c)

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, ZERO) + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out: Dict[Tuple[int, ...], GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2))
                out[mono] = out.get(mono, ZERO) + c1 * c2
        return Polynomial(out)

    __rmul__ = __mul__

    def conj(self) -> "Polynomial":
        return Polynomial({m: c.conj() for m, c in self.terms.items()})

    def real_part(self) -> "Polynomial":
        return Polynomial({m: GaussianRational(c.re) for m, c in self.terms.items()})

    def imag_part(self) -> "Polynomial":
        return Polynomial({m: GaussianRational(c.im) for m, c in self.terms.items()})

    def monomials(self) -> List[Tuple[int, ...]]:
        return sorted(self.terms)

    def coefficient_vector(self, monomials: Sequence[Tuple[int, ...]]) -> Vector:
        return tuple(self.terms.get(m, ZERO) for m in monomials)

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({len(self.terms)} terms)"


def polynomial_span_rank(polys: Sequence[Polynomial]) -> int:
    """Dimension of the linear span of the given polynomials."""
    monos = sorted({m for p in polys for m in p.terms})
    if not monos:
        return 0
    return mat_rank(ExactMatrix([p.coefficient_vector(monos) for p in polys], len(polys), len(monos)))
