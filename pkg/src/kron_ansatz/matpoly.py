"""Matrix polynomials and pencils over the rationals.

A ``MatrixPolynomial`` stores coefficient matrices ``P_0, ..., P_k`` for
``P(λ) = Σ P_i λ^i``.  The grade ``k`` is declared rather than inferred, so
a vanishing leading coefficient is allowed.  A ``Pencil`` is a grade-one
polynomial ``λX + Y`` that may also remember its natural block partition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg


class DimensionError(ValueError):
    """Raised when matrix or block dimensions do not fit together."""


@dataclass(frozen=True)
class Partition:
    """Natural partition (η, ε, m, n) of a block Kronecker-type pencil."""

    eta: int
    eps: int
    m: int
    n: int

    @property
    def shape(self) -> tuple[int, int]:
        return ((self.eta + 1) * self.m + self.eps * self.n,
                (self.eps + 1) * self.n + self.eta * self.m)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = linalg.normalize(a)
    a.setflags(write=False)
    return a


class MatrixPolynomial:
    """Dense m x n matrix polynomial with exact rational coefficients."""

    __slots__ = ("_coeffs",)
    # make numpy hand ``ndarray @ polynomial`` over to __rmatmul__
    __array_ufunc__ = None

    def __init__(self, coeffs: Sequence, shape: tuple[int, int] | None = None):
        if len(coeffs) == 0:
            raise ValueError("a matrix polynomial needs at least one coefficient")
        mats = [linalg.matrix(c, shape) for c in coeffs]
        if shape is None:
            shape = mats[0].shape
        for c in mats:
            if c.shape != tuple(shape):
                raise DimensionError(
                    f"coefficient of shape {c.shape} differs from {tuple(shape)}")
        object.__setattr__(self, "_coeffs", tuple(_frozen(c) for c in mats))

    def __setattr__(self, name, value):
        raise AttributeError("matrix polynomials are immutable")

    @property
    def coeffs(self) -> tuple[np.ndarray, ...]:
        return self._coeffs

    @property
    def rows(self) -> int:
        return self._coeffs[0].shape[0]

    @property
    def cols(self) -> int:
        return self._coeffs[0].shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._coeffs[0].shape

    @property
    def grade(self) -> int:
        return len(self._coeffs) - 1

    def coeff(self, i: int) -> np.ndarray:
        """Coefficient of λ^i; zero outside ``0..grade``."""
        if 0 <= i <= self.grade:
            return self._coeffs[i]
        return linalg.zeros(*self.shape)

    @property
    def degree(self) -> int:
        """Actual degree; -1 for the zero polynomial."""
        for i in range(self.grade, -1, -1):
            if not linalg.is_zero(self._coeffs[i]):
                return i
        return -1

    def is_zero(self) -> bool:
        return self.degree < 0

    def is_square(self) -> bool:
        return self.rows == self.cols

    def with_grade(self, grade: int) -> "MatrixPolynomial":
        if grade < self.degree:
            raise ValueError("grade below the actual degree")
        return _wrap([self.coeff(i) for i in range(grade + 1)], self.shape)

    def __eq__(self, other):
        if not isinstance(other, MatrixPolynomial):
            return NotImplemented
        if self.shape != other.shape:
            return False
        top = max(self.grade, other.grade)
        return all(linalg.equal(self.coeff(i), other.coeff(i)) for i in range(top + 1))

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}(shape={self.shape}, grade={self.grade})"

    def __add__(self, other):
        other = as_polynomial(other)
        if other.shape != self.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        top = max(self.grade, other.grade)
        return _wrap([self.coeff(i) + other.coeff(i) for i in range(top + 1)], self.shape)

    def __neg__(self):
        return _wrap([-c for c in self._coeffs], self.shape)

    def __sub__(self, other):
        return self + (-as_polynomial(other))

    def scale(self, s) -> "MatrixPolynomial":
        s = linalg.to_fraction(s)
        return _wrap([c * s for c in self._coeffs], self.shape)

    def __matmul__(self, other):
        other = as_polynomial(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        shape = (self.rows, other.cols)
        grade = self.grade + other.grade
        if not self.cols:
            return _wrap([linalg.zeros(*shape) for _ in range(grade + 1)], shape)
        # integer arithmetic is far cheaper than Fraction arithmetic
        da, ia = _integral(self._coeffs)
        db, ib = _integral(other._coeffs)
        out = [np.zeros(shape, dtype=object) for _ in range(grade + 1)]
        for i, a in enumerate(ia):
            if a is None:
                continue
            for j, b in enumerate(ib):
                if b is not None:
                    out[i + j] = out[i + j] + a @ b
        den = da * db
        return _wrap([_from_integral(c, den) for c in out], shape)

    def __rmatmul__(self, other):
        return as_polynomial(other) @ self

    def transpose(self) -> "MatrixPolynomial":
        return _wrap([c.T for c in self._coeffs], (self.cols, self.rows))

    @property
    def T(self):
        return self.transpose()

    def __getitem__(self, key) -> "MatrixPolynomial":
        """Slice every coefficient the same way, e.g. ``P[0:2, 1:3]``."""
        parts = [c[key] for c in self._coeffs]
        if parts[0].ndim != 2:
            raise IndexError("use 2-D slices")
        return _wrap(parts, parts[0].shape)

    def evaluate(self, z):
        return evaluate(self, z)


class Pencil(MatrixPolynomial):
    """The pencil λX + Y, optionally tagged with its natural partition."""

    __slots__ = ("_partition",)

    def __init__(self, X, Y, partition: Partition | None = None,
                 shape: tuple[int, int] | None = None):
        if shape is None and isinstance(X, np.ndarray):
            shape = X.shape
        super().__init__([Y, X], shape)
        if partition is not None and partition.shape != self.shape:
            raise DimensionError(
                f"partition {partition} needs shape {partition.shape}, got {self.shape}")
        object.__setattr__(self, "_partition", partition)

    @property
    def X(self) -> np.ndarray:
        return self._coeffs[1]

    @property
    def Y(self) -> np.ndarray:
        return self._coeffs[0]

    @property
    def partition(self) -> Partition | None:
        return self._partition

    def with_partition(self, partition: Partition | None) -> "Pencil":
        return Pencil(self.X, self.Y, partition, shape=self.shape)


def _integral(mats) -> tuple[int, list]:
    """Common denominator D and integer matrices D*A (None for zero ones)."""
    den = 1
    for a in mats:
        for x in a.flat:
            if x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
    out = []
    for a in mats:
        if linalg.is_zero(a):
            out.append(None)
            continue
        ia = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            ia[idx] = x.numerator * (den // x.denominator)
        out.append(ia)
    return den, out


def _from_integral(a: np.ndarray, den: int) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = Fraction(int(x), den)
    return out


def _wrap(coeffs, shape) -> MatrixPolynomial:
    if len(coeffs) == 2:
        return Pencil(coeffs[1], coeffs[0], shape=shape)
    return MatrixPolynomial(coeffs, shape)


def as_polynomial(a) -> MatrixPolynomial:
    """Treat a constant matrix as a grade-0 polynomial."""
    if isinstance(a, MatrixPolynomial):
        return a
    mat = linalg.matrix(a)
    return MatrixPolynomial([mat], mat.shape)


def as_pencil(a, partition: Partition | None = None) -> Pencil:
    """View a polynomial or matrix of degree at most one as a pencil."""
    p = as_polynomial(a)
    if p.degree > 1:
        raise ValueError("polynomial has degree above one")
    if isinstance(p, Pencil) and partition is None:
        return p
    return Pencil(p.coeff(1), p.coeff(0), partition, shape=p.shape)


def from_coeffs(coeffs: Sequence, shape: tuple[int, int] | None = None) -> MatrixPolynomial:
    return _wrap([linalg.matrix(c, shape) for c in coeffs], shape)


def zero_polynomial(rows: int, cols: int, grade: int = 0) -> MatrixPolynomial:
    return _wrap([linalg.zeros(rows, cols) for _ in range(grade + 1)], (rows, cols))


def zero_pencil(rows: int, cols: int) -> Pencil:
    return Pencil(linalg.zeros(rows, cols), linalg.zeros(rows, cols))


def evaluate(P: MatrixPolynomial, z) -> np.ndarray:
    """Horner evaluation at ``z``.

    Rational input gives an exact Fraction matrix; anything else is
    evaluated in complex floating point.
    """
    if isinstance(z, (int, Fraction, str)) and not isinstance(z, bool):
        z = linalg.to_fraction(z)
        acc = linalg.zeros(*P.shape)
        for c in reversed(P.coeffs):
            acc = acc * z + c
        return linalg.normalize(acc)
    z = complex(z)
    acc = np.zeros(P.shape, dtype=complex)
    for c in reversed(P.coeffs):
        acc = acc * z + c.astype(float)
    return acc


def reversal(P: MatrixPolynomial, t: int | None = None) -> MatrixPolynomial:
    """The t-reversal λ^t P(1/λ); ``t`` defaults to the grade."""
    if t is None:
        t = P.grade
    if t < P.grade:
        raise ValueError("reversal index below degree")
    return _wrap([P.coeff(t - i) for i in range(t + 1)], P.shape)


def lambda_vector(j: int) -> MatrixPolynomial:
    """Λ_j = (λ^j, ..., λ, 1)^T as a (j+1) x 1 polynomial of grade j."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    coeffs = [linalg.zeros(j + 1, 1) for _ in range(j + 1)]
    for i in range(j + 1):
        coeffs[j - i][i, 0] = Fraction(1)
    return _wrap(coeffs, (j + 1, 1))


def l_pencil(kappa: int) -> Pencil:
    """L_κ: κ x (κ+1), −1 on the diagonal of Y and 1 above it in X."""
    if kappa < 0:
        raise ValueError("kappa must be nonnegative")
    X = linalg.zeros(kappa, kappa + 1)
    Y = linalg.zeros(kappa, kappa + 1)
    for i in range(kappa):
        Y[i, i] = Fraction(-1)
        X[i, i + 1] = Fraction(1)
    return Pencil(X, Y, shape=(kappa, kappa + 1))


def kron(A, B) -> MatrixPolynomial:
    """Kronecker product; at most one factor may be non-constant."""
    a, b = as_polynomial(A), as_polynomial(B)
    if a.degree > 0 and b.degree > 0:
        raise ValueError("kron of two non-constant polynomials is unsupported")
    shape = (a.rows * b.rows, a.cols * b.cols)

    def k(x, y):
        if x.size == 0 or y.size == 0:
            return linalg.zeros(*shape)
        return np.kron(x, y)

    if b.degree > 0:
        coeffs = [k(a.coeff(0), c) for c in b.coeffs]
    else:
        coeffs = [k(c, b.coeff(0)) for c in a.coeffs]
    result = _wrap(coeffs, shape)
    if not isinstance(A, MatrixPolynomial) and not isinstance(B, MatrixPolynomial):
        return result.coeff(0)
    return result


def block_transpose(A, m: int, n: int):
    """Block transpose of a matrix or polynomial split into m x n blocks.

    A (p*m) x (q*n) input becomes (q*m) x (p*n); block (i, j) of the result
    is block (j, i) of the input.
    """
    shape = A.shape if isinstance(A, MatrixPolynomial) else np.shape(A)
    if m <= 0 or n <= 0 or shape[0] % m or shape[1] % n:
        raise DimensionError(f"shape {shape} is not divisible into {m}x{n} blocks")
    if isinstance(A, MatrixPolynomial):
        return _wrap([block_transpose(c, m, n) for c in A.coeffs],
                     (A.cols // n * m, A.rows // m * n))
    a = linalg.matrix(A)
    p, q = a.shape[0] // m, a.shape[1] // n
    out = linalg.zeros(q * m, p * n)
    for i in range(q):
        for j in range(p):
            out[i * m:(i + 1) * m, j * n:(j + 1) * n] = linalg.block(a, j, i, m, n)
    return out


def linear_combine(pencils: Sequence[MatrixPolynomial], weights: Sequence) -> MatrixPolynomial:
    """Σ w_i L_i for pencils (or polynomials) of equal size."""
    if not pencils:
        raise ValueError("linear_combine needs at least one term")
    if len(pencils) != len(weights):
        raise ValueError("number of weights differs from number of pencils")
    shape = pencils[0].shape
    for p in pencils:
        if p.shape != shape:
            raise DimensionError(f"cannot combine {shape} with {p.shape}")
    total = pencils[0].scale(weights[0])
    for p, w in zip(pencils[1:], weights[1:]):
        total = total + p.scale(w)
    return total


def block_assemble(blocks: list[list]) -> MatrixPolynomial:
    """Assemble a block matrix whose entries are matrices or polynomials."""
    polys = [[as_polynomial(b) for b in row] for row in blocks]
    grade = max(p.grade for row in polys for p in row)
    coeffs = [linalg.assemble([[p.coeff(i) for p in row] for row in polys])
              for i in range(grade + 1)]
    return _wrap(coeffs, coeffs[0].shape)


def direct_sum(A, B) -> MatrixPolynomial:
    a, b = as_polynomial(A), as_polynomial(B)
    grade = max(a.grade, b.grade)
    coeffs = [linalg.direct_sum(a.coeff(i), b.coeff(i)) for i in range(grade + 1)]
    return _wrap(coeffs, coeffs[0].shape)


def identity(n: int) -> np.ndarray:
    return linalg.eye(n)


def unit_vector(k: int, i: int) -> np.ndarray:
    """e_i in Q^k as a k x 1 column, 1-based like the math."""
    e = linalg.zeros(k, 1)
    e[i - 1, 0] = Fraction(1)
    return e
