"""Univariate polynomials over Q and exact determinants of polynomial matrices."""

from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Iterable

from ..matpoly import MatrixPolynomial

DEFAULT_BIT_LIMIT = 1_000_000


class BitLimitExceeded(RuntimeError):
    """Coefficient growth passed the configured ceiling."""


def bit_limit() -> int:
    """Ceiling on total coefficient bits; KRON_ANSATZ_BITLIMIT overrides it."""
    raw = os.environ.get("KRON_ANSATZ_BITLIMIT")
    if raw:
        return int(float(raw))
    return DEFAULT_BIT_LIMIT


class ScalarPolynomial:
    """Polynomial c_0 + c_1 λ + ... with Fraction coefficients, trailing
    zeros trimmed.  The zero polynomial has no coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [x if isinstance(x, Fraction) else Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def constant(cls, x) -> "ScalarPolynomial":
        return cls((x,))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "ScalarPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    @property
    def lc(self) -> Fraction:
        return self.c[-1] if self.c else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, ScalarPolynomial):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == ScalarPolynomial.constant(other).c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        if not self.c:
            return "ScalarPolynomial(0)"
        terms = []
        for i, x in enumerate(self.c):
            if x:
                terms.append(f"{x}" if i == 0 else f"{x}*λ^{i}" if i > 1 else f"{x}*λ")
        return "ScalarPolynomial(" + " + ".join(terms) + ")"

    def __add__(self, other):
        other = _lift(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        return ScalarPolynomial([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return ScalarPolynomial(-x for x in self.c)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if not self.c or not other.c:
            return ScalarPolynomial()
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return ScalarPolynomial(out)

    __rmul__ = __mul__

    def scale(self, s) -> "ScalarPolynomial":
        s = Fraction(s)
        return ScalarPolynomial(x * s for x in self.c)

    def __divmod__(self, other):
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = other.degree
        inv = 1 / other.lc
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            q = rem[i] * inv
            if q:
                quot[i - dq] = q
                for j, y in enumerate(other.c):
                    rem[i - dq + j] -= q * y
        return ScalarPolynomial(quot), ScalarPolynomial(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "ScalarPolynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def divides(self, other) -> bool:
        if self.is_zero():
            return _lift(other).is_zero()
        return (_lift(other) % self).is_zero()

    def monic(self) -> "ScalarPolynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    def __call__(self, z):
        """Exact value for rational z, complex float otherwise."""
        exact = isinstance(z, (int, Fraction)) and not isinstance(z, bool)
        acc = Fraction(0) if exact else 0j
        for x in reversed(self.c):
            acc = acc * z + (x if exact else float(x))
        return acc

    def derivative(self) -> "ScalarPolynomial":
        return ScalarPolynomial(i * x for i, x in enumerate(self.c) if i)

    def bits(self) -> int:
        return sum(x.numerator.bit_length() + x.denominator.bit_length() for x in self.c)

    def to_json(self) -> list[str]:
        return [str(x) for x in self.c]


ZERO = ScalarPolynomial()
ONE = ScalarPolynomial.constant(1)


def _lift(x) -> ScalarPolynomial:
    if isinstance(x, ScalarPolynomial):
        return x
    return ScalarPolynomial.constant(x)


def gcd(a: ScalarPolynomial, b: ScalarPolynomial) -> ScalarPolynomial:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_matrix(P: MatrixPolynomial) -> list[list[ScalarPolynomial]]:
    """Entry-wise view of a matrix polynomial."""
    return [[ScalarPolynomial(P.coeff(d)[i, j] for d in range(P.grade + 1))
             for j in range(P.cols)] for i in range(P.rows)]


def _as_entries(A) -> list[list[ScalarPolynomial]]:
    if isinstance(A, MatrixPolynomial):
        return poly_matrix(A)
    return [[_lift(x) for x in row] for row in A]


def cofactor_det(A) -> ScalarPolynomial:
    """Laplace expansion along the first row; only for small matrices."""
    A = _as_entries(A)
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return ONE
    if n == 1:
        return A[0][0]
    total = ZERO
    for j in range(n):
        if A[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in A[1:]]
        term = A[0][j] * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def _strip_content(row: list[ScalarPolynomial]) -> tuple[Fraction, list[ScalarPolynomial]]:
    """Factor a row as content * (integer polynomials with coprime coefficients)."""
    coeffs = [x for p in row for x in p.c]
    if not coeffs:
        return Fraction(1), row
    den = 1
    for x in coeffs:
        den = den * x.denominator // math.gcd(den, x.denominator)
    num = 0
    for x in coeffs:
        num = math.gcd(num, (x * den).numerator)
    content = Fraction(num, den)
    return content, [p.scale(1 / content) for p in row]


def poly_det(A, cofactor_below: int = 5) -> ScalarPolynomial:
    """Exact determinant of a square polynomial matrix.

    Rows are first made integral with coprime coefficients; the remaining
    work is Bareiss fraction-free elimination, whose divisions are exact.
    Matrices smaller than ``cofactor_below`` use cofactor expansion.
    """
    A = _as_entries(A)
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    if n < cofactor_below:
        return cofactor_det(A)
    scale = Fraction(1)
    rows = []
    for r in A:
        content, stripped = _strip_content(list(r))
        scale *= content
        rows.append(stripped)
    limit = bit_limit()
    sign = 1
    prev = ONE
    for k in range(n - 1):
        piv = min((i for i in range(k, n) if not rows[i][k].is_zero()),
                  key=lambda i: (rows[i][k].degree, i), default=None)
        if piv is None:
            return ZERO
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        pk = rows[k][k]
        for i in range(k + 1, n):
            a = rows[i][k]
            rows[i] = [None] * (k + 1) + [
                (pk * rows[i][j] - a * rows[k][j]).exact_div(prev) for j in range(k + 1, n)]
            rows[i][k] = ZERO
        prev = pk
        if sum(p.bits() for r in rows[k + 1:] for p in r[k + 1:]) > limit:
            raise BitLimitExceeded("determinant coefficients exceeded the bit ceiling")
    return rows[n - 1][n - 1].scale(scale * sign)
