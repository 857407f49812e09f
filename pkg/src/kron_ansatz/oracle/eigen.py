"""Numeric eigenpairs of a regular pencil.

The characteristic polynomial is formed exactly, its roots are found by
Aberth-Ehrlich iteration, and null vectors of L(z) come from a complex SVD.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from ..matpoly import MatrixPolynomial, evaluate
from .polynomial import ScalarPolynomial, poly_det

CLUSTER_TOL = 1e-6


class SingularPencilError(ValueError):
    pass


@dataclass(frozen=True)
class Eigenpair:
    """An eigenvalue (``math.inf`` for infinity) with bases of right and left
    null vectors stored as columns.  Left vectors satisfy y^T L(z) = 0."""

    value: complex | float
    multiplicity: int
    right: np.ndarray
    left: np.ndarray

    @property
    def is_infinite(self) -> bool:
        return self.value == math.inf


def aberth(coeffs, max_iter: int = 200, tol: float = 1e-13, seed: int = 0,
           restarts: int = 5) -> np.ndarray:
    """All roots of the polynomial with coefficients ``coeffs`` (low to high)."""
    a = np.asarray(coeffs, dtype=complex)
    while a.size and a[-1] == 0:
        a = a[:-1]
    deg = a.size - 1
    if deg < 1:
        return np.zeros(0, dtype=complex)
    a = a / a[-1]
    if deg == 1:
        return np.array([-a[0]])
    da = a[1:] * np.arange(1, deg + 1)
    # Fujiwara-style bound for the starting circle
    radius = 2 * max(abs(a[deg - j]) ** (1 / j) for j in range(1, deg + 1))
    radius = max(radius, 1e-8)
    rng = random.Random(seed)
    z = None
    for attempt in range(restarts):
        offset = 0.4 + rng.random() if attempt else 0.4
        r = radius * (0.5 + 0.5 * rng.random()) if attempt else radius / 2
        z = r * np.exp(1j * (2 * np.pi * np.arange(deg) / deg + offset))
        if _aberth_iterate(a, da, z, max_iter, tol):
            break
    return np.array([_newton_polish(a, da, x) for x in z])


def _horner(c, x):
    acc = 0j
    for v in c[::-1]:
        acc = acc * x + v
    return acc


def _aberth_iterate(a, da, z, max_iter, tol) -> bool:
    deg = z.size
    for _ in range(max_iter):
        biggest = 0.0
        for i in range(deg):
            p = _horner(a, z[i])
            if p == 0:
                continue
            ratio = p / _horner(da, z[i])
            diffs = z[i] - np.delete(z, i)
            if np.any(diffs == 0):
                return False
            s = np.sum(1 / diffs)
            w = ratio / (1 - ratio * s)
            z[i] -= w
            biggest = max(biggest, abs(w) / max(abs(z[i]), 1e-300))
        if biggest < tol:
            return True
    return False


def _newton_polish(a, da, x, steps: int = 3):
    for _ in range(steps):
        d = _horner(da, x)
        if d == 0:
            break
        step = _horner(a, x) / d
        if not np.isfinite(step) or abs(step) > 1e-6 * max(1.0, abs(x)):
            break
        x = x - step
    return x


def cluster(roots, tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Group roots closer than ``tol`` (relative); returns (mean, count)."""
    groups: list[list[complex]] = []
    for r in sorted(roots, key=lambda c: (c.real, c.imag)):
        for g in groups:
            c = np.mean(g)
            if abs(r - c) <= tol * max(1.0, abs(c)):
                g.append(r)
                break
        else:
            groups.append([r])
    return [(complex(np.mean(g)), len(g)) for g in groups]


def null_vectors(M: np.ndarray, count: int | None = None, rtol: float = 1e-7) -> np.ndarray:
    """Orthonormal columns spanning the numerical nullspace of M.

    ``count`` fixes the number of vectors; otherwise singular values below
    rtol * σ_max * size are taken, and at least one.
    """
    _, s, vh = np.linalg.svd(M)
    n = M.shape[1]
    if count is None:
        cutoff = rtol * (s[0] if s.size else 1.0) * max(M.shape)
        count = max(1, int(np.sum(s <= cutoff)) + (n - s.size))
    return vh[n - count:].conj().T


def numeric_eigenpairs(L: MatrixPolynomial) -> list[Eigenpair]:
    """Finite eigenvalues first (sorted by real, then imaginary part),
    then ∞ if the pencil has it."""
    if not L.is_square():
        raise SingularPencilError("pencil not regular")
    det = poly_det(L)
    if det.is_zero():
        raise SingularPencilError("pencil not regular")
    size = L.rows
    zeros_at_origin = next(i for i, c in enumerate(det.c) if c != 0)
    rest = ScalarPolynomial(det.c[zeros_at_origin:])
    roots = list(aberth([float(c) for c in rest.c])) + [0j] * zeros_at_origin
    pairs = []
    for z, mult in cluster(roots):
        if zeros_at_origin and abs(z) <= CLUSTER_TOL:
            z = 0j
        M = evaluate(L, z)
        pairs.append(Eigenpair(z, mult, null_vectors(M), null_vectors(M.T)))
    pairs.sort(key=lambda p: (p.value.real, p.value.imag))
    n_inf = size - det.degree
    if n_inf:
        X = L.coeff(1).astype(float).astype(complex)
        pairs.append(Eigenpair(math.inf, n_inf, null_vectors(X), null_vectors(X.T)))
    return pairs


def residual(M: np.ndarray, u: np.ndarray) -> float:
    """‖M u‖ / (‖M‖ ‖u‖), using 2-norms."""
    denom = np.linalg.norm(M, 2) * np.linalg.norm(u)
    if denom == 0:
        return 0.0 if np.linalg.norm(M @ u) == 0 else math.inf
    return float(np.linalg.norm(M @ u) / denom)
