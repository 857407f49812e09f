"""Classical ansatz spaces L1(P), L2(P), DL(P) via the Frobenius companion form.

Every L1 pencil is [v ⊗ I_n, Z] Frob_P(λ) and every L2 pencil is
Frob_P(λ)^B [v^T ⊗ I_n; Z].  The standard basis of DL(P) is read off the
P-tableau, a k x 2(k-1) grid of n x n blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .ansatz import frobenius_companion
from .matpoly import (DimensionError, MatrixPolynomial, Pencil, as_pencil,
                      block_transpose, identity, kron, lambda_vector,
                      linear_combine)


def _square(P: MatrixPolynomial) -> tuple[int, int]:
    if not P.is_square():
        raise DimensionError("classical ansatz spaces need a square polynomial")
    if P.grade < 2:
        raise ValueError("grade must be at least 2")
    return P.grade, P.rows


def _vector(v, k: int) -> np.ndarray:
    col = linalg.matrix([[x] for x in v], (len(v), 1)) if len(v) else linalg.zeros(0, 1)
    if col.shape != (k, 1):
        raise DimensionError(f"ansatz vector must have length {k}, got {col.shape[0]}")
    return col


@dataclass(frozen=True, eq=False)
class L1Params:
    """Ansatz vector v (length k) and Z (kn x (k-1)n)."""

    v: tuple[Fraction, ...]
    Z: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(linalg.to_fraction(x) for x in self.v))
        Z = linalg.matrix(self.Z)
        Z.setflags(write=False)
        object.__setattr__(self, "Z", Z)


def _unpack(v, Z):
    if isinstance(v, L1Params):
        return v.v, v.Z
    if Z is None:
        raise TypeError("Z is required when v is not an L1Params")
    return v, Z


def l1_pencil(P: MatrixPolynomial, v: Sequence | L1Params, Z=None) -> Pencil:
    """[v ⊗ I_n, Z] Frob_P(λ); satisfies L (Λ_{k-1} ⊗ I_n) = v ⊗ P."""
    k, n = _square(P)
    v, Z = _unpack(v, Z)
    Z = linalg.matrix(Z)
    if Z.shape != (k * n, (k - 1) * n):
        raise DimensionError(f"Z must be {k * n} x {(k - 1) * n}, got {Z.shape}")
    left = np.hstack([kron(_vector(v, k), identity(n)), Z])
    return as_pencil(left @ frobenius_companion(P))


def l2_pencil(P: MatrixPolynomial, v: Sequence, Z) -> Pencil:
    """Frob_P(λ)^B [v^T ⊗ I_n; Z]; satisfies (Λ_{k-1}^T ⊗ I_n) L = v^T ⊗ P."""
    k, n = _square(P)
    Z = linalg.matrix(Z)
    if Z.shape != ((k - 1) * n, k * n):
        raise DimensionError(f"Z must be {(k - 1) * n} x {k * n}, got {Z.shape}")
    right = np.vstack([kron(_vector(v, k).T, identity(n)), Z])
    return as_pencil(block_transpose(frobenius_companion(P), n, n) @ right)


def satisfies_l1(L: MatrixPolynomial, P: MatrixPolynomial, v: Sequence) -> bool:
    k, n = _square(P)
    return L @ kron(lambda_vector(k - 1), identity(n)) == kron(_vector(v, k), P)


def satisfies_l2(L: MatrixPolynomial, P: MatrixPolynomial, v: Sequence) -> bool:
    k, n = _square(P)
    return kron(lambda_vector(k - 1).T, identity(n)) @ L == kron(_vector(v, k).T, P)


def l1_rank_condition(v: Sequence | L1Params, Z=None) -> bool:
    """[v ⊗ I_n, Z] nonsingular."""
    v, Z = _unpack(v, Z)
    Z = linalg.matrix(Z)
    k = len(v)
    n = Z.shape[0] // k if k else 0
    if k == 0 or Z.shape != (k * n, (k - 1) * n):
        raise DimensionError("Z does not match the ansatz vector")
    return linalg.is_nonsingular(np.hstack([kron(_vector(v, k), identity(n)), Z]))


@dataclass(frozen=True, eq=False)
class PTableau:
    """Left half J_P and right half H_P, each k x (k-1) blocks of size n."""

    J: np.ndarray
    H: np.ndarray
    k: int
    n: int

    def grid(self) -> np.ndarray:
        return np.hstack([self.J, self.H])

    def block(self, half: str, r: int, c: int) -> np.ndarray:
        """Block (r, c), 1-based, of half "J" or "H"."""
        src = self.J if half == "J" else self.H
        n = self.n
        return src[(r - 1) * n:r * n, (c - 1) * n:c * n]

    def slice(self, half: str, r0: int, r1: int, c0: int, c1: int) -> np.ndarray:
        """Blocks r0..r1, c0..c1 (1-based, inclusive); empty ranges allowed."""
        src = self.J if half == "J" else self.H
        n = self.n
        return src[(r0 - 1) * n:max(r1, r0 - 1) * n, (c0 - 1) * n:max(c1, c0 - 1) * n]


def p_tableau(P: MatrixPolynomial) -> PTableau:
    """Row r (1-based) of J holds P_{2k-r-c} where that index is at most k;
    row r >= 2 of H holds -P_{k+1-r-c} where that index is nonnegative."""
    k, n = _square(P)
    J = linalg.zeros(k * n, (k - 1) * n)
    H = linalg.zeros(k * n, (k - 1) * n)
    for r in range(1, k + 1):
        for c in range(1, k):
            rows, cols = slice((r - 1) * n, r * n), slice((c - 1) * n, c * n)
            j = 2 * k - r - c
            if j <= k:
                J[rows, cols] = P.coeff(j)
            h = k + 1 - r - c
            if r >= 2 and h >= 0:
                H[rows, cols] = -P.coeff(h)
    return PTableau(J, H, k, n)


def dl_basis_z(P: MatrixPolynomial, i: int) -> np.ndarray:
    """Z_i = J_P(1:i, k-i+1:k-1) ⊕ H_P(i+1:k, 1:k-i) as a kn x (k-1)n matrix."""
    k, n = _square(P)
    if not 1 <= i <= k:
        raise ValueError(f"index {i} out of range 1..{k}")
    tab = p_tableau(P)
    top = tab.slice("J", 1, i, k - i + 1, k - 1)
    bottom = tab.slice("H", i + 1, k, 1, k - i)
    return linalg.direct_sum(top, bottom)


def dl_basis_pencil(P: MatrixPolynomial, i: int) -> Pencil:
    """B_i(λ) = [e_i ⊗ I_n, Z_i] Frob_P(λ)."""
    k, _ = _square(P)
    e = [0] * k
    e[i - 1] = 1
    return l1_pencil(P, e, dl_basis_z(P, i))


def dl_pencil(P: MatrixPolynomial, v: Sequence) -> Pencil:
    """Σ v_i B_i(λ), the DL(P) pencil with ansatz vector v."""
    k, _ = _square(P)
    if len(v) != k:
        raise DimensionError(f"ansatz vector must have length {k}")
    return as_pencil(linear_combine([dl_basis_pencil(P, i) for i in range(1, k + 1)],
                                    [linalg.to_fraction(x) for x in v]))


def intersection_check(P: MatrixPolynomial) -> bool:
    """The pencils lying in G_{η+1}(P) for every split η form a line spanned
    by dl_pencil(P, e_1).  Checked with the oracle's joint linear system."""
    from .oracle.dimension import ansatz_space_basis

    k, n = _square(P)
    basis = ansatz_space_basis(P, range(k))
    if len(basis) != 1:
        return False
    pencil, alpha = basis[0]
    target = dl_pencil(P, [1] + [0] * (k - 1))
    return alpha != 0 and pencil == target.scale(alpha)
