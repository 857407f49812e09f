"""Block-symmetric members BG_{η+1}(P) of the double ansatz spaces.

A BG pencil is a DG pencil whose middle block is Π^BG = [Σ^BG, R] with a
block-diagonal Σ^BG, and whose right factor is tied to the left one:
B2 = [B11^B, C11^B] and C2 = C21^B.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .ansatz import _random_matrix, factored_pencil, random_nonsingular
from .double import DGParams, _dims, hankel_block, r_matrix
from .matpoly import DimensionError, MatrixPolynomial, Pencil, block_transpose
from .oracle.verdict import Status, is_regular


@dataclass(frozen=True, eq=False)
class BGParams:
    alpha: Fraction
    B11: np.ndarray
    C11: np.ndarray
    C21: np.ndarray
    eta: int
    eps: int
    n: int

    def __post_init__(self):
        eta, eps, n = self.eta, self.eps, self.n
        if eta < 0 or eta > eps or n < 1:
            raise ValueError("need 0 <= eta <= eps and n >= 1")
        object.__setattr__(self, "alpha", linalg.to_fraction(self.alpha))
        shapes = {
            "B11": ((eta + 1) * n, eta * n),
            "C11": ((eps - eta) * n, eta * n),
            "C21": (eta * n, eta * n),
        }
        for name, shape in shapes.items():
            try:
                mat = linalg.matrix(getattr(self, name), shape)
            except ValueError as exc:
                raise DimensionError(f"{name}: {exc}") from None
            mat.setflags(write=False)
            object.__setattr__(self, name, mat)

    @property
    def B2(self) -> np.ndarray:
        n = self.n
        return np.hstack([block_transpose(self.B11, n, n), block_transpose(self.C11, n, n)])

    @property
    def C2(self) -> np.ndarray:
        return block_transpose(self.C21, self.n, self.n)

    def as_dg(self) -> DGParams:
        """The same parameters in DG form (valid only with Π^BG as middle block)."""
        return DGParams(self.alpha, self.B11, self.C11, self.C21, self.B2, self.C2,
                        self.eta, self.eps, self.n)

    def __eq__(self, other):
        if not isinstance(other, BGParams):
            return NotImplemented
        return (self.alpha == other.alpha
                and (self.eta, self.eps, self.n) == (other.eta, other.eps, other.n)
                and all(linalg.equal(getattr(self, x), getattr(other, x))
                        for x in ("B11", "C11", "C21")))

    __hash__ = None


def sigma_bg(P: MatrixPolynomial, eta: int) -> Pencil:
    """Block diagonal with blocks λP_{k-2j} + P_{k-2j-1}, j = 0..η."""
    k, eps, n = _dims(P, eta)
    size = (eta + 1) * n
    X, Y = linalg.zeros(size, size), linalg.zeros(size, size)
    for j in range(eta + 1):
        sl = slice(j * n, (j + 1) * n)
        X[sl, sl] = P.coeff(k - 2 * j)
        Y[sl, sl] = P.coeff(k - 2 * j - 1)
    return Pencil(X, Y)


def pi_bg(P: MatrixPolynomial, eta: int) -> Pencil:
    sig = sigma_bg(P, eta)
    R = r_matrix(P, eta)
    return Pencil(np.hstack([sig.X, linalg.zeros(*R.shape)]), np.hstack([sig.Y, R]))


def build_bg_pencil(P: MatrixPolynomial, params: BGParams) -> Pencil:
    eta = params.eta
    k, eps, n = _dims(P, eta)
    if (eps, n) != (params.eps, params.n):
        raise DimensionError("parameters do not match the polynomial")
    H = hankel_block(P, eps - eta) * params.alpha
    B1 = np.hstack([params.B11, linalg.zeros((eta + 1) * n, (eps - eta) * n)])
    C1 = linalg.assemble([[params.C11, H],
                          [params.C21, linalg.zeros(eta * n, (eps - eta) * n)]])
    M = pi_bg(P, eta).scale(params.alpha)
    return factored_pencil(M, B1, params.B2, C1, params.C2, eta, eps, n, n)


def is_block_symmetric(L: MatrixPolynomial, n: int) -> bool:
    """Both coefficients equal their own block transposes (n x n blocks)."""
    if L.rows != L.cols or L.rows % n:
        raise DimensionError(f"shape {L.shape} is not square in {n}x{n} blocks")
    return block_transpose(L, n, n) == L


def bg_linearization_condition(params: BGParams, P: MatrixPolynomial) -> bool:
    """α ≠ 0, C21 and C2 = C21^B nonsingular, and P_0 nonsingular unless ε = η.

    C21^B is listed separately because block transposition does not keep a
    matrix nonsingular once η ≥ 2 and n ≥ 2.
    """
    if params.alpha == 0:
        return False
    if not (linalg.is_nonsingular(params.C21) and linalg.is_nonsingular(params.C2)):
        return False
    return params.eps == params.eta or linalg.is_nonsingular(P.coeff(0))


def bg_condition_verdict(params: BGParams, P: MatrixPolynomial) -> Status:
    holds = bg_linearization_condition(params, P)
    if is_regular(P):
        return Status.YES if holds else Status.NO
    if holds and params.eps == params.eta:
        return Status.YES
    return Status.SUFFICIENT_ONLY


def bg_dimension(k: int, eta: int, n: int) -> int:
    return k * eta * n * n + 1


def coefficient_preset(P: MatrixPolynomial, eta: int) -> BGParams:
    """α = 1, B11 = 0, and C11, C21 filled row by row with -P_k, -P_{k-1}, ...

    For k = 7, η = 2 this gives C11 = [-P7 -P6; -P5 -P4] and
    C21 = [-P3 -P2; -P1 -P0].
    """
    k, eps, n = _dims(P, eta)
    s = eps - eta
    if (s + eta) * eta != k + 1 and eta:
        raise ValueError("the preset needs exactly k+1 blocks to fill C11 and C21")
    blocks = [-P.coeff(k - i) for i in range((s + eta) * eta)]
    C = linalg.zeros((s + eta) * n, eta * n)
    for idx, b in enumerate(blocks):
        r, c = divmod(idx, eta)
        C[r * n:(r + 1) * n, c * n:(c + 1) * n] = b
    return BGParams(1, linalg.zeros((eta + 1) * n, eta * n), C[:s * n], C[s * n:],
                    eta, eps, n)


def random_bg_params(seed: int, k: int, eta: int, n: int, invertible: bool = False,
                     nonzero_alpha: bool = False) -> BGParams:
    """Integer entries uniform in [-3, 3]; ``invertible`` redraws C21 until
    both it and its block transpose are nonsingular."""
    eps = k - eta - 1
    rng = random.Random(seed)
    alpha = rng.randint(-3, 3)
    while nonzero_alpha and alpha == 0:
        alpha = rng.randint(-3, 3)
    B11 = _random_matrix(rng, (eta + 1) * n, eta * n)
    C11 = _random_matrix(rng, (eps - eta) * n, eta * n)
    if invertible:
        while True:
            C21 = random_nonsingular(rng, eta * n)
            if linalg.is_nonsingular(block_transpose(C21, n, n)):
                break
    else:
        C21 = _random_matrix(rng, eta * n, eta * n)
    return BGParams(alpha, B11, C11, C21, eta, eps, n)
