"""Block Kronecker ansatz spaces G_{η+1}(P).

A pencil L of size ((η+1)m + εn) x ((ε+1)n + ηm) lies in G_{η+1}(P) when

    ((Λ_η^T ⊗ I_m) ⊕ I_{εn}) L ((Λ_ε ⊗ I_n) ⊕ I_{ηm}) = αP ⊕ 0

for some scalar α.  Every such pencil factors uniquely as

    [I  B1] [αΣ_{η,P}      L_η^T ⊗ I_m] [I   0 ]
    [0  C1] [L_ε ⊗ I_n     0          ] [B2  C2]

and the free parameters (α, B1, B2, C1, C2) are collected in
``AnsatzParams``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .matpoly import (DimensionError, MatrixPolynomial, Partition, Pencil,
                      as_pencil, block_assemble, direct_sum, identity, kron,
                      l_pencil, lambda_vector)


@dataclass(frozen=True, eq=False)
class AnsatzParams:
    """Free parameters of a G_{η+1}(P) member for an m x n polynomial."""

    alpha: Fraction
    B1: np.ndarray
    B2: np.ndarray
    C1: np.ndarray
    C2: np.ndarray
    eta: int
    eps: int
    m: int
    n: int

    def __post_init__(self):
        eta, eps, m, n = self.eta, self.eps, self.m, self.n
        if min(eta, eps) < 0 or min(m, n) < 1:
            raise ValueError("split must be nonnegative and dimensions positive")
        object.__setattr__(self, "alpha", linalg.to_fraction(self.alpha))
        shapes = {
            "B1": ((eta + 1) * m, eps * n),
            "B2": (eta * m, (eps + 1) * n),
            "C1": (eps * n, eps * n),
            "C2": (eta * m, eta * m),
        }
        for name, shape in shapes.items():
            try:
                mat = linalg.matrix(getattr(self, name), shape)
            except ValueError as exc:
                raise DimensionError(f"{name}: {exc}") from None
            mat.setflags(write=False)
            object.__setattr__(self, name, mat)

    @property
    def grade(self) -> int:
        return self.eta + self.eps + 1

    def __eq__(self, other):
        if not isinstance(other, AnsatzParams):
            return NotImplemented
        return (self.alpha == other.alpha
                and (self.eta, self.eps, self.m, self.n) == (other.eta, other.eps, other.m, other.n)
                and all(linalg.equal(getattr(self, x), getattr(other, x))
                        for x in ("B1", "B2", "C1", "C2")))

    __hash__ = None


def _split(P: MatrixPolynomial, eta: int) -> int:
    k = P.grade
    if k < 2:
        raise ValueError("polynomials of grade below 2 are not handled")
    if not 0 <= eta <= k - 1:
        raise ValueError(f"split eta={eta} out of range for grade {k}")
    return k - eta - 1


def sigma_pencil(P: MatrixPolynomial, eta: int) -> Pencil:
    """Σ_{η,P}: first block row λP_k+P_{k-1}, P_{k-2}, ..., P_η and last
    block column P_{η-1}, ..., P_0 below it; Φ(Σ_{η,P}) = P."""
    eps = _split(P, eta)
    k, m, n = P.grade, P.rows, P.cols
    X = linalg.zeros((eta + 1) * m, (eps + 1) * n)
    Y = linalg.zeros((eta + 1) * m, (eps + 1) * n)
    X[:m, :n] = P.coeff(k)
    Y[:m, :n] = P.coeff(k - 1)
    for j in range(1, eps + 1):
        Y[:m, j * n:(j + 1) * n] = P.coeff(k - 1 - j)
    for i in range(1, eta + 1):
        Y[i * m:(i + 1) * m, eps * n:] = P.coeff(eta - i)
    return Pencil(X, Y)


def phi(Q: MatrixPolynomial, eta: int, m: int, n: int) -> MatrixPolynomial:
    """Φ(Q) = (Λ_η^T ⊗ I_m) Q (Λ_ε ⊗ I_n) for a (η+1)m x (ε+1)n pencil Q."""
    if Q.rows != (eta + 1) * m or Q.cols % n:
        raise DimensionError(f"pencil of shape {Q.shape} does not fit eta={eta}, m={m}, n={n}")
    eps = Q.cols // n - 1
    left = kron(lambda_vector(eta).T, identity(m))
    right = kron(lambda_vector(eps), identity(n))
    return left @ Q @ right


def f_pencil(P: MatrixPolynomial, eta: int, alpha=1) -> Pencil:
    """F_{α,η,P} = [αΣ_{η,P}, L_η^T ⊗ I_m; L_ε ⊗ I_n, 0]."""
    eps = _split(P, eta)
    return block_kronecker_pencil(sigma_pencil(P, eta).scale(alpha), eta, eps,
                                  P.rows, P.cols)


def block_kronecker_pencil(M: MatrixPolynomial, eta: int, eps: int,
                           m: int | None = None, n: int | None = None) -> Pencil:
    """Assemble [M, L_η^T ⊗ I_m; L_ε ⊗ I_n, 0] for a (η+1)m x (ε+1)n pencil M."""
    if m is None:
        m = M.rows // (eta + 1)
    if n is None:
        n = M.cols // (eps + 1)
    if M.shape != ((eta + 1) * m, (eps + 1) * n) or M.degree > 1:
        raise DimensionError(
            f"M of shape {M.shape} does not fit eta={eta}, eps={eps}, m={m}, n={n}")
    top_right = kron(l_pencil(eta).T, identity(m))
    bottom_left = kron(l_pencil(eps), identity(n))
    L = block_assemble([[M.with_grade(1), top_right],
                        [bottom_left, linalg.zeros(eps * n, eta * m)]])
    return as_pencil(L, Partition(eta, eps, m, n))


def build_pencil(P: MatrixPolynomial, params: AnsatzParams) -> Pencil:
    """U F_{α,η,P} V with U = [I, B1; 0, C1] and V = [I, 0; B2, C2]."""
    eta, eps, m, n = params.eta, params.eps, params.m, params.n
    if P.shape != (m, n) or P.grade != eta + eps + 1:
        raise DimensionError(
            f"parameters for {m}x{n}, grade {eta + eps + 1} do not match P "
            f"of shape {P.shape}, grade {P.grade}")
    M = sigma_pencil(P, eta).scale(params.alpha)
    return factored_pencil(M, params.B1, params.B2, params.C1, params.C2, eta, eps, m, n)


def factored_pencil(M: MatrixPolynomial, B1, B2, C1, C2, eta: int, eps: int,
                    m: int, n: int) -> Pencil:
    """[I, B1; 0, C1] [M, L_η^T ⊗ I_m; L_ε ⊗ I_n, 0] [I, 0; B2, C2]."""
    F = block_kronecker_pencil(M, eta, eps, m, n)
    try:
        U = linalg.assemble([[identity((eta + 1) * m), linalg.matrix(B1)],
                             [linalg.zeros(eps * n, (eta + 1) * m), linalg.matrix(C1)]])
        V = linalg.assemble([[identity((eps + 1) * n), linalg.zeros((eps + 1) * n, eta * m)],
                             [linalg.matrix(B2), linalg.matrix(C2)]])
    except ValueError as exc:
        raise DimensionError(str(exc)) from None
    return as_pencil(U @ F @ V, Partition(eta, eps, m, n))


def ansatz_product(L: MatrixPolynomial, eta: int, eps: int, m: int, n: int) -> MatrixPolynomial:
    """((Λ_η^T ⊗ I_m) ⊕ I_{εn}) L ((Λ_ε ⊗ I_n) ⊕ I_{ηm}).

    Multiplying by Λ_j ⊗ I only shifts and adds block rows or columns, so
    the product is formed by folding instead of a general matrix product.
    """
    if L.shape != Partition(eta, eps, m, n).shape:
        raise DimensionError(
            f"pencil of shape {L.shape} does not fit eta={eta}, eps={eps}, m={m}, n={n}")
    rows = _fold(list(L.coeffs), eta + 1, m, axis=0)
    both = _fold(rows, eps + 1, n, axis=1)
    return MatrixPolynomial(both, both[0].shape)


def _fold(coeffs: list[np.ndarray], count: int, size: int, axis: int) -> list[np.ndarray]:
    """Replace the first ``count`` blocks (of ``size`` rows or columns) along
    ``axis`` by Σ_i λ^{count-1-i} block_i."""
    grade = len(coeffs) - 1
    head = count * size
    first = coeffs[0]
    shape = list(first.shape)
    shape[axis] -= head - size
    out = [linalg.zeros(*shape) for _ in range(grade + count)]
    for d, c in enumerate(coeffs):
        for i in range(count):
            if axis == 0:
                out[d + count - 1 - i][:size, :] += c[i * size:(i + 1) * size, :]
            else:
                out[d + count - 1 - i][:, :size] += c[:, i * size:(i + 1) * size]
        if axis == 0:
            out[d][size:, :] += c[head:, :]
        else:
            out[d][:, size:] += c[:, head:]
    return out


def check_ansatz(L: MatrixPolynomial, P: MatrixPolynomial, eta: int) -> Fraction | None:
    """Return α if L satisfies the block Kronecker ansatz equation for P at
    split η, otherwise None.  For P = 0 a vanishing product gives α = 0."""
    eps = _split(P, eta)
    m, n = P.rows, P.cols
    R = ansatz_product(L, eta, eps, m, n)
    head = R[0:m, 0:n]
    rest_zero = (R[m:, :].is_zero() and R[0:m, n:].is_zero())
    if not rest_zero:
        return None
    return _scalar_ratio(head, P)


def _scalar_ratio(A: MatrixPolynomial, P: MatrixPolynomial) -> Fraction | None:
    """α with A = αP, or None."""
    alpha = None
    for i in range(max(A.grade, P.grade) + 1):
        for a, p in zip(A.coeff(i).flat, P.coeff(i).flat):
            if p != 0:
                alpha = a / p
                break
        if alpha is not None:
            break
    if alpha is None:
        return Fraction(0) if A.is_zero() else None
    return alpha if (A - P.scale(alpha)).is_zero() else None


def linearization_condition(params: AnsatzParams) -> bool:
    """α ≠ 0 with C1 and C2 nonsingular.

    Sufficient for a strong linearization; for regular square P it is also
    necessary.
    """
    return (params.alpha != 0 and linalg.is_nonsingular(params.C1)
            and linalg.is_nonsingular(params.C2))


def split_nullspace_part(M: MatrixPolynomial, eta: int, eps: int, m: int, n: int
                         ) -> tuple[np.ndarray, np.ndarray] | None:
    """Write M = B1 (L_ε ⊗ I_n) + (L_η^T ⊗ I_m) B2 when possible.

    The representation is unique, so it is solved block row by block row
    and then confirmed by multiplying back.  Returns None when M is not of
    this form, i.e. when Φ(M) ≠ 0.
    """
    if M.shape != ((eta + 1) * m, (eps + 1) * n) or M.degree > 1:
        raise DimensionError(f"M of shape {M.shape} does not fit the split")
    M1, M0 = M.coeff(1), M.coeff(0)
    B1 = linalg.zeros((eta + 1) * m, eps * n)
    B2 = linalg.zeros(eta * m, (eps + 1) * n)

    def blk(A, i, j):
        return A[i * m:(i + 1) * m, j * n:(j + 1) * n]

    for i in range(eta + 1):
        for c in range(1, eps + 1):
            val = blk(M1, i, c)
            if i >= 1:
                val = val - blk(B2, i - 1, c)
            B1[i * m:(i + 1) * m, (c - 1) * n:c * n] = val
        if i < eta:
            for c in range(eps + 1):
                val = -blk(M0, i, c)
                if c < eps:
                    val = val - blk(B1, i, c)
                B2[i * m:(i + 1) * m, c * n:(c + 1) * n] = val
    rebuilt = nullspace_pencil(B1, B2, eta, eps, m, n)
    if rebuilt != M.with_grade(1):
        return None
    return B1, B2


def nullspace_pencil(B1, B2, eta: int, eps: int, m: int, n: int) -> MatrixPolynomial:
    """B1 (L_ε ⊗ I_n) + (L_η^T ⊗ I_m) B2, an element of null(Φ)."""
    B1 = linalg.matrix(B1, ((eta + 1) * m, eps * n))
    B2 = linalg.matrix(B2, (eta * m, (eps + 1) * n))
    return (B1 @ kron(l_pencil(eps), identity(n))
            + kron(l_pencil(eta).T, identity(m)) @ B2)


def decompose(L: MatrixPolynomial, P: MatrixPolynomial, eta: int) -> AnsatzParams | None:
    """Recover the unique parameters of a G_{η+1}(P) member, or None."""
    alpha = check_ansatz(L, P, eta)
    if alpha is None:
        return None
    eps = P.grade - eta - 1
    m, n = P.rows, P.cols
    top, left = (eta + 1) * m, (eps + 1) * n
    L11, L12, L21 = L[:top, :left], L[:top, left:], L[top:, :left]
    C1 = L21.coeff(1)[:, n:]
    C2 = L12.coeff(1)[m:, :]
    parts = split_nullspace_part(L11 - sigma_pencil(P, eta).scale(alpha), eta, eps, m, n)
    if parts is None:
        return None
    params = AnsatzParams(alpha, parts[0], parts[1], C1, C2, eta, eps, m, n)
    if build_pencil(P, params) != L:
        return None
    return params


def frobenius_companion(P: MatrixPolynomial) -> Pencil:
    """λ diag(P_k, I, ..., I) + [P_{k-1} ... P_0; -I 0 ...; ...; 0 ... -I 0]."""
    if not P.is_square():
        raise DimensionError("the Frobenius companion form needs a square polynomial")
    k, n = P.grade, P.rows
    if k < 1:
        raise ValueError("grade must be at least 1")
    X = identity(k * n)
    X[:n, :n] = P.coeff(k)
    Y = linalg.zeros(k * n, k * n)
    for j in range(k):
        Y[:n, j * n:(j + 1) * n] = P.coeff(k - 1 - j)
    for i in range(1, k):
        Y[i * n:(i + 1) * n, (i - 1) * n:i * n] = -identity(n)
    return Pencil(X, Y)


def recover_eigenvector(w, side: str, kind: str, eta: int, eps: int, n: int) -> np.ndarray:
    """Extract an eigenvector of P from one of a G_{η+1}(P) linearization.

    Right finite vectors sit in block ε+1, right infinite ones in block 1,
    left finite in block η+1 and left infinite in block 1 (blocks of
    length n, counted from 1).
    """
    w = np.asarray(w)
    k = eta + eps + 1
    if w.ndim != 1 or w.shape[0] != k * n:
        raise DimensionError(f"expected a vector of length {k * n}, got shape {w.shape}")
    if side not in ("left", "right") or kind not in ("finite", "infinite"):
        raise ValueError("side must be left/right and kind finite/infinite")
    if kind == "infinite":
        idx = 0
    else:
        idx = eps if side == "right" else eta
    return w[idx * n:(idx + 1) * n].copy()


def g_dimension(eta: int, eps: int, m: int, n: int) -> int:
    return (eps * n + eta * m) ** 2 + (eps + eta) * m * n + 1


def _random_matrix(rng: random.Random, rows: int, cols: int) -> np.ndarray:
    return linalg.matrix([[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)],
                         (rows, cols))


def random_nonsingular(rng: random.Random, size: int) -> np.ndarray:
    while True:
        C = _random_matrix(rng, size, size)
        if linalg.is_nonsingular(C):
            return C


def random_params(seed: int, eta: int, eps: int, m: int, n: int,
                  invertible_C: bool = False, nonzero_alpha: bool = False) -> AnsatzParams:
    """Parameters with integer entries drawn uniformly from [-3, 3].

    α is drawn from the same range.  The flags redraw C1, C2 until
    nonsingular and α until nonzero, respectively.
    """
    rng = random.Random(seed)
    alpha = rng.randint(-3, 3)
    while nonzero_alpha and alpha == 0:
        alpha = rng.randint(-3, 3)
    B1 = _random_matrix(rng, (eta + 1) * m, eps * n)
    B2 = _random_matrix(rng, eta * m, (eps + 1) * n)
    if invertible_C:
        C1 = random_nonsingular(rng, eps * n)
        C2 = random_nonsingular(rng, eta * m)
    else:
        C1 = _random_matrix(rng, eps * n, eps * n)
        C2 = _random_matrix(rng, eta * m, eta * m)
    return AnsatzParams(alpha, B1, B2, C1, C2, eta, eps, m, n)
