"""Double ansatz spaces DG_{η+1}(P) = G_{η+1}(P) ∩ G_{k-η}(P) for square P.

Members factor as

    [I  B11  0  ] [αΠ^DG_{η,P}   L_η^T ⊗ I_n] [I   0 ]
    [0  C11  αH ] [L_ε ⊗ I_n     0          ] [B2  C2]
    [0  C21  0  ]

where H = H_{ε-η}(P) is an anti-triangular block Hankel matrix.  Blocks are
n x n and η ≤ ε throughout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .ansatz import (_random_matrix, check_ansatz, factored_pencil,
                     random_nonsingular, split_nullspace_part)
from .matpoly import DimensionError, MatrixPolynomial, Pencil
from .oracle.verdict import Status, is_regular


def _dims(P: MatrixPolynomial, eta: int) -> tuple[int, int, int]:
    if not P.is_square():
        raise DimensionError("double ansatz spaces need a square polynomial")
    k = P.grade
    eps = k - eta - 1
    if k < 2 or eta < 0 or eta > eps:
        raise ValueError(f"need 0 <= eta <= eps, got eta={eta}, grade {k}")
    return k, eps, P.rows


@dataclass(frozen=True, eq=False)
class DGParams:
    alpha: Fraction
    B11: np.ndarray
    C11: np.ndarray
    C21: np.ndarray
    B2: np.ndarray
    C2: np.ndarray
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
            "B2": (eta * n, (eps + 1) * n),
            "C2": (eta * n, eta * n),
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
        if not isinstance(other, DGParams):
            return NotImplemented
        return (self.alpha == other.alpha
                and (self.eta, self.eps, self.n) == (other.eta, other.eps, other.n)
                and all(linalg.equal(getattr(self, x), getattr(other, x))
                        for x in ("B11", "C11", "C21", "B2", "C2")))

    __hash__ = None


def hankel_block(P: MatrixPolynomial, s: int) -> np.ndarray:
    """H_s(P): block (i, j) is -P_{s-1-i-j} on and above the anti-diagonal."""
    if not P.is_square():
        raise DimensionError("Hankel block needs a square polynomial")
    if s < 0:
        raise ValueError("size must be nonnegative")
    n = P.rows
    H = linalg.zeros(s * n, s * n)
    for i in range(s):
        for j in range(s - i):
            H[i * n:(i + 1) * n, j * n:(j + 1) * n] = -P.coeff(s - 1 - i - j)
    return H


def sigma_dg(P: MatrixPolynomial, eta: int) -> Pencil:
    """Square truncation of Σ_{η,P}: first block row λP_k+P_{k-1}, ..., P_ε,
    last block column continuing with P_{ε-1}, ..., P_{ε-η}."""
    k, eps, n = _dims(P, eta)
    size = (eta + 1) * n
    X, Y = linalg.zeros(size, size), linalg.zeros(size, size)
    X[:n, :n] = P.coeff(k)
    Y[:n, :n] = P.coeff(k - 1)
    for j in range(1, eta + 1):
        Y[:n, j * n:(j + 1) * n] = P.coeff(k - 1 - j)
    for i in range(1, eta + 1):
        Y[i * n:(i + 1) * n, eta * n:] = P.coeff(eps - i)
    return Pencil(X, Y)


def r_matrix(P: MatrixPolynomial, eta: int) -> np.ndarray:
    """R_{η,P}: zeros above a bottom block row P_{ε-η-1}, ..., P_0."""
    k, eps, n = _dims(P, eta)
    s = eps - eta
    R = linalg.zeros((eta + 1) * n, s * n)
    for j in range(s):
        R[eta * n:, j * n:(j + 1) * n] = P.coeff(s - 1 - j)
    return R


def pi_dg(P: MatrixPolynomial, eta: int) -> Pencil:
    """Π^DG_{η,P} = [Σ^DG, R_{η,P}], a (η+1)n x (ε+1)n pencil with Φ(Π^DG) = P."""
    sig = sigma_dg(P, eta)
    R = r_matrix(P, eta)
    return Pencil(np.hstack([sig.X, linalg.zeros(*R.shape)]), np.hstack([sig.Y, R]))


def _outer_blocks(P: MatrixPolynomial, params: DGParams):
    eta, eps, n = params.eta, params.eps, params.n
    H = hankel_block(P, eps - eta) * params.alpha
    B1 = np.hstack([params.B11, linalg.zeros((eta + 1) * n, (eps - eta) * n)])
    C1 = linalg.assemble([[params.C11, H],
                          [params.C21, linalg.zeros(eta * n, (eps - eta) * n)]])
    return B1, C1


def build_dg_pencil(P: MatrixPolynomial, params: DGParams) -> Pencil:
    k, eps, n = _dims(P, params.eta)
    if (eps, n) != (params.eps, params.n):
        raise DimensionError("parameters do not match the polynomial")
    B1, C1 = _outer_blocks(P, params)
    M = pi_dg(P, params.eta).scale(params.alpha)
    return factored_pencil(M, B1, params.B2, C1, params.C2, params.eta, eps, n, n)


def core_part(P: MatrixPolynomial, eta: int, alpha=1) -> Pencil:
    """The (ε-η)n x (ε-η)n anti-triangular block pencil shared by all members
    of DG_{η+1}(P) with the given α.  With μ = ε-η-1 and 1-based (i, j), the
    block is α(P_{μ-i-j+1} - λP_{μ-i-j+2}), negative indices giving zero."""
    k, eps, n = _dims(P, eta)
    s = eps - eta
    mu = s - 1
    alpha = linalg.to_fraction(alpha)
    X, Y = linalg.zeros(s * n, s * n), linalg.zeros(s * n, s * n)
    for i in range(1, s + 1):
        for j in range(1, s + 1):
            lo, hi = mu - i - j + 1, mu - i - j + 2
            rows, cols = slice((i - 1) * n, i * n), slice((j - 1) * n, j * n)
            if lo >= 0:
                Y[rows, cols] = P.coeff(lo) * alpha
            if hi >= 0:
                X[rows, cols] = -P.coeff(hi) * alpha
    return Pencil(X, Y)


def extract_core(L: MatrixPolynomial, eta: int, eps: int, n: int) -> MatrixPolynomial:
    """Middle block of the 3 x 3 partition with sizes (η+1)n, (ε-η)n, ηn."""
    lo, hi = (eta + 1) * n, (eps + 1) * n
    return L[lo:hi, lo:hi]


def dg_linearization_condition(params: DGParams, P: MatrixPolynomial) -> bool:
    """α ≠ 0, C21 and C2 nonsingular, and P_0 nonsingular unless ε = η."""
    if params.alpha == 0:
        return False
    if not (linalg.is_nonsingular(params.C21) and linalg.is_nonsingular(params.C2)):
        return False
    return params.eps == params.eta or linalg.is_nonsingular(P.coeff(0))


def dg_condition_verdict(params: DGParams, P: MatrixPolynomial) -> Status:
    """Three-valued reading of the condition.

    For regular P the condition decides the question.  For singular P it is
    only known to be sufficient, and only when ε = η; everything else is
    reported as ``sufficient-only`` (no claim either way).
    """
    holds = dg_linearization_condition(params, P)
    if is_regular(P):
        return Status.YES if holds else Status.NO
    if holds and params.eps == params.eta:
        return Status.YES
    return Status.SUFFICIENT_ONLY


def superpartition_check(L: MatrixPolynomial, P: MatrixPolynomial) -> list[int]:
    """All splits η' at which L satisfies the block Kronecker ansatz equation."""
    return sorted(superpartition_alphas(L, P))


def superpartition_alphas(L: MatrixPolynomial, P: MatrixPolynomial) -> dict[int, Fraction]:
    k, n = P.grade, P.rows
    if L.shape != (k * n, k * n):
        raise DimensionError(f"expected a {k * n} x {k * n} pencil, got {L.shape}")
    out = {}
    for eta in range(k):
        alpha = check_ansatz(L, P, eta)
        if alpha is not None:
            out[eta] = alpha
    return out


def dg_dimension(k: int, eta: int, n: int) -> int:
    return 2 * k * eta * n * n + 1


@dataclass(frozen=True, eq=False)
class ShiftPartition:
    """H_{ε-η}(P) = [J; H_i, H_{ε-η-2i}, 0; calH_i, 0, 0]."""

    i: int
    J: np.ndarray
    H: np.ndarray
    calH: np.ndarray
    middle: np.ndarray

    def reassemble(self) -> np.ndarray:
        i = self.i
        n = self.calH.shape[0] // i
        s = self.J.shape[1] // n
        inner = s - 2 * i
        mid = linalg.assemble([[self.H, self.middle, linalg.zeros(inner * n, i * n)]])
        bottom = np.hstack([self.calH, linalg.zeros(i * n, (s - i) * n)])
        return np.vstack([self.J, mid, bottom])


def shift_partition(P: MatrixPolynomial, s: int, i: int) -> ShiftPartition:
    """Partition H_s(P) for a shift by i (1 <= i <= s/2)."""
    if not 1 <= i <= s // 2:
        raise ValueError(f"shift amount {i} out of range 1..{s // 2}")
    n = P.rows
    Hs = hankel_block(P, s)
    return ShiftPartition(
        i=i,
        J=Hs[:i * n, :].copy(),
        H=Hs[i * n:(s - i) * n, :i * n].copy(),
        calH=Hs[(s - i) * n:, :i * n].copy(),
        middle=Hs[i * n:(s - i) * n, i * n:(s - i) * n].copy(),
    )


def omega(P: MatrixPolynomial, eta: int, i: int) -> Pencil:
    """Ω_{η+i,P}: Π^DG_{η,P} with its last block column continued down by
    P_{ε-η-1}, ..., P_{ε-η-i} and a new bottom row P_{ε-η-i-1}, ..., P_0."""
    k, eps, n = _dims(P, eta)
    s = eps - eta
    if not 0 <= i <= s // 2:
        raise ValueError(f"shift amount {i} out of range 0..{s // 2}")
    rows, cols = (eta + i + 1) * n, (eps - i + 1) * n
    sig = sigma_dg(P, eta)
    X, Y = linalg.zeros(rows, cols), linalg.zeros(rows, cols)
    top = (eta + 1) * n
    X[:top, :top] = sig.X
    Y[:top, :top] = sig.Y
    for r in range(1, i + 1):
        Y[(eta + r) * n:(eta + r + 1) * n, eta * n:top] = P.coeff(s - r)
    for c in range(1, eps - eta - i + 1):
        Y[(eta + i) * n:, (eta + c) * n:(eta + c + 1) * n] = P.coeff(s - i - c)
    return Pencil(X, Y)


@dataclass(frozen=True, eq=False)
class ShiftResult:
    """The pencil re-expressed at split (η+i, ε-i) with Ω as middle block."""

    partition: ShiftPartition
    alpha: Fraction
    B11: np.ndarray
    C11: np.ndarray
    C21: np.ndarray
    B2: np.ndarray
    C2: np.ndarray
    omega: Pencil
    eta: int
    eps: int
    n: int

    def pencil(self) -> Pencil:
        eta, eps, n = self.eta, self.eps, self.n
        s = eps - eta
        B1 = np.hstack([self.B11, linalg.zeros((eta + 1) * n, s * n)])
        C1 = linalg.assemble([[self.C11, self.partition.middle * self.alpha],
                              [self.C21, linalg.zeros(eta * n, s * n)]])
        return factored_pencil(self.omega.scale(self.alpha), B1, self.B2, C1, self.C2,
                               eta, eps, n, n)


def shift(P: MatrixPolynomial, params: DGParams, i: int) -> ShiftResult:
    """Re-express a DG_{η+1}(P) member as a DG_{η+i+1}(P) member.

    The pieces of the partitioned Hankel block are taken from αH so that the
    reassembled pencil equals the original for every α.
    """
    eta, eps, n = params.eta, params.eps, params.n
    s = eps - eta
    part = shift_partition(P, s, i)
    a = params.alpha
    C11 = params.C11
    B11 = np.hstack([np.vstack([params.B11, C11[:i * n, :]]),
                     linalg.zeros((eta + i + 1) * n, i * n)])
    C11_new = np.hstack([C11[i * n:(s - i) * n, :], part.H * a])
    C21_new = linalg.assemble([[C11[(s - i) * n:, :], part.calH * a],
                               [params.C21, linalg.zeros(eta * n, i * n)]])
    tail = np.hstack([linalg.zeros(i * n, (eta + 1) * n), part.J * a,
                      linalg.zeros(i * n, eta * n)])
    both = np.vstack([np.hstack([params.B2, params.C2]), tail])
    new_eps = eps - i
    B2_new = both[:, :(new_eps + 1) * n]
    C2_new = both[:, (new_eps + 1) * n:]
    return ShiftResult(part, a, linalg.normalize(B11), linalg.normalize(C11_new),
                       linalg.normalize(C21_new), linalg.normalize(B2_new),
                       linalg.normalize(C2_new), omega(P, eta, i), eta + i, new_eps, n)


def decompose_dg(L: MatrixPolynomial, P: MatrixPolynomial, eta: int) -> DGParams | None:
    """Parameters of L as a DG_{η+1}(P) member in Π^DG form, or None."""
    k, eps, n = _dims(P, eta)
    alpha = check_ansatz(L, P, eta)
    if alpha is None or check_ansatz(L, P, eps) != alpha:
        return None
    s = eps - eta
    top, left = (eta + 1) * n, (eps + 1) * n
    C1 = L[top:, :left].coeff(1)[:, n:]
    C2 = L[:top, left:].coeff(1)[n:, :]
    parts = split_nullspace_part(L[:top, :left] - pi_dg(P, eta).scale(alpha), eta, eps, n, n)
    if parts is None:
        return None
    B1, B2 = parts
    params = DGParams(alpha, B1[:, :eta * n], C1[:s * n, :eta * n], C1[s * n:, :eta * n],
                      B2, C2, eta, eps, n)
    if build_dg_pencil(P, params) != L:
        return None
    return params


def normalize_shift(P: MatrixPolynomial, result: ShiftResult) -> DGParams:
    """Turn a shifted expression into Π^DG form at the new split."""
    params = decompose_dg(result.pencil(), P, result.eta)
    if params is None:
        raise ArithmeticError("shifted pencil is not a member at the new split")
    return params


def random_dg_params(seed: int, k: int, eta: int, n: int, invertible: bool = False,
                     nonzero_alpha: bool = False) -> DGParams:
    """Integer entries uniform in [-3, 3]; ``invertible`` redraws C21 and C2
    until nonsingular."""
    eps = k - eta - 1
    rng = random.Random(seed)
    alpha = rng.randint(-3, 3)
    while nonzero_alpha and alpha == 0:
        alpha = rng.randint(-3, 3)
    B11 = _random_matrix(rng, (eta + 1) * n, eta * n)
    C11 = _random_matrix(rng, (eps - eta) * n, eta * n)
    B2 = _random_matrix(rng, eta * n, (eps + 1) * n)
    if invertible:
        C21 = random_nonsingular(rng, eta * n)
        C2 = random_nonsingular(rng, eta * n)
    else:
        C21 = _random_matrix(rng, eta * n, eta * n)
        C2 = _random_matrix(rng, eta * n, eta * n)
    return DGParams(alpha, B11, C11, C21, B2, C2, eta, eps, n)
