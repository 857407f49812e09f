"""Ansatz-space dimensions from an explicitly assembled linear system.

The unknowns are the entries of X and Y in L(λ) = λX + Y together with the
scalar α.  For every requested split the product
((Λ_η^T ⊗ I_m) ⊕ I_{εn}) L ((Λ_ε ⊗ I_n) ⊕ I_{ηm}) - α(P ⊕ 0) must vanish
coefficient by coefficient.  The outer factors are built from their
definition and the equations are read off entry by entry, so nothing from
the factorized characterizations is reused.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import numpy as np

from .. import linalg
from ..matpoly import (DimensionError, MatrixPolynomial, Pencil, direct_sum,
                       identity, kron, lambda_vector)

MAX_SIDE = 12


class OracleSizeError(RuntimeError):
    """The requested system is too large for dense exact elimination."""


def _row_terms(A: MatrixPolynomial):
    """Map row i to its nonzero terms (col, degree, coefficient)."""
    out = {}
    for d, c in enumerate(A.coeffs):
        for (i, j), x in np.ndenumerate(c):
            if x != 0:
                out.setdefault(i, []).append((j, d, x))
    return out


class _System:
    """Sparse rows {unknown: coefficient} reduced into echelon form on arrival."""

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.pivots: dict[int, dict[int, Fraction]] = {}

    def add(self, row: dict[int, Fraction]):
        row = {c: v for c, v in row.items() if v != 0}
        while row:
            c = min(row)
            piv = self.pivots.get(c)
            if piv is None:
                inv = 1 / row[c]
                self.pivots[c] = {k: v * inv for k, v in row.items()}
                return
            f = row[c]
            for k, v in piv.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def null_basis(self) -> list[dict[int, Fraction]]:
        free = [c for c in range(self.nvars) if c not in self.pivots]
        order = sorted(self.pivots, reverse=True)
        basis = []
        for f in free:
            x = {f: Fraction(1)}
            for p in order:
                val = -sum(v * x.get(k, 0) for k, v in self.pivots[p].items() if k != p)
                if val:
                    x[p] = val
            basis.append(x)
        return basis


def _shape_for(P: MatrixPolynomial, eta: int) -> tuple[int, int]:
    k, m, n = P.grade, P.rows, P.cols
    eps = k - eta - 1
    if eps < 0 or eta < 0:
        raise ValueError(f"split {eta} out of range for grade {k}")
    return (eta + 1) * m + eps * n, (eps + 1) * n + eta * m


def assemble_system(P: MatrixPolynomial, splits: Iterable[int],
                    block_symmetric: bool = False) -> tuple[_System, tuple[int, int]]:
    splits = sorted(set(splits))
    if not splits:
        raise ValueError("at least one split is required")
    shapes = {_shape_for(P, eta) for eta in splits}
    if len(shapes) != 1:
        raise DimensionError(f"splits {splits} need pencils of different sizes {shapes}")
    rows, cols = shapes.pop()
    if max(rows, cols) > MAX_SIDE:
        raise OracleSizeError(f"pencil side {max(rows, cols)} exceeds the oracle limit {MAX_SIDE}")
    k, m, n = P.grade, P.rows, P.cols
    nv = 2 * rows * cols + 1
    alpha = nv - 1

    def xvar(i, j):
        return i * cols + j

    def yvar(i, j):
        return rows * cols + i * cols + j

    system = _System(nv)
    for eta in splits:
        eps = k - eta - 1
        left = direct_sum(kron(lambda_vector(eta).T, identity(m)), identity(eps * n))
        right = direct_sum(kron(lambda_vector(eps), identity(n)), identity(eta * m))
        lt = _row_terms(left)
        rt = _row_terms(right)
        eqs: dict[tuple[int, int, int], dict[int, Fraction]] = {}
        for r, lterms in lt.items():
            for a, p, lc in lterms:
                for b in range(cols):
                    for c, q, rc in rt.get(b, ()):
                        w = lc * rc
                        for var, d in ((xvar(a, b), p + q + 1), (yvar(a, b), p + q)):
                            eq = eqs.setdefault((r, c, d), {})
                            eq[var] = eq.get(var, 0) + w
        for d in range(k + 1):
            coeff = P.coeff(d)
            for i in range(m):
                for j in range(n):
                    if coeff[i, j] != 0:
                        eq = eqs.setdefault((i, j, d), {})
                        eq[alpha] = eq.get(alpha, 0) - coeff[i, j]
        for key in sorted(eqs):
            system.add(eqs[key])
    if block_symmetric:
        if rows != cols or rows % n:
            raise DimensionError("block symmetry needs a square pencil with n x n blocks")
        nb = rows // n
        for base in (0, rows * cols):
            for bi in range(nb):
                for bj in range(bi + 1, nb):
                    for p in range(n):
                        for q in range(n):
                            u = base + (bi * n + p) * cols + bj * n + q
                            v = base + (bj * n + p) * cols + bi * n + q
                            system.add({u: Fraction(1), v: Fraction(-1)})
    return system, (rows, cols)


def ansatz_space_dimension_oracle(P: MatrixPolynomial, splits: Iterable[int] | int,
                                  block_symmetric: bool = False) -> int:
    """Dimension of the space of pencils satisfying the ansatz equation at
    every split in ``splits`` with one shared α (optionally block-symmetric)."""
    if isinstance(splits, int):
        splits = [splits]
    system, _ = assemble_system(P, splits, block_symmetric)
    return system.nvars - system.rank


def ansatz_space_basis(P: MatrixPolynomial, splits: Iterable[int] | int,
                       block_symmetric: bool = False) -> list[tuple[Pencil, Fraction]]:
    """A basis of the same solution space as (pencil, α) pairs."""
    if isinstance(splits, int):
        splits = [splits]
    system, (rows, cols) = assemble_system(P, splits, block_symmetric)
    out = []
    for vec in system.null_basis():
        X, Y = linalg.zeros(rows, cols), linalg.zeros(rows, cols)
        for var, val in vec.items():
            if var < rows * cols:
                X[divmod(var, cols)] = val
            elif var < 2 * rows * cols:
                Y[divmod(var - rows * cols, cols)] = val
        out.append((Pencil(X, Y, shape=(rows, cols)), vec.get(system.nvars - 1, Fraction(0))))
    return out
