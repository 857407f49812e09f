"""Smith normal form over Q[λ] by elementary row and column operations."""

from __future__ import annotations

from .polynomial import (ONE, BitLimitExceeded, ScalarPolynomial, _as_entries,
                         bit_limit)

InvariantFactorList = list[ScalarPolynomial]


def smith_form(A) -> InvariantFactorList:
    """Nonzero invariant factors d_1 | d_2 | ... | d_r (monic), r = rank.

    Pivot rule: the nonzero entry of least degree, ties broken by smallest
    (row, col).  A pivot that fails to divide the remaining block is fixed
    by adding the offending row to the pivot row and reducing again.
    """
    M = [list(r) for r in _as_entries(A)]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    limit = bit_limit()
    factors: InvariantFactorList = []
    for t in range(min(rows, cols)):
        if not _move_min_to(M, t, rows, cols):
            break
        while True:
            _check_bits(M, t, rows, cols, limit)
            changed = False
            piv = M[t][t]
            for i in range(t + 1, rows):
                if not M[i][t].is_zero():
                    q = M[i][t] // piv
                    for j in range(t, cols):
                        if not M[t][j].is_zero():
                            M[i][j] = M[i][j] - q * M[t][j]
                    changed = changed or not M[i][t].is_zero()
            for j in range(t + 1, cols):
                if not M[t][j].is_zero():
                    q = M[t][j] // piv
                    for i in range(t, rows):
                        if not M[i][t].is_zero():
                            M[i][j] = M[i][j] - q * M[i][t]
                    changed = changed or not M[t][j].is_zero()
            if changed:
                # a remainder of lower degree sits in row or column t
                _move_min_to(M, t, rows, cols, line_only=True)
                continue
            bad = next((i for i in range(t + 1, rows)
                        for j in range(t + 1, cols) if not piv.divides(M[i][j])), None)
            if bad is None:
                break
            for j in range(t, cols):
                M[t][j] = M[t][j] + M[bad][j]
        factors.append(M[t][t].monic())
    return factors


def _move_min_to(M, t, rows, cols, line_only=False) -> bool:
    """Swap a least-degree nonzero entry into position (t, t).

    With ``line_only`` the search is restricted to row t and column t,
    which is where remainders appear during reduction.
    """
    best = None
    if line_only:
        cells = [(i, t) for i in range(t, rows)] + [(t, j) for j in range(t + 1, cols)]
    else:
        cells = ((i, j) for i in range(t, rows) for j in range(t, cols))
    for i, j in cells:
        p = M[i][j]
        if not p.is_zero() and (best is None or p.degree < best[0]):
            best = (p.degree, i, j)
    if best is None:
        return False
    _, i, j = best
    if i != t:
        M[t], M[i] = M[i], M[t]
    if j != t:
        for r in M:
            r[t], r[j] = r[j], r[t]
    return True


def _check_bits(M, t, rows, cols, limit):
    total = sum(M[i][j].bits() for i in range(t, rows) for j in range(t, cols))
    if total > limit:
        raise BitLimitExceeded("Smith form coefficients exceeded the bit ceiling")


def nontrivial(factors: InvariantFactorList) -> InvariantFactorList:
    """Drop the unit factors."""
    return [f for f in factors if f != ONE]


def is_divisibility_chain(factors: InvariantFactorList) -> bool:
    return all(a.divides(b) for a, b in zip(factors, factors[1:]))


def determinant_from_factors(factors: InvariantFactorList) -> ScalarPolynomial:
    out = ONE
    for f in factors:
        out = out * f
    return out
