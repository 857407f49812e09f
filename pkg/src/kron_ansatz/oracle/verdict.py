"""Strong-linearization verdicts from elementary-divisor comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..matpoly import DimensionError, MatrixPolynomial, reversal
from .polynomial import poly_det
from .smith import InvariantFactorList, nontrivial, smith_form


class Status(str, Enum):
    YES = "yes"
    NO = "no"
    # the available theory gives sufficiency only, so no decision is made
    SUFFICIENT_ONLY = "sufficient-only"


@dataclass(frozen=True)
class Verdict:
    status: Status
    finite_factors_L: InvariantFactorList
    finite_factors_P: InvariantFactorList
    infinite_factors_L: InvariantFactorList
    infinite_factors_P: InvariantFactorList
    notes: tuple[str, ...] = field(default=())

    @property
    def is_strong_linearization(self) -> Status:
        return self.status

    def to_json(self) -> dict:
        return {
            "strong_linearization": self.status.value,
            "finite_factors": [f.to_json() for f in self.finite_factors_L],
            "infinite_factors": [f.to_json() for f in self.infinite_factors_L],
            "finite_factors_poly": [f.to_json() for f in self.finite_factors_P],
            "infinite_factors_poly": [f.to_json() for f in self.infinite_factors_P],
            "notes": list(self.notes),
        }


def is_regular(P: MatrixPolynomial) -> bool:
    """Square with determinant not identically zero."""
    return P.is_square() and not poly_det(P).is_zero()


def is_strong_linearization(L: MatrixPolynomial, P: MatrixPolynomial,
                            grade: int | None = None) -> Verdict:
    """Compare the finite (L vs P) and infinite (rev_1 L vs rev_k P)
    nontrivial invariant factors, plus the identity padding count.

    For regular P a match is decisive.  For singular or rectangular P a
    match cannot settle the question because minimal indices are not
    compared, so the status is ``sufficient-only``; a mismatch is still a
    definite no.
    """
    if L.degree > 1:
        raise DimensionError(f"expected a pencil, got degree {L.degree}")
    k = P.grade if grade is None else grade
    if k < P.degree:
        raise ValueError("grade below the degree of P")
    notes: list[str] = []
    sL, sP = smith_form(L), smith_form(P)
    rL = smith_form(reversal(L.with_grade(1), 1))
    rP = smith_form(reversal(P.with_grade(k), k))
    fL, fP, iL, iP = nontrivial(sL), nontrivial(sP), nontrivial(rL), nontrivial(rP)

    s = L.rows - P.rows
    sizes_ok = s >= 0 and L.cols - P.cols == s
    if not sizes_ok:
        notes.append("sizes do not allow an identity padding")
    rank_ok = len(sL) == len(sP) + s
    if not rank_ok:
        notes.append(f"rank {len(sL)} of the pencil differs from rank {len(sP)} + {s}")
    if fL != fP:
        notes.append("finite elementary divisors differ")
    if iL != iP:
        notes.append("infinite elementary divisors differ")
    matched = sizes_ok and rank_ok and fL == fP and iL == iP

    if P.is_square() and len(sP) == P.rows:
        if L.is_square() and len(sL) < L.rows:
            notes.append("pencil not regular")
        status = Status.YES if matched else Status.NO
    else:
        notes.append("polynomial is singular; minimal indices are not compared")
        status = Status.SUFFICIENT_ONLY if matched else Status.NO
    return Verdict(status, fL, fP, iL, iP, tuple(notes))
