"""Independent checks: exact determinants, Smith forms, strong-linearization
verdicts, ansatz-space dimensions and numeric eigenpairs."""

from .dimension import (MAX_SIDE, OracleSizeError, ansatz_space_basis,
                        ansatz_space_dimension_oracle)
from .eigen import Eigenpair, SingularPencilError, aberth, numeric_eigenpairs, residual
from .polynomial import BitLimitExceeded, ScalarPolynomial, poly_det
from .smith import InvariantFactorList, is_divisibility_chain, nontrivial, smith_form
from .verdict import Status, Verdict, is_regular, is_strong_linearization
