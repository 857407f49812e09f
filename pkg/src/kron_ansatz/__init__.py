"""Strong linearizations of matrix polynomials from block Kronecker ansatz spaces."""

from .ansatz import (AnsatzParams, block_kronecker_pencil, build_pencil, check_ansatz,
                     decompose, f_pencil, frobenius_companion, g_dimension,
                     linearization_condition, phi, random_params, recover_eigenvector,
                     sigma_pencil)
from .blocksym import (BGParams, bg_dimension, bg_linearization_condition,
                       build_bg_pencil, coefficient_preset, is_block_symmetric,
                       pi_bg, random_bg_params, sigma_bg)
from .classical import (L1Params, PTableau, dl_basis_pencil, dl_basis_z, dl_pencil,
                        intersection_check, l1_pencil, l1_rank_condition, l2_pencil,
                        p_tableau)
from .double import (DGParams, build_dg_pencil, core_part, decompose_dg,
                     dg_dimension, dg_linearization_condition, hankel_block,
                     normalize_shift, pi_dg, random_dg_params, shift,
                     superpartition_check)
from .matpoly import (DimensionError, MatrixPolynomial, Partition, Pencil,
                      block_transpose, evaluate, from_coeffs, kron, l_pencil,
                      lambda_vector, linear_combine, reversal)
