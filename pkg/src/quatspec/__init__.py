"""Quaternionic linear algebra, S-spectra and Fredholm data of structured operators."""

from .errors import *  # noqa: F401,F403
from .quaternion import Quaternion, SphereClass, conjugate_by, qinv, qmul, sphere_rep
from .space import HilbertBasis, gram_schmidt, inner, left_mul, norm
from .qmatrix import (
    adjoint, chi, finite_rank_decomp, kernel, matmul, neumann_inverse, op_norm, rank,
    singular_values,
)
from .spectrum import classify, mu, point_spectrum, scan, spectrum_report
from .operators import S, S_ADJ, IDENTITY, Diagonal, FiniteRank, FiniteVector, scalar, truncate
from .parser import load_env, parse_expr
from .fredholm import (
    FredholmData, Undecidable, fredholm_data, index_symbolic, is_weyl, kernel_dims_oracle, parametrix,
)
from .essential import compare_essential, is_fredholm_at, sigma_partition_at

__version__ = "0.1.0"
