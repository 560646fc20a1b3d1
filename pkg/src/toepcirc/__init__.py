"""Frobenius-nearest circulant approximation of symmetric Toeplitz matrices."""

from .approximation import (
    ApproximationMethod,
    ResidualReport,
    common_circulant,
    gs_circulant,
    leading_term_gs,
    leading_term_nearest,
    nearest_circulant,
    nearest_eigenvalues,
    residual_offdiagonals,
    residual_report,
    scaled_residual_norm_sq_closed_gs,
    scaled_residual_norm_sq_closed_nearest,
    scaled_residual_norm_sq_direct,
    scaled_residual_norm_sq_general,
)
from .circulant_eigen import (
    EigenSystem,
    circulant_eigenvalues,
    circulant_eigenvector,
    symmetric_circulant_eigenvalues,
    unit_root,
)
from .errors import ConvergenceError, DomainError, PreconditionError
from .toeplitz_core import (
    Circulant,
    ExponentialToeplitz,
    SymmetricToeplitz,
    common_correlation,
    cyclic_shift_power,
    expand_exponential,
    exponential,
    frobenius_norm,
    is_symmetric_circulant,
    materialize_circulant,
    materialize_toeplitz,
    toeplitz_offdiag_norm,
)

__version__ = "0.1.0"
