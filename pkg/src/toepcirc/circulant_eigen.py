"""Closed-form eigensystems of circulant matrices.

Every circulant of order M is diagonalised by the vectors
``x_k = (1, w^k, w^{2k}, ..., w^{(M-1)k})`` with ``w = exp(2 pi i / M)``.
Eigenvalues are indexed by ``k`` and are *not* sorted by magnitude.

Angles are always reduced as ``2 pi ((m k) mod M) / M`` before calling
``cos``/``sin`` so that large ``M`` does not accumulate phase error.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PreconditionError
from .toeplitz_core import Circulant, is_symmetric_circulant


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenvalues ``values[k]`` of a circulant, paired with eigenvector ``x_k``."""

    order: int
    values: np.ndarray

    def eigenvector(self, k: int) -> np.ndarray:
        return circulant_eigenvector(self.order, k)

    @property
    def max_abs_imag(self) -> float:
        return float(np.max(np.abs(self.values.imag)))


def unit_root(M: int, j: int) -> complex:
    """``w**j`` for ``w = exp(2 pi i / M)``, with the exponent reduced mod M."""
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")
    theta = 2.0 * math.pi * (j % M) / M
    return complex(math.cos(theta), math.sin(theta))


def _reduced_angles(M: int) -> np.ndarray:
    # theta[k, m] = 2 pi ((m k) mod M) / M
    idx = np.arange(M, dtype=np.int64)
    return 2.0 * np.pi * (np.outer(idx, idx) % M) / M


def circulant_eigenvalues(c: Circulant) -> EigenSystem:
    M = c.order
    theta = _reduced_angles(M)
    re = np.cos(theta) @ c.row
    im = np.sin(theta) @ c.row
    values = re + 1j * im
    values.flags.writeable = False
    return EigenSystem(order=M, values=values)


def circulant_eigenvector(M: int, k: int) -> np.ndarray:
    """Unnormalised eigenvector ``x_k``; its Euclidean length is ``sqrt(M)``."""
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")
    if not 0 <= k < M:
        raise DomainError(f"eigenvector index must satisfy 0 <= k < {M}, got {k}")
    theta = 2.0 * np.pi * ((np.arange(M, dtype=np.int64) * k) % M) / M
    return np.cos(theta) + 1j * np.sin(theta)


def symmetric_circulant_eigenvalues(c: Circulant) -> np.ndarray:
    """Real eigenvalues ``c_0 + sum_m c_m cos(2 pi m k / M)`` of a symmetric circulant."""
    if not is_symmetric_circulant(c):
        raise PreconditionError("circulant is not symmetric: c_m != c_{M-m} for some m")
    return np.cos(_reduced_angles(c.order)) @ c.row
