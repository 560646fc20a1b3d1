"""Circulant approximations of symmetric Toeplitz matrices and their residuals.

Two circulants are built here:

* the Frobenius-nearest circulant, whose m-th entry is the weighted average
  ``((M - m) rho_m + m rho_{M-m}) / M``;
* the classical spectral (Grenander-Szego style) circulant for the
  exponential case, ``(rho^m + rho^(M-m)) / (1 - rho^M)``.

For a symmetric circulant ``C`` the residual ``Sigma - C`` is again symmetric
Toeplitz, so its norm is an O(M) sum over off-diagonals. All "scaled" norms
below are ``(1/M) ||Sigma - C||_F^2``.
"""

import decimal
import enum
import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Optional

import numpy as np

from .errors import DomainError, PreconditionError
from .toeplitz_core import (
    Circulant,
    SymmetricToeplitz,
    exponential,
    is_symmetric_circulant,
    toeplitz_offdiag_norm,
)


class ApproximationMethod(enum.Enum):
    NEAREST = "nearest"
    GS = "gs"
    COMMON = "common"

    @classmethod
    def parse(cls, text: str) -> "ApproximationMethod":
        try:
            return cls(text.lower())
        except ValueError:
            raise DomainError(f"unknown method {text!r}") from None


@dataclass(frozen=True)
class ResidualReport:
    method: ApproximationMethod
    rho: Optional[float]
    order: int
    scaled_norm_sq_direct: float
    scaled_norm_sq_closed: Optional[float] = None
    leading_term: Optional[float] = None


def nearest_circulant(t: SymmetricToeplitz) -> Circulant:
    """Frobenius-nearest circulant: ``c_m = rho_m + (m/M)(rho_{M-m} - rho_m)``.

    Evaluated as ``((M - m) rho_m + m rho_{M-m}) / M``; the two products are
    swapped at index ``M - m`` and IEEE addition commutes, so ``c_m == c_{M-m}``
    holds bit for bit.
    """
    M = t.order
    rho = t.row
    m = np.arange(M)
    mirrored = rho[(M - m) % M]
    c = ((M - m) * rho + m * mirrored) / M
    c[0] = rho[0]
    return Circulant(c)


def gs_circulant(rho: float, M: int) -> Circulant:
    """Spectral circulant of the exponential Toeplitz matrix, valid for ``rho < 1``."""
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"spectral circulant needs 0 <= rho < 1, got {rho!r}")
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")
    denom = 1.0 - rho**M
    c = np.empty(M)
    c[0] = 1.0
    for m in range(1, M):
        c[m] = (rho**m + rho ** (M - m)) / denom
    return Circulant(c)


def residual_offdiagonals(t: SymmetricToeplitz, c: Circulant) -> np.ndarray:
    """Off-diagonals ``r_m = rho_m - c_m`` of the symmetric Toeplitz residual."""
    if t.order != c.order:
        raise DomainError(f"order mismatch: {t.order} vs {c.order}")
    if not is_symmetric_circulant(c):
        raise PreconditionError("residual is only Toeplitz for a symmetric circulant")
    return t.row - c.row


def scaled_residual_norm_sq_direct(t: SymmetricToeplitz, c: Circulant) -> float:
    return toeplitz_offdiag_norm(residual_offdiagonals(t, c)) ** 2 / t.order


def _check_closed(rho: float, M: int) -> None:
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"closed forms need 0 <= rho < 1 (use the direct path), got {rho!r}")
    if M < 2:
        raise DomainError(f"closed forms need M >= 2, got {M}")


_WIDE = decimal.Context(prec=60)


def scaled_residual_norm_sq_closed_nearest(rho: float, M: int) -> float:
    # double precision cancels badly near rho = 1 with small M
    _check_closed(rho, M)
    with decimal.localcontext(_WIDE):
        r = Decimal(rho)
        p = r * r
        q = 1 - p
        pM1 = p ** (M - 1)
        p2M = p**M
        bracket = (1 + pM1) / q - (1 + p + pM1 - 3 * p2M) / (M * q * q) - pM1 * (M - 1) / M
        return float(2 * p / (M * q) * bracket - r**M * (M - 1 / Decimal(M)) / 3)


def scaled_residual_norm_sq_closed_gs(rho: float, M: int) -> float:
    _check_closed(rho, M)
    p = rho * rho
    p2M = rho ** (2 * M)
    scale = 1.0 - rho**M
    inner = p * (1.0 - p2M) ** 2 / ((1.0 - p) ** 2 * M) + (M - 2) * p2M
    return 2.0 / (scale * scale) * inner


def scaled_residual_norm_sq_general(t: SymmetricToeplitz) -> float:
    """``(2/M^3) sum_m (M-m) m^2 (rho_m - rho_{M-m})^2`` for the nearest circulant."""
    M = t.order
    if M == 1:
        return 0.0
    m = np.arange(1, M, dtype=np.float64)
    a = t.row[1:]
    b = t.row[1:][::-1]
    terms = (M - m) * m * m * (a * a - 2.0 * b * a + b * b)
    return float(2.0 / M**3 * math.fsum(terms))


def _check_leading(rho: float, M: int) -> None:
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"leading term needs 0 <= rho < 1, got {rho!r}")
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")


def leading_term_nearest(rho: float, M: int) -> float:
    """``sqrt(2) rho / ((1 - rho^2) sqrt(M))``."""
    _check_leading(rho, M)
    return math.sqrt(2.0) * rho / ((1.0 - rho * rho) * math.sqrt(M))


def leading_term_gs(rho: float, M: int) -> float:
    _check_leading(rho, M)
    return leading_term_nearest(rho, M) / (1.0 - rho**M)


def nearest_eigenvalues(t: SymmetricToeplitz) -> np.ndarray:
    """Eigenvalues of the nearest circulant straight from the Toeplitz row, indexed by k."""
    M = t.order
    idx = np.arange(M, dtype=np.int64)
    theta = 2.0 * np.pi * (np.outer(idx, idx) % M) / M
    weights = 2.0 * (M - idx) / M * t.row
    weights[0] = 0.0
    return t.row[0] + np.cos(theta) @ weights


def circulant_for(method: ApproximationMethod, rho: float, M: int) -> Circulant:
    """The circulant a method assigns to the exponential Toeplitz matrix."""
    if method is ApproximationMethod.NEAREST:
        return nearest_circulant(exponential(rho, M))
    if method is ApproximationMethod.GS:
        return gs_circulant(rho, M)
    return common_circulant(rho, M)


def common_circulant(rho: float, M: int) -> Circulant:
    """Equicorrelation baseline ``rho 11^T + (1 - rho) I`` seen as a symmetric circulant."""
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")
    row = np.full(M, float(rho))
    row[0] = 1.0
    return Circulant(row)


def residual_report(method: ApproximationMethod, rho: float, M: int) -> ResidualReport:
    """Direct and closed-form scaled residual norms for the exponential case.

    Closed-form and leading-term fields are ``None`` where they are undefined
    (``rho == 1``, ``M < 2``, or the equicorrelation baseline).
    """
    t = exponential(rho, M)
    c = circulant_for(method, rho, M)
    direct = scaled_residual_norm_sq_direct(t, c)
    closed = leading = None
    if rho < 1.0 and method is not ApproximationMethod.COMMON:
        if method is ApproximationMethod.NEAREST:
            leading = leading_term_nearest(rho, M)
            if M >= 2:
                closed = scaled_residual_norm_sq_closed_nearest(rho, M)
        else:
            leading = leading_term_gs(rho, M)
            if M >= 2:
                closed = scaled_residual_norm_sq_closed_gs(rho, M)
    return ResidualReport(method, float(rho), M, direct, closed, leading)
