"""Brute-force reference computations.

Nothing here reuses the closed forms it is meant to check: eigenvalues come
from cyclic Jacobi rotations on the dense matrix, the nearest circulant from
averaging cyclic diagonals, power sums from a compensated loop, and the
spectral circulant from a truncated symbol sampled on the unit circle.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConvergenceError, DomainError
from .toeplitz_core import Circulant, frobenius_norm


@dataclass(frozen=True)
class JacobiSettings:
    # None means 1e-12 * ||A||_F, resolved per input
    off_diagonal_tolerance: Optional[float] = None
    max_sweeps: int = 100

    def __post_init__(self):
        if self.off_diagonal_tolerance is not None and not self.off_diagonal_tolerance > 0:
            raise DomainError("off-diagonal tolerance must be positive")
        if self.max_sweeps < 1:
            raise DomainError("max_sweeps must be at least 1")


def _off_mass(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return math.sqrt(float(np.sum(off * off)))


def jacobi_eigenvalues(a, settings: JacobiSettings = JacobiSettings()) -> np.ndarray:
    """All eigenvalues of a dense symmetric matrix, in descending order."""
    a = np.array(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.abs(a - a.T) <= 1e-12):
        raise DomainError("matrix is not symmetric")
    n = a.shape[0]
    tol = settings.off_diagonal_tolerance
    if tol is None:
        tol = 1e-12 * frobenius_norm(a)

    for _ in range(settings.max_sweeps):
        if _off_mass(a) <= tol:
            return np.sort(np.diag(a))[::-1].copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                sign = 1.0 if theta >= 0.0 else -1.0
                # hypot avoids overflow of theta**2 when a_pq is tiny
                t = sign / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    if _off_mass(a) <= tol:
        return np.sort(np.diag(a))[::-1].copy()
    raise ConvergenceError(f"Jacobi did not converge in {settings.max_sweeps} sweeps")


def cyclic_diagonal_average(a) -> Circulant:
    """Mean of each cyclic diagonal ``{(i, j): (j - i) mod M = m}``.

    The Frobenius objective for a circulant decouples over cyclic diagonals,
    so these means are the nearest circulant to any square matrix.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    M = a.shape[0]
    sums = [0.0] * M
    for i in range(M):
        for j in range(M):
            sums[(j - i) % M] += a[i, j]
    return Circulant([s / M for s in sums])


def direct_power_sum(N: int, k: int, p: float) -> float:
    """Literal ``sum_{n=1}^N n^k p^n`` with Kahan compensation."""
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    total = 0.0
    comp = 0.0
    for n in range(1, N + 1):
        y = float(n) ** k * p**n - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def gs_truncation_bound(rho: float, K: int) -> float:
    """Upper bound ``rho^K / (1 - rho)`` on the symbol truncation error."""
    return rho**K / (1.0 - rho)


def gs_entries_spectral(rho: float, M: int, K: int = 200) -> Circulant:
    """Spectral circulant from samples of the truncated symbol.

    ``f_K(x) = sum_{|k| <= K} rho^|k| e^{ikx}`` is sampled at ``2 pi j / M`` and
    inverted with an explicit DFT sum for ``m >= 1``; ``c_0`` is ``rho_0 = 1``.
    """
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"rho must lie in [0, 1), got {rho!r}")
    if M < 1 or K < 1:
        raise DomainError("M and K must be positive")
    ks = np.arange(1, K + 1)
    coeffs = np.array([rho**k for k in ks])
    x = 2.0 * np.pi * np.arange(M) / M
    symbol = 1.0 + 2.0 * np.cos(np.outer(x, ks)) @ coeffs

    idx = np.arange(M, dtype=np.int64)
    phase = 2.0 * np.pi * (np.outer(idx, idx) % M) / M
    entries = (np.cos(phase) + 1j * np.sin(phase)) @ symbol / M
    if np.max(np.abs(entries.imag)) > 1e-10:
        raise ArithmeticError("spectral entries have a non-negligible imaginary part")
    row = entries.real.copy()
    row[0] = 1.0
    return Circulant(row)


def dense_residual_norm(sigma, c) -> float:
    sigma = np.asarray(sigma, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    if sigma.shape != c.shape:
        raise DomainError(f"order mismatch: {sigma.shape} vs {c.shape}")
    return frobenius_norm(sigma - c)
