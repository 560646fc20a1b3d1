"""Symmetric Toeplitz and circulant matrices stored by their first row.

Dense matrices are plain ``float64`` numpy arrays of shape ``(M, M)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


def _frozen_row(row) -> np.ndarray:
    arr = np.array(row, dtype=np.float64).reshape(-1) if np.ndim(row) else None
    if arr is None or arr.size == 0:
        raise DomainError("row must be a non-empty sequence of reals")
    if not np.all(np.isfinite(arr)):
        raise DomainError("row entries must be finite")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SymmetricToeplitz:
    """Real symmetric Toeplitz matrix with first row ``rho_0 .. rho_{M-1}``."""

    row: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "row", _frozen_row(self.row))

    @property
    def order(self) -> int:
        return self.row.size

    def __eq__(self, other):
        if not isinstance(other, SymmetricToeplitz):
            return NotImplemented
        return np.array_equal(self.row, other.row)


@dataclass(frozen=True)
class ExponentialToeplitz:
    """The exponential-decay case, ``row[m] = rho**m``."""

    rho: float
    order: int

    def __post_init__(self):
        if not 0.0 <= self.rho <= 1.0:
            raise DomainError(f"rho must lie in [0, 1], got {self.rho!r}")
        if int(self.order) != self.order or self.order < 1:
            raise DomainError(f"order must be a positive integer, got {self.order!r}")


@dataclass(frozen=True, eq=False)
class Circulant:
    """Real circulant matrix with first row ``c_0 .. c_{M-1}``.

    Row ``i`` of the dense form is row 0 shifted cyclically ``i`` places right.
    """

    row: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "row", _frozen_row(self.row))

    @property
    def order(self) -> int:
        return self.row.size

    def __eq__(self, other):
        if not isinstance(other, Circulant):
            return NotImplemented
        return np.array_equal(self.row, other.row)


def _exp_powers(rho: float, M: int) -> np.ndarray:
    # explicit loop keeps 0**0 == 1 and avoids pow() differences across platforms
    out = np.empty(M)
    out[0] = 1.0
    for m in range(1, M):
        out[m] = rho**m
    return out


def expand_exponential(spec: ExponentialToeplitz) -> SymmetricToeplitz:
    return SymmetricToeplitz(_exp_powers(float(spec.rho), int(spec.order)))


def exponential(rho: float, M: int) -> SymmetricToeplitz:
    """Shorthand for ``expand_exponential(ExponentialToeplitz(rho, M))``."""
    return expand_exponential(ExponentialToeplitz(rho, M))


def materialize_toeplitz(t: SymmetricToeplitz) -> np.ndarray:
    M = t.order
    idx = np.arange(M)
    return t.row[np.abs(idx[:, None] - idx[None, :])].copy()


def materialize_circulant(c: Circulant) -> np.ndarray:
    M = c.order
    idx = np.arange(M)
    return c.row[(idx[None, :] - idx[:, None]) % M].copy()


def cyclic_shift_power(M: int, m: int) -> np.ndarray:
    """Dense ``P**m`` where ``P`` shifts a vector one place to the right."""
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")
    if not 0 <= m < M:
        raise DomainError(f"shift power must satisfy 0 <= m < {M}, got {m}")
    row = np.zeros(M)
    row[m] = 1.0
    return materialize_circulant(Circulant(row))


def is_symmetric_circulant(c: Circulant) -> bool:
    """True iff ``c_m == c_{M-m}`` exactly for every ``1 <= m <= M-1``."""
    r = c.row
    return bool(np.array_equal(r[1:], r[1:][::-1]))


def frobenius_norm(a: np.ndarray) -> float:
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    return float(np.sqrt(np.sum(a * a)))


def toeplitz_offdiag_norm(r) -> float:
    """Frobenius norm of the symmetric Toeplitz matrix with first row ``r``.

    The m-th off-diagonal occurs ``2 (M - m)`` times, the main diagonal ``M`` times.
    """
    r = np.asarray(r, dtype=np.float64).reshape(-1)
    M = r.size
    if M == 0:
        raise DomainError("row must be non-empty")
    weights = 2.0 * (M - np.arange(M))
    weights[0] = M
    return float(np.sqrt(np.dot(weights, r * r)))


def common_correlation(rho: float, M: int) -> tuple[np.ndarray, np.ndarray]:
    """Equicorrelation matrix ``rho 11^T + (1 - rho) I`` and its eigenvalues.

    Eigenvalues come back in descending order when ``rho >= 0``:
    ``1 + (M-1) rho`` once, then ``1 - rho`` repeated ``M - 1`` times.
    """
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")
    rho = float(rho)
    dense = np.full((M, M), rho)
    np.fill_diagonal(dense, 1.0)
    values = np.full(M, 1.0 - rho)
    values[0] = 1.0 + (M - 1) * rho
    return dense, values
