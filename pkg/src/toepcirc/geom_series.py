"""Truncated geometric power sums and the moments that express them.

``sum_{n=1}^N n^k p^n`` is written through the raw moments ``G^(j)(0)`` of a
geometric variable on ``{1, 2, ...}`` with ``P(X = n) = p^(n-1) (1 - p)``::

    p/(1-p) * [ (1 - p^N) G^(k)(0) - p^N sum_{l=1}^k C(k, l) N^l G^(k-l)(0) ]

The bracket cancels badly when ``p^N`` is close to one (small N, p near 1),
so the moment expression is evaluated in exact rational arithmetic starting
from the binary value of ``p`` and rounded to float once at the end.
"""

import decimal
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

MAX_K = 20


@lru_cache(maxsize=None)
def _stirling_table(k: int) -> tuple[tuple[int, ...], ...]:
    table = [[0] * (k + 1) for _ in range(k + 1)]
    table[0][0] = 1
    for n in range(1, k + 1):
        for j in range(1, n + 1):
            table[n][j] = j * table[n - 1][j] + table[n - 1][j - 1]
    return tuple(tuple(r) for r in table)


def stirling2(k: int, j: int) -> int:
    """Stirling number of the second kind ``S(k, j)``."""
    if k < 0 or j < 0:
        raise DomainError("Stirling indices must be non-negative")
    if k > MAX_K:
        raise DomainError(f"k must not exceed {MAX_K}, got {k}")
    if j > k:
        return 0
    return _stirling_table(k)[k][j]


@lru_cache(maxsize=None)
def _pascal(k: int) -> tuple[int, ...]:
    row = [1]
    for _ in range(k):
        row = [1] + [a + b for a, b in zip(row, row[1:])] + [1]
    return tuple(row)


def _check_p(p: float) -> None:
    if not 0.0 <= p < 1.0:
        raise DomainError(f"p must lie in [0, 1), got {p!r}")


def _check_k(k: int) -> None:
    if k < 0 or k > MAX_K:
        raise DomainError(f"k must lie in [0, {MAX_K}], got {k}")


def _exact_moment(k: int, p: Fraction) -> Fraction:
    # E[X^k] = sum_j S(k, j) j! p^(j-1) / (1-p)^j  (factorial moments of Geo on {1,2,...})
    if k == 0:
        return Fraction(1)
    q = 1 - p
    return sum(
        (stirling2(k, j) * math.factorial(j) * p ** (j - 1) / q**j for j in range(1, k + 1)),
        Fraction(0),
    )


def geometric_moment(k: int, p: float) -> float:
    """``E[X^k]`` for ``X`` geometric on ``{1, 2, ...}`` with success probability ``1 - p``."""
    _check_k(k)
    _check_p(p)
    return float(_exact_moment(k, Fraction(p)))


@dataclass(frozen=True)
class GeometricMomentTable:
    """Moments ``G^(0)(0) .. G^(max_k)(0)`` for one value of ``p``."""

    p: float
    max_k: int
    moments: tuple[float, ...]

    @classmethod
    def build(cls, p: float, max_k: int) -> "GeometricMomentTable":
        _check_k(max_k)
        _check_p(p)
        exact = Fraction(p)
        return cls(p, max_k, tuple(float(_exact_moment(k, exact)) for k in range(max_k + 1)))


def truncated_power_sum(N: int, k: int, p: float) -> float:
    """``sum_{n=1}^N n^k p^n`` through the first ``k`` geometric moments."""
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    _check_k(k)
    _check_p(p)
    if p == 0.0:
        return 0.0
    pe = Fraction(p)
    moments = [_exact_moment(j, pe) for j in range(k + 1)]
    binom = _pascal(k)
    pN = pe**N
    tail = sum((binom[l] * N**l * moments[k - l] for l in range(1, k + 1)), Fraction(0))
    return float(pe / (1 - pe) * ((1 - pN) * moments[k] - pN * tail))


def _check_rho(rho: float, M: int) -> None:
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"closed form needs 0 <= rho < 1, got {rho!r}")
    if M < 2:
        raise DomainError(f"closed form needs M >= 2, got {M}")


# working precision for closed forms that cancel near rho = 1
_WIDE = decimal.Context(prec=60)


def power_sum_k1(M: int, rho: float) -> float:
    """``sum_{m=1}^{M-1} m rho^(2m)`` in closed form, evaluated at 60 digits then rounded."""
    _check_rho(rho, M)
    with decimal.localcontext(_WIDE):
        p = Decimal(rho) ** 2
        pN = p ** (M - 1)
        return float(p / (1 - p) * ((1 - pN) / (1 - p) - pN * (M - 1)))


def power_sum_k2(M: int, rho: float) -> float:
    """``sum_{m=1}^{M-1} m^2 rho^(2m)`` in closed form, evaluated at 60 digits then rounded."""
    _check_rho(rho, M)
    with decimal.localcontext(_WIDE):
        p = Decimal(rho) ** 2
        pN = p ** (M - 1)
        q = 1 - p
        return float(
            p / q * ((1 - pN) * (1 + p) / (q * q) - 2 * pN / q * (M - 1) - pN * (M - 1) ** 2)
        )


def square_cube_correction(M: int, rho: float) -> float:
    """``2 rho^M sum_{m=1}^{M-1} (m^2/M^2 - m^3/M^3)``, which reduces to ``rho^M (M - 1/M) / 6``."""
    if M < 1:
        raise DomainError(f"M must be positive, got {M}")
    if not 0.0 <= rho <= 1.0:
        raise DomainError(f"rho must lie in [0, 1], got {rho!r}")
    return rho**M * (M - 1.0 / M) / 6.0
