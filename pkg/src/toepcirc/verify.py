"""Oracle-equivalence and property suites behind ``toepcirc verify``.

Each suite draws its random inputs from ``numpy.random.default_rng([seed, n])``
where ``n`` is the suite number, so reports are reproducible per seed and the
suites do not share random state.

Library functions are looked up through their modules at call time, so a
patched implementation (for example a sign-flipped closed form) is what gets
checked.
"""

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import approximation as approx
from . import circulant_eigen as ceig
from . import geom_series as geo
from . import oracle
from . import toeplitz_core as core

RHO_GRID = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)
M_GRID = range(2, 101)
P_GRID = tuple(i / 10 for i in range(1, 10))


@dataclass(frozen=True)
class SuiteResult:
    number: int
    name: str
    samples: int
    worst: float
    tolerance: float
    passed: bool
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"[{status}] suite {self.number:2d} {self.name:<30s} samples={self.samples:<6d} "
            f"worst={self.worst:.3e} tol={self.tolerance:.1e}"
        )


# ---------------------------------------------------------------------------
# random inputs
# ---------------------------------------------------------------------------


def random_symmetric_row(rng: np.random.Generator, M: int) -> np.ndarray:
    """Row with ``c_m == c_{M-m}`` exactly, entries uniform in [-1, 1]."""
    row = rng.uniform(-1.0, 1.0, size=M)
    for m in range(1, M // 2 + 1):
        row[M - m] = row[m]
    return row


def random_asymmetric_row(rng: np.random.Generator, M: int, gap: float = 0.1) -> np.ndarray:
    """Row in [-1, 1] with at least one pair ``|c_m - c_{M-m}| >= gap`` (needs M >= 3)."""
    if M < 3:
        raise ValueError("an asymmetric circulant needs M >= 3")
    row = rng.uniform(-1.0, 1.0, size=M)
    candidates = [m for m in range(1, M) if 2 * m != M]
    m = int(rng.choice(candidates))
    diff = rng.uniform(gap, 1.0)
    if row[m] - diff >= -1.0:
        row[M - m] = row[m] - diff
    else:
        row[M - m] = row[m] + diff
    return row


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b != 0 else abs(a - b)


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def _closed_vs_direct(method, closed_fn):
    worst, n = 0.0, 0
    for rho in RHO_GRID:
        for M in M_GRID:
            t = core.exponential(rho, M)
            direct = approx.scaled_residual_norm_sq_direct(t, approx.circulant_for(method, rho, M))
            closed = closed_fn(rho, M)
            worst = max(worst, abs(closed - direct) / (1.0 + direct))
            n += 1
    return n, worst


def suite_closed_nearest(rng, full):
    return _closed_vs_direct(
        approx.ApproximationMethod.NEAREST,
        lambda r, M: approx.scaled_residual_norm_sq_closed_nearest(r, M),
    )


def suite_closed_gs(rng, full):
    return _closed_vs_direct(
        approx.ApproximationMethod.GS,
        lambda r, M: approx.scaled_residual_norm_sq_closed_gs(r, M),
    )


def optimality_cells(rng, count):
    cells = [(rho, M) for rho in RHO_GRID for M in M_GRID]
    picks = rng.choice(len(cells), size=count, replace=False)
    return [cells[i] for i in sorted(picks)]


def suite_optimality(rng, full):
    """Worst margin ``d(nearest) - d(other)``; any positive value is a violation."""
    cells = optimality_cells(rng, 20 if full else 6)
    draws = 1000 if full else 200
    worst, n = -math.inf, 0
    for rho, M in cells:
        t = core.exponential(rho, M)
        near = approx.nearest_circulant(t)
        d_near = core.toeplitz_offdiag_norm(approx.residual_offdiagonals(t, near))
        if rho < 1.0:
            gs = approx.gs_circulant(rho, M)
            d_gs = core.toeplitz_offdiag_norm(approx.residual_offdiagonals(t, gs))
            worst = max(worst, d_near - d_gs)
            n += 1
        for _ in range(draws):
            delta = random_symmetric_row(rng, M)
            # a symmetric circulant row has dense Frobenius norm sqrt(M) * ||row||
            scale = rng.uniform(0.0, 1.0) / (math.sqrt(M) * np.linalg.norm(delta))
            other = core.Circulant(near.row + scale * delta)
            d_other = core.toeplitz_offdiag_norm(approx.residual_offdiagonals(t, other))
            worst = max(worst, d_near - d_other)
            n += 1
    return n, worst


def suite_diagonal_average(rng, full):
    worst, n = 0.0, 0
    for _ in range(100 if full else 30):
        M = int(rng.integers(1, 33))
        t = core.SymmetricToeplitz(rng.uniform(-1.0, 1.0, size=M))
        ref = oracle.cyclic_diagonal_average(core.materialize_toeplitz(t))
        got = approx.nearest_circulant(t)
        worst = max(worst, float(np.max(np.abs(got.row - ref.row))))
        n += 1
    return n, worst


def suite_real_forward(rng, full):
    """Worst ``max_k |Im| / (1e-9 (1 + ||C||))``; must stay at or below 1."""
    worst, n = 0.0, 0
    for _ in range(200 if full else 50):
        M = int(rng.integers(1, 33))
        c = core.Circulant(random_symmetric_row(rng, M))
        bound = 1e-9 * (1.0 + core.frobenius_norm(core.materialize_circulant(c)))
        worst = max(worst, ceig.circulant_eigenvalues(c).max_abs_imag / bound)
        n += 1
    return n, worst


def suite_real_converse(rng, full):
    """Reports ``bound / max_k |Im|``; must stay below 1 (imaginary part detected)."""
    worst, n = 0.0, 0
    for _ in range(200 if full else 50):
        M = int(rng.integers(3, 33))
        c = core.Circulant(random_asymmetric_row(rng, M))
        bound = 1e-9 * (1.0 + core.frobenius_norm(core.materialize_circulant(c)))
        imag = ceig.circulant_eigenvalues(c).max_abs_imag
        worst = max(worst, bound / imag if imag > 0 else math.inf)
        n += 1
    return n, worst


def suite_jacobi(rng, full):
    worst, n = 0.0, 0
    for _ in range(50 if full else 15):
        M = int(rng.integers(1, 17))
        c = core.Circulant(random_symmetric_row(rng, M))
        formula = np.sort(ceig.symmetric_circulant_eigenvalues(c))[::-1]
        ref = oracle.jacobi_eigenvalues(core.materialize_circulant(c))
        worst = max(worst, float(np.max(np.abs(formula - ref))))
        n += 1
    return n, worst


def suite_eigenpairs(rng, full):
    """Worst ``||C x_k - lambda_k x_k|| / (1 + ||C||_F)``."""
    worst, n = 0.0, 0
    for _ in range(50 if full else 15):
        M = int(rng.integers(1, 65))
        c = core.Circulant(rng.uniform(-1.0, 1.0, size=M))
        dense = core.materialize_circulant(c)
        scale = 1.0 + core.frobenius_norm(dense)
        system = ceig.circulant_eigenvalues(c)
        for k in range(M):
            x = ceig.circulant_eigenvector(M, k)
            err = np.linalg.norm(dense @ x - system.values[k] * x)
            worst = max(worst, float(err) / scale)
            n += 1
    return n, worst


def suite_power_sums(rng, full):
    worst, n = 0.0, 0
    for k in range(6):
        for p in P_GRID:
            for N in range(1, 31):
                worst = max(
                    worst,
                    _rel(geo.truncated_power_sum(N, k, p), oracle.direct_power_sum(N, k, p)),
                )
                n += 1
    return n, worst


def reconstruct_from_power_sums(rho: float, M: int) -> float:
    """Residual norm rebuilt from the k = 1, 2 power sums and the cube correction."""
    return (
        2.0 * (geo.power_sum_k1(M, rho) / M - geo.power_sum_k2(M, rho) / M**2)
        - 2.0 * geo.square_cube_correction(M, rho)
    )


def suite_reconstruction(rng, full):
    """Worst relative gap; absolute where the residual vanishes (M = 2, rho = 0)."""
    worst, n = 0.0, 0
    for rho in RHO_GRID:
        for M in M_GRID:
            closed = approx.scaled_residual_norm_sq_closed_nearest(rho, M)
            err = abs(reconstruct_from_power_sums(rho, M) - closed)
            worst = max(worst, err if M == 2 or closed == 0.0 else err / abs(closed))
            n += 1
    return n, worst


def suite_general_closed(rng, full):
    worst, n = 0.0, 0
    for _ in range(100 if full else 30):
        M = int(rng.integers(2, 33))
        t = core.SymmetricToeplitz(rng.uniform(-1.0, 1.0, size=M))
        direct = approx.scaled_residual_norm_sq_direct(t, approx.nearest_circulant(t))
        worst = max(worst, _rel(approx.scaled_residual_norm_sq_general(t), direct))
        n += 1
    return n, worst


def suite_spectral_gs(rng, full):
    worst, n = 0.0, 0
    for rho in RHO_GRID[:-1]:
        for M in range(1, 41 if full else 13):
            spectral = oracle.gs_entries_spectral(rho, M, K=200)
            worst = max(worst, float(np.max(np.abs(spectral.row - approx.gs_circulant(rho, M).row))))
            n += 1
    return n, worst


def suite_moments(rng, full):
    worst, n = 0.0, 0
    for k in range(6):
        for p in P_GRID:
            # tail of sum n^k p^(n-1)(1-p) beyond n = 2000 is far below 1e-13 for p <= 0.9
            ref = oracle.direct_power_sum(2000, k, p) * (1.0 - p) / p
            worst = max(worst, _rel(geo.geometric_moment(k, p), ref))
            n += 1
    return n, worst


def suite_leading_ratio(rng, full):
    """``|sqrt(scaled norm) / leading term - 1|`` at M = 400."""
    worst, n = 0.0, 0
    M = 400
    for rho in (0.5, 0.9):
        t = core.exponential(rho, M)
        direct = approx.scaled_residual_norm_sq_direct(t, approx.nearest_circulant(t))
        ratio = math.sqrt(direct) / approx.leading_term_nearest(rho, M)
        worst = max(worst, abs(ratio - 1.0))
        n += 1
    return n, worst


CONVERGENCE_ORDERS = (50, 100, 200, 400)


def gs_ratio_deviations(rho: float) -> list[float]:
    """``|‖R_nearest‖ / ((1 - rho^M) ‖R_gs‖) - 1|`` from dense residuals."""
    out = []
    for M in CONVERGENCE_ORDERS:
        t = core.exponential(rho, M)
        sigma = core.materialize_toeplitz(t)
        near = oracle.dense_residual_norm(
            sigma, core.materialize_circulant(approx.nearest_circulant(t))
        )
        gs = oracle.dense_residual_norm(sigma, core.materialize_circulant(approx.gs_circulant(rho, M)))
        out.append(abs(near / ((1.0 - rho**M) * gs) - 1.0))
    return out


def suite_gs_ratio(rng, full):
    """Final deviation, or ``inf`` when the deviations are not strictly decreasing."""
    worst, n = 0.0, 0
    for rho in (0.5, 0.9):
        devs = gs_ratio_deviations(rho)
        n += len(devs)
        if any(b >= a for a, b in zip(devs, devs[1:])):
            return n, math.inf
        worst = max(worst, devs[-1])
    return n, worst


@dataclass(frozen=True)
class Suite:
    number: int
    name: str
    run: Callable
    tolerance: float
    full_only: bool = False


SUITES = (
    Suite(1, "closed_vs_direct_nearest", suite_closed_nearest, 1e-10),
    Suite(2, "closed_vs_direct_gs", suite_closed_gs, 1e-10),
    Suite(3, "nearest_optimality", suite_optimality, 0.0),
    Suite(4, "nearest_vs_diagonal_average", suite_diagonal_average, 1e-12),
    Suite(5, "real_spectrum_symmetric", suite_real_forward, 1.0),
    Suite(6, "complex_spectrum_asymmetric", suite_real_converse, 1.0),
    Suite(7, "eigenvalues_vs_jacobi", suite_jacobi, 1e-8),
    Suite(8, "eigenpair_residual", suite_eigenpairs, 1e-9),
    Suite(9, "truncated_power_sum", suite_power_sums, 1e-12),
    Suite(10, "power_sum_reconstruction", suite_reconstruction, 1e-10),
    Suite(11, "general_closed_form", suite_general_closed, 1e-10),
    Suite(12, "spectral_gs_entries", suite_spectral_gs, 1e-8),
    Suite(13, "geometric_moments", suite_moments, 1e-12),
    Suite(14, "leading_term_ratio_m400", suite_leading_ratio, 0.05, full_only=True),
    Suite(15, "gs_ratio_convergence", suite_gs_ratio, 0.05, full_only=True),
)


def run_suites(seed: int = 0, level: str = "quick") -> list[SuiteResult]:
    if level not in ("quick", "full"):
        raise ValueError(f"unknown level {level!r}")
    full = level == "full"
    results = []
    for suite in SUITES:
        if suite.full_only and not full:
            continue
        rng = np.random.default_rng([seed, suite.number])
        start = time.perf_counter()
        n, worst = suite.run(rng, full)
        elapsed = time.perf_counter() - start
        # optimality allows margin <= 0; the rest compare against a positive tolerance
        ok = worst <= suite.tolerance if math.isfinite(worst) else False
        if suite.number == 6:
            ok = worst < suite.tolerance
        results.append(SuiteResult(suite.number, suite.name, n, worst, suite.tolerance, ok, elapsed))
    return results
