"""Willie-side detection error of the radiometer.

The warden averages |y_w[i]|^2 over a block of N channel uses and compares the
result with a threshold. Conditioned on the fading power g_w the statistic is
Gamma(N, mu/N) under either hypothesis, with mu0 = sigma_w^2 and
mu1 = sigma_w^2 + P g_w. The large-N surrogate replaces both hypotheses by
equal-variance Gaussians and evaluates the error at the midpoint threshold.
"""

import logging
import math
from typing import Tuple, Union

import numpy as np
from scipy import optimize

from .exceptions import DomainError, NumericError
from .models import AveragedBenchmarkResult, DetectorMoments, Threshold, UncertaintyBox
from .specfun import q_func, q_inv, reg_gamma_lower, reg_gamma_upper, scaled_tail
from .types import ArrayLike
from .utils import as_output

logger = logging.getLogger(__name__)

# Search bracket around the analytic LRT threshold, as multiples of it
_BRACKET = (0.5, 1.5)
_XATOL_REL = 1e-10
_VALUE_TIE = 1e-12


def surrogate_xi(power: ArrayLike, sigma_w2: ArrayLike, g_w: float, n_block: int) -> ArrayLike:
    """Large-N surrogate 2 Q(sqrt(N) P g_w / (2 sigma_w^2)).

    Equals 1 at P = 0, strictly decreasing in P and strictly increasing in
    sigma_w^2.
    """
    p = np.asarray(power, dtype=float)
    if np.any(p < 0):
        raise DomainError("power must be >= 0", code="negative_power")
    arg = math.sqrt(n_block) * p * g_w / (2.0 * np.asarray(sigma_w2, dtype=float))
    return as_output(2.0 * np.asarray(q_func(arg)))


def worst_case_surrogate_xi(power: ArrayLike, box: UncertaintyBox, g_w: float, n_block: int) -> ArrayLike:
    """Smallest surrogate over sigma_w^2 in the box: attained at sigma_w2_lo."""
    return surrogate_xi(power, box.sigma_w2_lo, g_w, n_block)


def midpoint_threshold(m: DetectorMoments) -> Threshold:
    """Threshold minimising the total error for equal-variance Gaussians."""
    return Threshold(value=0.5 * (m.mu0 + m.mu1))


def exact_lrt_threshold(m: DetectorMoments) -> Threshold:
    """Crossing point of the two Gamma(N) densities.

    lambda = mu0 mu1 / (mu1 - mu0) * ln(mu1 / mu0), which lies strictly
    between mu0 and the midpoint. Independent of N because both hypotheses
    share the shape parameter.

    Raises:
        DomainError: If mu1 <= mu0 (nothing to detect).
    """
    gap = m.mu1 - m.mu0
    if gap <= 0:
        raise DomainError("exact LRT threshold needs mu1 > mu0", code="no_separation")
    return Threshold(value=m.mu0 * m.mu1 / gap * math.log1p(gap / m.mu0))


def exact_xi_at(
    threshold: Union[Threshold, float],
    power: float,
    sigma_w2: float,
    g_w: float,
    n_block: int,
) -> float:
    """P_FA + P_MD of the radiometer at a given threshold, from gamma CDFs.

    P_FA = Pr(T >= lambda | H0) and P_MD = Pr(T < lambda | H1, g_w).
    """
    lam = float(threshold)
    m = DetectorMoments.from_link(power, sigma_w2, g_w)
    p_fa = reg_gamma_upper(n_block, n_block * lam / m.mu0)
    p_md = reg_gamma_lower(n_block, n_block * lam / m.mu1)
    return float(p_fa + p_md)


def min_exact_xi(power: float, sigma_w2: float, g_w: float, n_block: int) -> Tuple[Threshold, float]:
    """Minimum conditional total detection error over the threshold.

    A bounded scalar search around the analytic LRT threshold cross-checks
    the closed form; the better of the two points is returned, the analytic
    one on ties.

    Raises:
        DomainError: If power is not positive.
        NumericError: If the bounded search does not converge.
    """
    if power <= 0:
        raise DomainError("min_exact_xi requires power > 0", code="non_positive_power")

    moments = DetectorMoments.from_link(power, sigma_w2, g_w)
    analytic = exact_lrt_threshold(moments)
    analytic_value = exact_xi_at(analytic, power, sigma_w2, g_w, n_block)

    lo, hi = analytic.value * _BRACKET[0], analytic.value * _BRACKET[1]
    result = optimize.minimize_scalar(
        lambda lam: exact_xi_at(lam, power, sigma_w2, g_w, n_block),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": _XATOL_REL * analytic.value},
    )
    if not result.success:
        raise NumericError(
            f"Threshold search failed: {result.message}",
            code="bracket_failure",
            details={
                "bracket": (lo, hi),
                "analytic_threshold": analytic.value,
                "power": power,
                "sigma_w2": sigma_w2,
                "g_w": g_w,
                "n_block": n_block,
                "iterations": int(getattr(result, "nfev", 0)),
            },
        )

    numeric_value = float(result.fun)
    rel_gap = abs(result.x - analytic.value) / analytic.value
    logger.debug(
        f"LRT cross-check P={power:g}: analytic={analytic.value:.12g} "
        f"numeric={result.x:.12g} rel_gap={rel_gap:.3g}"
    )

    # Differences below rounding level are noise of a flat objective
    if analytic_value - numeric_value > _VALUE_TIE:
        logger.warning(
            f"Numeric threshold {result.x:.12g} beats analytic LRT "
            f"{analytic.value:.12g} at P={power:g} by {analytic_value - numeric_value:.3g}"
        )
        return Threshold(value=float(result.x)), numeric_value
    return analytic, analytic_value


def averaged_xi(power: float, sigma_w2: float, omega_w: float, n_block: int) -> AveragedBenchmarkResult:
    """Surrogate averaged over g_w ~ Exp(mean omega_w).

    Closed form 1 - 2 exp(eta^2 / 2) Q(eta) with
    eta = 2 sigma_w^2 / (sqrt(N) P omega_w). Benchmark only: it does not give
    a closed-form power ceiling.

    Raises:
        DomainError: If any input is not positive.
    """
    if power <= 0 or sigma_w2 <= 0 or omega_w <= 0 or n_block <= 0:
        raise DomainError("averaged_xi requires positive inputs", code="non_positive_input")
    eta = 2.0 * sigma_w2 / (math.sqrt(n_block) * power * omega_w)
    xi_bar = 1.0 - 2.0 * scaled_tail(eta)
    return AveragedBenchmarkResult(eta=eta, xi_bar=min(max(xi_bar, 0.0), 1.0))


def worst_case_averaged_xi(power: float, box: UncertaintyBox, omega_w: float, n_block: int) -> AveragedBenchmarkResult:
    """Smallest averaged benchmark over sigma_w^2 in the box: attained at sigma_w2_lo."""
    return averaged_xi(power, box.sigma_w2_lo, omega_w, n_block)


def covert_power_ceiling(sigma_w2_lo: float, g_w: float, n_block: int, epsilon: float) -> float:
    """Largest power whose surrogate at sigma_w2_lo still reaches 1 - epsilon.

    Returns (2 sigma_w2_lo / (sqrt(N) g_w)) Q^{-1}((1 - epsilon) / 2), and
    +inf when epsilon reaches 1 (no covertness requirement left).

    Raises:
        DomainError: If epsilon is outside (0, 1].
    """
    if not 0.0 < epsilon <= 1.0:
        raise DomainError("epsilon must lie in (0, 1]", code="epsilon_range")
    target = 0.5 * (1.0 - epsilon)
    if target <= 0.0:
        return math.inf
    return 2.0 * sigma_w2_lo / (math.sqrt(n_block) * g_w) * q_inv(target)
