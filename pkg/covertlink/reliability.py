"""Bob-side outage model under quasi-static Rayleigh fading."""

import logging
import math

import numpy as np

from .exceptions import DomainError
from .models import OutageQuery, UncertaintyBox
from .types import ArrayLike
from .utils import as_output

logger = logging.getLogger(__name__)

_LN2 = math.log(2.0)


def outage_array(power: ArrayLike, rate: ArrayLike, omega_b: ArrayLike, sigma_b2: ArrayLike) -> ArrayLike:
    """Vectorised 1 - exp(-(2^R - 1) sigma_b^2 / (P Omega_b)).

    R = 0 gives 0 and P = 0 with R > 0 gives 1, so grids over the closed
    quadrant never produce NaN.
    """
    p, r, om, s2 = np.broadcast_arrays(
        np.asarray(power, dtype=float),
        np.asarray(rate, dtype=float),
        np.asarray(omega_b, dtype=float),
        np.asarray(sigma_b2, dtype=float),
    )
    # 2^R - 1 via expm1
    gap = np.expm1(r * _LN2) * s2
    denom = p * om
    with np.errstate(divide="ignore", invalid="ignore"):
        exponent = np.where(denom > 0, gap / np.where(denom > 0, denom, 1.0), np.inf)
    exponent = np.where(r <= 0, 0.0, exponent)
    out = -np.expm1(-exponent)
    return as_output(np.clip(out, 0.0, 1.0))


def outage_probability(q: OutageQuery) -> float:
    """Outage probability Pr(log2(1 + P |h_b|^2 / sigma_b^2) < R).

    Args:
        q: Power, rate, Bob's average channel power and noise power.

    Returns:
        Outage probability; 0 when R = 0 and 1 when P = 0 < R.
    """
    return outage_array(q.power, q.rate, q.omega_b, q.sigma_b2)


def worst_case_outage(power: float, rate: float, box: UncertaintyBox, sigma_b2: float) -> float:
    """Largest outage probability over omega_b in [omega_b_lo, omega_b_hi].

    Outage strictly decreases in omega_b, so the supremum sits at the lower
    endpoint.
    """
    return outage_array(power, rate, box.omega_b_lo, sigma_b2)


def max_rate_array(power: ArrayLike, omega_b: ArrayLike, sigma_b2: ArrayLike, delta: float) -> ArrayLike:
    """Vectorised log2(1 + (P Omega_b / sigma_b^2) ln(1 / (1 - delta)))."""
    if not 0.0 < delta < 1.0:
        raise DomainError("delta must lie in (0, 1)", code="delta_range")
    p = np.asarray(power, dtype=float)
    if np.any(p < 0):
        raise DomainError("power must be >= 0", code="negative_power")
    snr_margin = p * np.asarray(omega_b, dtype=float) / np.asarray(sigma_b2, dtype=float)
    rate = np.log1p(snr_margin * -math.log1p(-delta)) / _LN2
    return as_output(rate)


def max_rate_given_power(power: float, omega_b: float, sigma_b2: float, delta: float) -> float:
    """Largest rate whose outage probability at (power, omega_b) equals delta.

    Args:
        power: Transmit power (0 gives rate 0).
        omega_b: Bob's average channel power the rate must withstand.
        sigma_b2: Bob's noise power.
        delta: Outage target in (0, 1).

    Raises:
        DomainError: If delta is outside (0, 1) or power is negative.
    """
    return max_rate_array(power, omega_b, sigma_b2, delta)
