"""Robust power/rate design and the sweeps built on it.

Reliability is worst at the smallest Bob channel power and covertness is
worst at the smallest Willie noise power, so the robust problem reduces to
the nominal one evaluated at the two lower endpoints of the box. The optimum
is then explicit: power at the covertness ceiling (or the budget) and the
largest rate meeting the outage target at that power.
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .covertness import covert_power_ceiling, surrogate_xi, averaged_xi
from .exceptions import UndefinedLossError
from .models import (
    BenchmarkRow,
    DesignOutcome,
    DesignPoint,
    RegionRaster,
    SweepRow,
    SystemParams,
    UncertaintyBox,
    UncertaintyWidths,
    box_from_widths,
)
from .reliability import max_rate_given_power, outage_array
from .utils import check_grid, linspace_grid

logger = logging.getLogger(__name__)

# Absolute slack on probability constraints; closed-form optima sit on the boundary
FEASIBILITY_SLACK = 1e-12

# Uncertainty settings of the representative results table
REPRESENTATIVE_WIDTHS: Tuple[Tuple[float, float], ...] = (
    (0.0, 0.0),
    (0.1, 0.1),
    (0.2, 0.2),
    (0.3, 0.3),
    (0.4, 0.4),
    (0.6, 0.6),
    (0.3, 0.0),
    (0.0, 0.3),
    (0.6, 0.0),
    (0.0, 0.6),
)

# Default raster extends 20% past the nominal optimum on both axes
REGION_MARGIN = 1.2


def feasibility_mask(power, rate, params: SystemParams, box: UncertaintyBox) -> np.ndarray:
    """Vectorised reduced constraints: outage at omega_b_lo, surrogate at sigma_w2_lo, budget."""
    p = np.asarray(power, dtype=float)
    outage = np.asarray(outage_array(p, rate, box.omega_b_lo, params.sigma_b2))
    xi = np.asarray(surrogate_xi(np.maximum(p, 0.0), box.sigma_w2_lo, params.g_w, params.n_block))
    return (
        (outage <= params.delta + FEASIBILITY_SLACK)
        & (xi >= 1.0 - params.epsilon - FEASIBILITY_SLACK)
        & (p >= 0.0)
        & (p <= params.p_max)
    )


def is_feasible(d: DesignPoint, params: SystemParams, box: UncertaintyBox) -> bool:
    """Whether (P, R) meets both robust constraints and the power budget."""
    return bool(feasibility_mask(d.power, d.rate, params, box))


def solve_robust(params: SystemParams, box: UncertaintyBox) -> DesignOutcome:
    """Closed-form robust optimum.

    P* = min(P_max, covertness ceiling at sigma_w2_lo) and R* is the largest
    rate with outage delta at (P*, omega_b_lo).
    """
    ceiling = covert_power_ceiling(box.sigma_w2_lo, params.g_w, params.n_block, params.epsilon)
    if params.p_max < ceiling:
        p_star, binding = params.p_max, "PowerBudget"
    else:
        p_star, binding = ceiling, "CovertnessCeiling"
    r_star = max_rate_given_power(p_star, box.omega_b_lo, params.sigma_b2, params.delta)
    return DesignOutcome(p_star=p_star, r_star=r_star, binding=binding)


def solve_nominal(params: SystemParams) -> DesignOutcome:
    """Optimum at the reference values, i.e. on the degenerate box."""
    return solve_robust(params, UncertaintyBox.degenerate(params))


def relative_loss(nominal: DesignOutcome, robust: DesignOutcome) -> float:
    """Relative rate loss (R_nom - R_rob) / R_nom as a fraction.

    Raises:
        UndefinedLossError: If the nominal rate is zero.
    """
    if nominal.r_star <= 0:
        raise UndefinedLossError("Relative loss undefined for a zero nominal rate")
    return (nominal.r_star - robust.r_star) / nominal.r_star


def compare(params: SystemParams, box: UncertaintyBox) -> Tuple[DesignOutcome, DesignOutcome]:
    """Nominal design and robust design annotated with its relative loss."""
    nominal = solve_nominal(params)
    robust = solve_robust(params, box)
    loss = relative_loss(nominal, robust) if nominal.r_star > 0 else None
    return nominal, robust.model_copy(update={"delta_r": loss})


def _row(
    params: SystemParams,
    nominal: DesignOutcome,
    widths: UncertaintyWidths,
    u: Optional[float] = None,
) -> SweepRow:
    robust = solve_robust(params, box_from_widths(params, widths))
    loss = relative_loss(nominal, robust) if nominal.r_star > 0 else None
    return SweepRow(
        u=u,
        u_b=widths.u_b,
        u_w=widths.u_w,
        p_nominal=nominal.p_star,
        p_robust=robust.p_star,
        r_nominal=nominal.r_star,
        r_robust=robust.r_star,
        delta_r=loss,
    )


def sweep_common_u(params: SystemParams, u_grid: Sequence[float]) -> List[SweepRow]:
    """Nominal and robust designs along a common width u = u_b = u_w."""
    grid = check_grid(u_grid, "u_grid", lower=0.0, upper=1.0, upper_open=True)
    logger.info(f"Sweeping common width over {grid.size} points")
    nominal = solve_nominal(params)
    return [_row(params, nominal, UncertaintyWidths.common(float(u)), u=float(u)) for u in grid]


def sweep_widths(
    params: SystemParams,
    widths: Iterable[Union[UncertaintyWidths, Tuple[float, float]]],
) -> List[SweepRow]:
    """Rows for arbitrary (u_b, u_w) settings, e.g. REPRESENTATIVE_WIDTHS."""
    nominal = solve_nominal(params)
    rows = []
    for w in widths:
        if not isinstance(w, UncertaintyWidths):
            w = UncertaintyWidths(u_b=w[0], u_w=w[1])
        rows.append(_row(params, nominal, w))
    return rows


def heatmap(params: SystemParams, u_b_grid: Sequence[float], u_w_grid: Sequence[float]) -> np.ndarray:
    """Robust optimal rate on a (u_b, u_w) grid; entry [i, j] is (u_b[i], u_w[j])."""
    ub = check_grid(u_b_grid, "u_b_grid", lower=0.0, upper=1.0, upper_open=True)
    uw = check_grid(u_w_grid, "u_w_grid", lower=0.0, upper=1.0, upper_open=True)
    logger.info(f"Computing {ub.size}x{uw.size} robust rate heatmap")
    rates = np.empty((ub.size, uw.size))
    for i, u_b in enumerate(ub):
        for j, u_w in enumerate(uw):
            box = box_from_widths(params, UncertaintyWidths(u_b=float(u_b), u_w=float(u_w)))
            rates[i, j] = solve_robust(params, box).r_star
    return rates


def default_region_grids(params: SystemParams, points: int = 400, r_points: Optional[int] = None) -> Tuple[List[float], List[float]]:
    """Raster axes P in [0, 1.2 P*_nom] and R in [0, 1.2 R*_nom]."""
    nominal = solve_nominal(params)
    p_grid = linspace_grid(0.0, REGION_MARGIN * nominal.p_star, points)
    r_grid = linspace_grid(0.0, REGION_MARGIN * nominal.r_star, r_points or points)
    return p_grid, r_grid


def feasible_region(
    params: SystemParams,
    box: Optional[UncertaintyBox],
    p_grid: Sequence[float],
    r_grid: Sequence[float],
) -> RegionRaster:
    """Feasibility raster; ``box=None`` rasterises the nominal design."""
    p = check_grid(p_grid, "p_grid", lower=0.0)
    r = check_grid(r_grid, "r_grid", lower=0.0)
    mode = "Nominal" if box is None else "Robust"
    target = UncertaintyBox.degenerate(params) if box is None else box
    power, rate = np.meshgrid(p, r)
    mask = feasibility_mask(power, rate, params, target)
    logger.debug(f"{mode} region: {int(mask.sum())} of {mask.size} cells feasible")
    return RegionRaster(p_grid=p, r_grid=r, mask=mask, mode=mode)


def covertness_vs_uncertainty(
    params: SystemParams,
    u_grid: Sequence[float],
    power: Optional[float] = None,
) -> List[BenchmarkRow]:
    """Conditional surrogate and averaged benchmark at sigma_w2_lo along u_w.

    Both are increasing in sigma_w^2, so both degrade at the same adverse
    endpoint. ``power`` defaults to the nominal optimal power.
    """
    grid = check_grid(u_grid, "u_grid", lower=0.0, upper=1.0, upper_open=True)
    p = solve_nominal(params).p_star if power is None else power
    rows = []
    for u_w in grid:
        sigma_lo = params.sigma_w20 * (1.0 - float(u_w))
        rows.append(
            BenchmarkRow(
                u_w=float(u_w),
                sigma_w2_lo=sigma_lo,
                xi_surrogate=surrogate_xi(p, sigma_lo, params.g_w, params.n_block),
                xi_averaged=averaged_xi(p, sigma_lo, params.omega_w, params.n_block).xi_bar,
            )
        )
    return rows
