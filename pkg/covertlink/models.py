"""Pydantic models for the covert link design problem.

All quantities are linear (never dB). Models are frozen.
"""

import math
from typing import Any, Dict, List, Mapping, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .types import Binding, RegionMode, Sampler


_FROZEN = ConfigDict(frozen=True, extra="forbid")


# (field, predicate, message) evaluated in order; every failing rule is reported
_PARAM_RULES = (
    ("omega_b0", lambda v: v > 0, "omega_b0 > 0"),
    ("sigma_b2", lambda v: v > 0, "sigma_b2 > 0"),
    ("sigma_w20", lambda v: v > 0, "sigma_w20 > 0"),
    ("omega_w", lambda v: v > 0, "omega_w > 0"),
    ("g_w", lambda v: v > 0, "g_w > 0"),
    ("n_block", lambda v: v >= 1 and float(v).is_integer(), "n_block ≥ 1"),
    ("p_max", lambda v: v > 0, "p_max > 0"),
    ("delta", lambda v: 0 < v < 1, "delta ∈ (0,1)"),
    ("epsilon", lambda v: 0 < v < 1, "epsilon ∈ (0,1)"),
)

PARAM_FIELDS = tuple(rule[0] for rule in _PARAM_RULES)


def validate_params(params: Union["SystemParams", Mapping[str, Any]]) -> List[str]:
    """Check every SystemParams invariant.

    Args:
        params: A SystemParams (possibly built with ``model_construct``) or a
            plain mapping with the same keys.

    Returns:
        The violated invariants, one string per violation naming the field.
        An empty list means the parameters are valid.
    """
    if isinstance(params, BaseModel):
        data = dict(params.__dict__)
    else:
        data = dict(params)

    violations = []
    for key in data:
        if key not in PARAM_FIELDS:
            violations.append(f"{key} is not a recognised parameter")

    for field, predicate, message in _PARAM_RULES:
        if field not in data or data[field] is None:
            violations.append(f"{field} missing")
            continue
        value = data[field]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            violations.append(f"{field} must be a number")
            continue
        if not math.isfinite(value) or not predicate(value):
            violations.append(message)

    return violations


class SystemParams(BaseModel):
    """Nominal physical constants of the link."""
    omega_b0: float
    sigma_b2: float
    sigma_w20: float
    omega_w: float
    g_w: float
    n_block: int
    p_max: float
    delta: float
    epsilon: float

    model_config = _FROZEN

    @model_validator(mode="after")
    def check_invariants(self) -> "SystemParams":
        """Reject parameter sets violating any invariant."""
        violations = validate_params(self)
        if violations:
            raise ValueError("; ".join(violations))
        return self

    @classmethod
    def baseline(cls, **overrides: Any) -> "SystemParams":
        """Baseline parameters of the numerical study, with optional overrides."""
        values: Dict[str, Any] = {
            "omega_b0": 1.0,
            "sigma_b2": 1.0,
            "sigma_w20": 1.0,
            "omega_w": 1.0,
            "g_w": 0.2,
            "n_block": 100,
            "p_max": 10.0,
            "delta": 0.1,
            "epsilon": 0.2,
        }
        values.update(overrides)
        return cls(**values)


class UncertaintyBox(BaseModel):
    """Interval bounds on Bob's channel power and Willie's noise power."""
    omega_b_lo: float
    omega_b_hi: float
    sigma_w2_lo: float
    sigma_w2_hi: float

    model_config = _FROZEN

    @model_validator(mode="after")
    def check_intervals(self) -> "UncertaintyBox":
        """Ensure 0 < lo <= hi for both intervals."""
        if not 0 < self.omega_b_lo <= self.omega_b_hi:
            raise ValueError("omega_b interval must satisfy 0 < lo <= hi")
        if not 0 < self.sigma_w2_lo <= self.sigma_w2_hi:
            raise ValueError("sigma_w2 interval must satisfy 0 < lo <= hi")
        return self

    @classmethod
    def degenerate(cls, params: SystemParams) -> "UncertaintyBox":
        """Box collapsed onto the nominal values."""
        return cls(
            omega_b_lo=params.omega_b0,
            omega_b_hi=params.omega_b0,
            sigma_w2_lo=params.sigma_w20,
            sigma_w2_hi=params.sigma_w20,
        )


class UncertaintyWidths(BaseModel):
    """Relative widths of the Bob-side and Willie-side intervals."""
    u_b: float = Field(0.0, ge=0.0, lt=1.0)
    u_w: float = Field(0.0, ge=0.0, lt=1.0)

    model_config = _FROZEN

    @classmethod
    def common(cls, u: float) -> "UncertaintyWidths":
        """Same width on both sides."""
        return cls(u_b=u, u_w=u)


class DesignPoint(BaseModel):
    """Transmit power and coding rate chosen by Alice."""
    power: float = Field(ge=0.0)
    rate: float = Field(ge=0.0)

    model_config = _FROZEN


def box_from_widths(params: SystemParams, widths: UncertaintyWidths) -> UncertaintyBox:
    """Symmetric width parameterisation.

    Lower bounds shrink with the widths; upper bounds stay at the nominal
    values because the worst cases sit at the lower ends.
    """
    return UncertaintyBox(
        omega_b_lo=params.omega_b0 * (1.0 - widths.u_b),
        omega_b_hi=params.omega_b0,
        sigma_w2_lo=params.sigma_w20 * (1.0 - widths.u_w),
        sigma_w2_hi=params.sigma_w20,
    )


class OutageQuery(BaseModel):
    """Inputs of Bob's outage probability."""
    power: float = Field(ge=0.0)
    rate: float = Field(ge=0.0)
    omega_b: float = Field(gt=0.0)
    sigma_b2: float = Field(gt=0.0)

    model_config = _FROZEN


class DetectorMoments(BaseModel):
    """Means of the radiometer statistic under H0 and H1 (given g_w)."""
    mu0: float = Field(gt=0.0)
    mu1: float = Field(gt=0.0)

    model_config = _FROZEN

    @model_validator(mode="after")
    def check_order(self) -> "DetectorMoments":
        """H1 adds signal power, so mu1 cannot fall below mu0."""
        if self.mu1 < self.mu0:
            raise ValueError("mu1 must be >= mu0")
        return self

    @classmethod
    def from_link(cls, power: float, sigma_w2: float, g_w: float) -> "DetectorMoments":
        """Moments for transmit power ``power`` seen through fading power ``g_w``."""
        return cls(mu0=sigma_w2, mu1=sigma_w2 + power * g_w)


class Threshold(BaseModel):
    """Radiometer detection threshold (linear power units)."""
    value: float = Field(gt=0.0, alias="lambda")

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    def __float__(self) -> float:
        return self.value


class AveragedBenchmarkResult(BaseModel):
    """Detection error averaged over Rayleigh fading on Willie's link."""
    eta: float = Field(gt=0.0)
    xi_bar: float = Field(ge=0.0, le=1.0)

    model_config = _FROZEN


class DesignOutcome(BaseModel):
    """Optimal operating point of the nominal or robust design."""
    p_star: float = Field(ge=0.0)
    r_star: float = Field(ge=0.0)
    binding: Binding
    delta_r: Optional[float] = Field(None, ge=0.0, le=1.0)

    model_config = _FROZEN


class SweepRow(BaseModel):
    """Nominal and robust designs at one uncertainty setting."""
    u: Optional[float] = None
    u_b: float
    u_w: float
    p_nominal: float
    p_robust: float
    r_nominal: float
    r_robust: float
    delta_r: Optional[float] = None

    model_config = _FROZEN


class RegionRaster(BaseModel):
    """Feasibility mask on a (P, R) grid; rows follow r_grid, columns p_grid."""
    p_grid: np.ndarray
    r_grid: np.ndarray
    mask: np.ndarray
    mode: RegionMode

    model_config = ConfigDict(frozen=True, extra="forbid", arbitrary_types_allowed=True)

    @model_validator(mode="after")
    def check_shape(self) -> "RegionRaster":
        """Mask must be |r_grid| x |p_grid|."""
        expected = (len(self.r_grid), len(self.p_grid))
        if self.mask.shape != expected:
            raise ValueError(f"mask shape {self.mask.shape} != {expected}")
        return self


class TrialPlan(BaseModel):
    """Monte Carlo plan; fully determines the sampled counts."""
    trials: int = Field(ge=1)
    seed: int = Field(42, ge=0, le=2**64 - 1)
    chunk: int = Field(10_000, ge=1)
    sampler: Sampler = "gamma"

    model_config = _FROZEN

    @property
    def n_chunks(self) -> int:
        """Number of deterministic sub-streams per hypothesis."""
        return -(-self.trials // self.chunk)


class ErrorEstimate(BaseModel):
    """Empirical false-alarm / missed-detection rates with standard errors."""
    p_fa: float = Field(ge=0.0, le=1.0)
    p_md: float = Field(ge=0.0, le=1.0)
    xi: float = Field(ge=0.0, le=2.0)
    se_fa: float = Field(ge=0.0)
    se_md: float = Field(ge=0.0)
    trials: int = Field(ge=1)
    false_alarms: int = Field(ge=0)
    missed_detections: int = Field(ge=0)

    model_config = _FROZEN

    @classmethod
    def from_counts(cls, false_alarms: int, missed_detections: int, trials: int) -> "ErrorEstimate":
        """Build rates and binomial standard errors from raw counts."""
        p_fa = false_alarms / trials
        p_md = missed_detections / trials
        return cls(
            p_fa=p_fa,
            p_md=p_md,
            xi=p_fa + p_md,
            se_fa=math.sqrt(p_fa * (1.0 - p_fa) / trials),
            se_md=math.sqrt(p_md * (1.0 - p_md) / trials),
            trials=trials,
            false_alarms=false_alarms,
            missed_detections=missed_detections,
        )

    @property
    def se_xi(self) -> float:
        """Standard error of xi (hypotheses are sampled independently)."""
        return math.hypot(self.se_fa, self.se_md)


class BlockSample(BaseModel):
    """Realised radiometer statistic of one block."""
    t_stat: float = Field(ge=0.0)

    model_config = _FROZEN


class ValidationRow(BaseModel):
    """Surrogate, analytic and Monte Carlo detection errors at one power."""
    p: float
    xi_surrogate: float
    xi_exact_mid: float
    xi_exact_lrt: float
    xi_mc_mid: float
    xi_mc_mid_se: float
    xi_mc_lrt: float
    xi_mc_lrt_se: float

    model_config = _FROZEN


class ValidationSummary(BaseModel):
    """Surrogate error against the analytic exact-LRT detection error."""
    mae: float
    max_abs_err: float
    trials: int
    seed: int

    model_config = _FROZEN


class ValidationReport(BaseModel):
    """Rows plus summary of a surrogate validation run."""
    rows: List[ValidationRow]
    summary: ValidationSummary

    model_config = _FROZEN


class BenchmarkRow(BaseModel):
    """Conditional surrogate vs averaged benchmark at the worst Willie noise."""
    u_w: float
    sigma_w2_lo: float
    xi_surrogate: float
    xi_averaged: float

    model_config = _FROZEN


class RunConfig(BaseModel):
    """Everything a CLI command needs, after file/flag merging."""
    params: SystemParams = Field(default_factory=SystemParams.baseline)
    widths: UncertaintyWidths = Field(default_factory=UncertaintyWidths)
    box: Optional[UncertaintyBox] = None
    u_grid: Optional[List[float]] = None
    u_b_grid: Optional[List[float]] = None
    u_w_grid: Optional[List[float]] = None
    p_grid: Optional[List[float]] = None
    r_grid: Optional[List[float]] = None
    p_points: int = Field(400, ge=2)
    r_points: int = Field(400, ge=2)
    trials: int = Field(1_000_000, ge=1)
    seed: int = Field(42, ge=0, le=2**64 - 1)
    chunk: int = Field(10_000, ge=1)
    workers: int = Field(1, ge=1)
    sampler: Sampler = "gamma"
    out: Optional[str] = None

    model_config = _FROZEN

    @field_validator("u_grid", "u_b_grid", "u_w_grid", "p_grid", "r_grid")
    def check_ascending(cls, v):
        """Grids must be non-empty and strictly ascending."""
        if v is None:
            return v
        if len(v) == 0:
            raise ValueError("grid must not be empty")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("grid must be strictly ascending")
        return v

    @property
    def design_box(self) -> UncertaintyBox:
        """Explicit box if given, otherwise the width parameterisation."""
        if self.box is not None:
            return self.box
        return box_from_widths(self.params, self.widths)
