"""covertlink: robust covert wireless link design.

Closed-form reliability and covertness models, their worst-case reductions
under interval uncertainty, the robust power/rate solver and a Monte Carlo
radiometer that checks the analytical detection-error surrogate.

Example:
    ```python
    from covertlink import SystemParams, UncertaintyWidths, box_from_widths, solve_robust

    params = SystemParams.baseline()
    box = box_from_widths(params, UncertaintyWidths(u_b=0.2, u_w=0.2))

    outcome = solve_robust(params, box)
    print(outcome.p_star, outcome.r_star)  # 0.202678 0.024438
    ```
"""

__version__ = "0.1.0"

from .exceptions import (
    CovertLinkError,
    DomainError,
    ConfigError,
    NumericError,
    UndefinedLossError,
)
from .types import (
    Hypothesis,
    Binding,
    RegionMode,
    Sampler,
)
from .models import (
    SystemParams,
    UncertaintyBox,
    UncertaintyWidths,
    DesignPoint,
    OutageQuery,
    DetectorMoments,
    Threshold,
    AveragedBenchmarkResult,
    DesignOutcome,
    SweepRow,
    RegionRaster,
    TrialPlan,
    ErrorEstimate,
    BlockSample,
    ValidationRow,
    ValidationSummary,
    ValidationReport,
    BenchmarkRow,
    RunConfig,
    box_from_widths,
    validate_params,
)
from .specfun import q_func, q_inv, scaled_tail, reg_gamma_upper, reg_gamma_lower
from .reliability import outage_probability, worst_case_outage, max_rate_given_power
from .covertness import (
    surrogate_xi,
    worst_case_surrogate_xi,
    midpoint_threshold,
    exact_lrt_threshold,
    exact_xi_at,
    min_exact_xi,
    averaged_xi,
    worst_case_averaged_xi,
    covert_power_ceiling,
)
from .robust import (
    REPRESENTATIVE_WIDTHS,
    is_feasible,
    solve_robust,
    solve_nominal,
    relative_loss,
    compare,
    sweep_common_u,
    sweep_widths,
    heatmap,
    default_region_grids,
    feasible_region,
    covertness_vs_uncertainty,
)
from .montecarlo import (
    sample_t,
    sample_t_batch,
    estimate_errors,
    estimate_errors_many,
    validate_surrogate,
    default_validation_grid,
)

__all__ = [
    # Exceptions
    "CovertLinkError",
    "DomainError",
    "ConfigError",
    "NumericError",
    "UndefinedLossError",

    # Types
    "Hypothesis",
    "Binding",
    "RegionMode",
    "Sampler",

    # Models
    "SystemParams",
    "UncertaintyBox",
    "UncertaintyWidths",
    "DesignPoint",
    "OutageQuery",
    "DetectorMoments",
    "Threshold",
    "AveragedBenchmarkResult",
    "DesignOutcome",
    "SweepRow",
    "RegionRaster",
    "TrialPlan",
    "ErrorEstimate",
    "BlockSample",
    "ValidationRow",
    "ValidationSummary",
    "ValidationReport",
    "BenchmarkRow",
    "RunConfig",
    "box_from_widths",
    "validate_params",

    # Special functions
    "q_func",
    "q_inv",
    "scaled_tail",
    "reg_gamma_upper",
    "reg_gamma_lower",

    # Reliability
    "outage_probability",
    "worst_case_outage",
    "max_rate_given_power",

    # Covertness
    "surrogate_xi",
    "worst_case_surrogate_xi",
    "midpoint_threshold",
    "exact_lrt_threshold",
    "exact_xi_at",
    "min_exact_xi",
    "averaged_xi",
    "worst_case_averaged_xi",
    "covert_power_ceiling",

    # Robust design
    "REPRESENTATIVE_WIDTHS",
    "is_feasible",
    "solve_robust",
    "solve_nominal",
    "relative_loss",
    "compare",
    "sweep_common_u",
    "sweep_widths",
    "heatmap",
    "default_region_grids",
    "feasible_region",
    "covertness_vs_uncertainty",

    # Monte Carlo
    "sample_t",
    "sample_t_batch",
    "estimate_errors",
    "estimate_errors_many",
    "validate_surrogate",
    "default_validation_grid",
]
