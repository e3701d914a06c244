"""Type definitions for covertlink."""

from typing import (
    Dict,
    List,
    Literal,
    TypedDict,
    Union,
)
from typing_extensions import NotRequired

import numpy as np


# Real scalar or array argument accepted by the vectorised formulas
ArrayLike = Union[float, np.ndarray]

# Detection hypotheses
Hypothesis = Literal["H0", "H1"]

# Constraint that fixes the optimal power
Binding = Literal["CovertnessCeiling", "PowerBudget"]

# Feasible-region raster modes
RegionMode = Literal["Nominal", "Robust"]

# Monte Carlo block samplers
Sampler = Literal["gamma", "exponential", "baseband"]

# CLI commands
Command = Literal["design", "sweep", "table", "heatmap", "region", "validate", "benchmark"]

# Logging levels accepted from the environment / CLI
LogLevel = Literal["DEBUG", "INFO", "WARNING", "ERROR"]


class DesignReport(TypedDict):
    """JSON report written by the ``design`` command."""
    p_nominal: float
    r_nominal: float
    p_robust: float
    r_robust: float
    delta_r: float
    binding: Binding
    box: NotRequired[Dict[str, float]]


class ValidationSummaryDict(TypedDict):
    """Summary JSON written by the ``validate`` command."""
    mae: float
    max_abs_err: float
    trials: int
    seed: int
    chunk: NotRequired[int]
    sampler: NotRequired[Sampler]
    p_grid: NotRequired[List[float]]
