"""Utility functions for covertlink."""

import os
import logging
import math
from typing import Any, Iterable, List, Optional, Sequence, Union, cast, get_args

import numpy as np

from .exceptions import ConfigError, DomainError
from .types import LogLevel

logger = logging.getLogger(__name__)

DEFAULT_SEED = 42
DEFAULT_CHUNK = 10_000
DEFAULT_TRIALS = 1_000_000


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"Environment variable {name} must be an integer, got {raw!r}")


def get_default_seed() -> int:
    """Get default Monte Carlo seed from environment or use 42."""
    return _env_int("COVERTLINK_SEED", DEFAULT_SEED)


def get_default_workers() -> int:
    """Get default worker count from environment."""
    return max(1, _env_int("COVERTLINK_WORKERS", 1))


def get_default_chunk() -> int:
    """Get default trials per sub-stream from environment."""
    return max(1, _env_int("COVERTLINK_CHUNK", DEFAULT_CHUNK))


def get_log_level() -> LogLevel:
    """Get log level from environment or use WARNING.

    Raises:
        ConfigError: If COVERTLINK_LOG_LEVEL is not a known level.
    """
    level = os.environ.get("COVERTLINK_LOG_LEVEL", "WARNING").strip().upper() or "WARNING"
    if level not in get_args(LogLevel):
        raise ConfigError(
            f"COVERTLINK_LOG_LEVEL must be one of {', '.join(get_args(LogLevel))}, got {level!r}",
            code="log_level",
        )
    return cast(LogLevel, level)


def db_to_linear(value_db: float) -> float:
    """Convert a dB quantity to linear scale."""
    return 10.0 ** (value_db / 10.0)


def as_output(values: np.ndarray) -> Union[float, np.ndarray]:
    """Return a Python float for 0-d results and the array otherwise."""
    values = np.asarray(values)
    if values.ndim == 0:
        return float(values)
    return values


def require_finite(x: Any, name: str) -> np.ndarray:
    """Convert to a float array and reject NaN / infinite entries."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite", code="non_finite")
    return arr


def check_grid(
    grid: Iterable[float],
    name: str,
    lower: float = -math.inf,
    upper: float = math.inf,
    upper_open: bool = False,
) -> np.ndarray:
    """Validate an ascending, non-empty 1-D grid within [lower, upper]."""
    arr = np.asarray(list(grid), dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError(f"{name} must be a non-empty 1-D grid", code="empty_grid")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must contain finite values", code="non_finite")
    if np.any(np.diff(arr) <= 0):
        raise DomainError(f"{name} must be strictly ascending", code="unsorted_grid")
    if arr[0] < lower:
        raise DomainError(f"{name} values must be >= {lower}", code="grid_range")
    if (upper_open and arr[-1] >= upper) or (not upper_open and arr[-1] > upper):
        bound = "<" if upper_open else "<="
        raise DomainError(f"{name} values must be {bound} {upper}", code="grid_range")
    return arr


def parse_grid(value: Union[str, Sequence[float], None]) -> Optional[List[float]]:
    """Parse a grid given as "start:step:stop", "a,b,c" or a list.

    The range form includes ``stop`` when it lies on the step lattice.
    Values are rounded to 12 decimals so that 0.3 prints as 0.3.
    """
    if value is None:
        return None

    if isinstance(value, (list, tuple, np.ndarray)):
        try:
            return [float(v) for v in value]
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid grid {list(value)!r}: {e}")

    text = str(value).strip()
    if text == "":
        return []

    try:
        if ":" in text:
            parts = [float(p) for p in text.split(":")]
            if len(parts) != 3:
                raise ConfigError(f"Grid range must be start:step:stop, got {text!r}")
            start, step, stop = parts
            if step <= 0:
                raise ConfigError(f"Grid step must be positive, got {step}")
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            if count < 1:
                return []
            values = start + step * np.arange(count)
            return [round(float(v), 12) for v in values]

        return [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as e:
        raise ConfigError(f"Invalid grid {text!r}: {e}")


def linspace_grid(start: float, stop: float, points: int) -> List[float]:
    """Evenly spaced inclusive grid."""
    if points < 1:
        raise DomainError(f"Grid must have at least one point, got {points}")
    return [float(v) for v in np.linspace(start, stop, points)]
