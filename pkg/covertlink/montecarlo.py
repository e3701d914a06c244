"""Monte Carlo radiometer at finite block length.

|CN(0, v)|^2 is exponential with mean v, so a block statistic is v times the
mean of N unit exponentials. Trials are split into chunks; chunk s of
hypothesis h draws from its own generator seeded by (seed, s, h), which makes
the counts independent of how many workers process the chunks.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .covertness import exact_lrt_threshold, exact_xi_at, midpoint_threshold, surrogate_xi
from .exceptions import DomainError
from .models import (
    BlockSample,
    DetectorMoments,
    ErrorEstimate,
    SystemParams,
    Threshold,
    TrialPlan,
    ValidationReport,
    ValidationRow,
    ValidationSummary,
)
from .types import Hypothesis, Sampler
from .utils import check_grid, get_default_workers, linspace_grid

logger = logging.getLogger(__name__)

_HYPOTHESIS_KEY = {"H0": 0, "H1": 1}

# Power grid of the surrogate validation
VALIDATION_P_RANGE = (0.05, 0.4)
VALIDATION_POINTS = 20


def stream(seed: int, *key: int) -> np.random.Generator:
    """Deterministic generator for sub-stream ``key`` of ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def _block_mean(hypothesis: Hypothesis, power: float, sigma_w2: float, g_w: float) -> float:
    if hypothesis not in _HYPOTHESIS_KEY:
        raise DomainError(f"Unknown hypothesis {hypothesis!r}", code="hypothesis")
    return sigma_w2 if hypothesis == "H0" else sigma_w2 + power * g_w


def sample_t_batch(
    hypothesis: Hypothesis,
    power: float,
    sigma_w2: float,
    g_w: float,
    n_block: int,
    size: int,
    rng: np.random.Generator,
    sampler: Sampler = "gamma",
) -> np.ndarray:
    """Radiometer statistics of ``size`` independent blocks.

    Samplers:
        gamma: sum of N unit exponentials drawn directly as Gamma(N, 1).
        exponential: N explicit unit exponentials per block.
        baseband: complex samples h_w sqrt(P) x[i] + n_w[i] with |h_w|^2 = g_w,
            uniform phase, x[i] ~ CN(0, 1) and n_w[i] ~ CN(0, sigma_w^2).
    """
    mean = _block_mean(hypothesis, power, sigma_w2, g_w)

    if sampler == "gamma":
        return mean * rng.standard_gamma(n_block, size) / n_block
    elif sampler == "exponential":
        return mean * rng.standard_exponential((size, n_block)).mean(axis=1)
    elif sampler == "baseband":
        scale = math.sqrt(sigma_w2 / 2.0)
        y = scale * (rng.standard_normal((size, n_block)) + 1j * rng.standard_normal((size, n_block)))
        if hypothesis == "H1":
            phase = rng.uniform(0.0, 2.0 * math.pi, (size, 1))
            h_w = math.sqrt(g_w) * np.exp(1j * phase)
            x = math.sqrt(0.5) * (rng.standard_normal((size, n_block)) + 1j * rng.standard_normal((size, n_block)))
            y = y + h_w * math.sqrt(power) * x
        return np.mean(np.abs(y) ** 2, axis=1)
    else:
        raise DomainError(f"Unknown sampler {sampler!r}", code="sampler")


def sample_t(
    hypothesis: Hypothesis,
    power: float,
    sigma_w2: float,
    g_w: float,
    n_block: int,
    rng: np.random.Generator,
    sampler: Sampler = "exponential",
) -> BlockSample:
    """Radiometer statistic T = (1/N) sum |y_w[i]|^2 of a single block."""
    t = sample_t_batch(hypothesis, power, sigma_w2, g_w, n_block, 1, rng, sampler)
    return BlockSample(t_stat=float(t[0]))


def _count_chunk(
    index: int,
    prefix: Tuple[int, ...],
    power: float,
    sigma_w2: float,
    g_w: float,
    n_block: int,
    lambdas: np.ndarray,
    plan: TrialPlan,
) -> Tuple[np.ndarray, np.ndarray]:
    size = min(plan.chunk, plan.trials - index * plan.chunk)
    rng0 = stream(plan.seed, *prefix, index, _HYPOTHESIS_KEY["H0"])
    rng1 = stream(plan.seed, *prefix, index, _HYPOTHESIS_KEY["H1"])
    t0 = sample_t_batch("H0", power, sigma_w2, g_w, n_block, size, rng0, plan.sampler)
    t1 = sample_t_batch("H1", power, sigma_w2, g_w, n_block, size, rng1, plan.sampler)
    # T >= lambda decides H1, so a tie is an alarm
    false_alarms = (t0[:, None] >= lambdas[None, :]).sum(axis=0)
    missed = (t1[:, None] < lambdas[None, :]).sum(axis=0)
    return false_alarms.astype(np.int64), missed.astype(np.int64)


def estimate_errors_many(
    power: float,
    sigma_w2: float,
    g_w: float,
    n_block: int,
    thresholds: Sequence[Union[Threshold, float]],
    plan: TrialPlan,
    workers: Optional[int] = None,
    stream_prefix: Tuple[int, ...] = (),
) -> List[ErrorEstimate]:
    """Score one set of sampled blocks against several thresholds.

    Args:
        power, sigma_w2, g_w, n_block: Link parameters.
        thresholds: Thresholds to score; all see the same blocks.
        plan: Trials per hypothesis, seed, chunk size and sampler.
        workers: Threads processing chunks; never changes the counts.
        stream_prefix: Extra sub-stream key, e.g. a grid index.

    Raises:
        DomainError: If the plan has no trials or a threshold is not positive.
    """
    if plan.trials < 1:
        raise DomainError("Monte Carlo plan needs at least one trial", code="no_trials")
    lambdas = np.array([float(t) for t in thresholds], dtype=float)
    if lambdas.size == 0 or np.any(lambdas <= 0):
        raise DomainError("thresholds must be positive", code="threshold")

    workers = workers or get_default_workers()
    indices = range(plan.n_chunks)
    logger.debug(
        f"MC P={power:g}: {plan.trials} trials/hypothesis in {plan.n_chunks} chunks, "
        f"{workers} worker(s), sampler={plan.sampler}"
    )

    def run(index: int):
        return _count_chunk(index, stream_prefix, power, sigma_w2, g_w, n_block, lambdas, plan)

    if workers > 1 and plan.n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, indices))
    else:
        results = [run(i) for i in indices]

    false_alarms = sum((r[0] for r in results), np.zeros(lambdas.size, dtype=np.int64))
    missed = sum((r[1] for r in results), np.zeros(lambdas.size, dtype=np.int64))
    return [
        ErrorEstimate.from_counts(int(fa), int(md), plan.trials)
        for fa, md in zip(false_alarms, missed)
    ]


def estimate_errors(
    power: float,
    sigma_w2: float,
    g_w: float,
    n_block: int,
    threshold: Union[Threshold, float],
    plan: TrialPlan,
    workers: Optional[int] = None,
) -> ErrorEstimate:
    """Empirical P_FA, P_MD and their sum at one threshold."""
    return estimate_errors_many(power, sigma_w2, g_w, n_block, [threshold], plan, workers)[0]


def default_validation_grid() -> List[float]:
    """Power grid on which the surrogate accuracy is assessed."""
    return linspace_grid(VALIDATION_P_RANGE[0], VALIDATION_P_RANGE[1], VALIDATION_POINTS)


def validate_surrogate(
    params: SystemParams,
    p_grid: Sequence[float],
    plan: TrialPlan,
    workers: Optional[int] = None,
) -> ValidationReport:
    """Compare the surrogate with gamma-CDF and Monte Carlo detection errors.

    Evaluated at the nominal Willie noise power and the fixed g_w. Grid point
    k uses sub-streams (k, s, h), and both thresholds are scored on the same
    blocks. The summary measures the surrogate against the analytic error at
    the exact LRT threshold.
    """
    grid = check_grid(p_grid, "p_grid", lower=0.0)
    if grid[0] <= 0:
        raise DomainError("p_grid values must be positive", code="grid_range")

    sigma_w2, g_w, n = params.sigma_w20, params.g_w, params.n_block
    logger.info(
        f"Validating surrogate on {grid.size} powers, {plan.trials} trials, seed {plan.seed}"
    )

    rows = []
    for k, p in enumerate(grid):
        p = float(p)
        moments = DetectorMoments.from_link(p, sigma_w2, g_w)
        mid = midpoint_threshold(moments)
        lrt = exact_lrt_threshold(moments)
        mc_mid, mc_lrt = estimate_errors_many(
            p, sigma_w2, g_w, n, [mid, lrt], plan, workers, stream_prefix=(k,)
        )
        rows.append(
            ValidationRow(
                p=p,
                xi_surrogate=surrogate_xi(p, sigma_w2, g_w, n),
                xi_exact_mid=exact_xi_at(mid, p, sigma_w2, g_w, n),
                xi_exact_lrt=exact_xi_at(lrt, p, sigma_w2, g_w, n),
                xi_mc_mid=mc_mid.xi,
                xi_mc_mid_se=mc_mid.se_xi,
                xi_mc_lrt=mc_lrt.xi,
                xi_mc_lrt_se=mc_lrt.se_xi,
            )
        )

    errors = np.array([abs(r.xi_surrogate - r.xi_exact_lrt) for r in rows])
    summary = ValidationSummary(
        mae=float(errors.mean()),
        max_abs_err=float(errors.max()),
        trials=plan.trials,
        seed=plan.seed,
    )
    logger.info(f"Surrogate MAE {summary.mae:.3g}, max {summary.max_abs_err:.3g}")
    return ValidationReport(rows=rows, summary=summary)
