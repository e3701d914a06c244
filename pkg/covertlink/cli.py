"""Command-line front end.

Each command reproduces one result of the robust covert link study as CSV
(data) and JSON (reports / summaries)::

    covertlink design --u 0.2
    covertlink sweep --u-grid 0:0.01:0.6 --out sweep.csv
    covertlink validate --trials 1000000 --seed 42 --out fig6.csv
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple, Union, get_args

import numpy as np
import pandas as pd

from . import __version__
from .exceptions import EXIT_FAILURE, EXIT_OK, ConfigError, describe, exit_code_for
from .models import PARAM_FIELDS, RunConfig, SystemParams, TrialPlan, UncertaintyBox, UncertaintyWidths, validate_params
from .montecarlo import default_validation_grid, validate_surrogate
from .robust import (
    REPRESENTATIVE_WIDTHS,
    compare,
    covertness_vs_uncertainty,
    default_region_grids,
    feasible_region,
    heatmap,
    sweep_common_u,
    sweep_widths,
)
from .types import Command, DesignReport, LogLevel, Sampler, ValidationSummaryDict
from .utils import (
    db_to_linear,
    get_default_chunk,
    get_default_seed,
    get_default_workers,
    get_log_level,
    parse_grid,
)

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.6g"

SWEEP_COLUMNS = ["u", "p_nominal", "p_robust", "r_nominal", "r_robust", "delta_r"]
TABLE_COLUMNS = ["u_b", "u_w", "p_robust", "r_robust", "delta_r"]
HEATMAP_COLUMNS = ["u_b", "u_w", "r_robust"]
REGION_COLUMNS = ["mode", "p", "r", "feasible"]
VALIDATE_COLUMNS = [
    "p", "xi_surrogate", "xi_exact_mid", "xi_exact_lrt",
    "xi_mc_mid", "xi_mc_mid_se", "xi_mc_lrt", "xi_mc_lrt_se",
]
BENCHMARK_COLUMNS = ["u_w", "sigma_w2_lo", "xi_surrogate", "xi_averaged"]

DEFAULT_SWEEP_GRID = "0:0.01:0.6"
DEFAULT_WIDTH_GRID = "0:0.05:0.6"
DEFAULT_REGION_WIDTH = 0.2
MIN_VALIDATION_TRIALS = 1_000

_WIDTH_KEYS = ("u", "u_b", "u_w")
_BOX_KEYS = ("omega_b_lo", "omega_b_hi", "sigma_w2_lo", "sigma_w2_hi")
_GRID_KEYS = ("u_grid", "u_b_grid", "u_w_grid", "p_grid", "r_grid")
_KNOB_KEYS = _GRID_KEYS + ("p_points", "r_points", "trials", "seed", "chunk", "workers", "sampler", "out")


# -----------------------
# Config loading
# -----------------------

def _read_config_file(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ConfigError(f"Config file not found: {path}")
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config file {path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must contain a JSON object")
    return data


def _convert_db_keys(data: Dict[str, Any]) -> Dict[str, Any]:
    """Replace every ``<key>_db`` entry by its linear ``<key>``."""
    converted = {}
    for key, value in data.items():
        if key.endswith("_db"):
            base = key[: -len("_db")]
            if base in data:
                raise ConfigError(f"Both {base} and {key} given")
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{key} must be a number")
            converted[base] = db_to_linear(float(value))
        else:
            converted[key] = value
    return converted


def _flag_values(args: argparse.Namespace) -> Dict[str, Any]:
    keys = PARAM_FIELDS + _WIDTH_KEYS + _KNOB_KEYS
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def load_config(args: argparse.Namespace) -> RunConfig:
    """Merge the JSON config file (if any) with CLI flags; flags win.

    Raises:
        ConfigError: On unknown keys, bad grids or invalid parameters.
    """
    data: Dict[str, Any] = {}
    if args.config:
        data = _convert_db_keys(_read_config_file(args.config))
    data.update(_flag_values(args))

    unknown = sorted(set(data) - set(PARAM_FIELDS + _WIDTH_KEYS + _BOX_KEYS + _KNOB_KEYS))
    if unknown:
        raise ConfigError(f"Unknown config keys: {', '.join(unknown)}", code="unknown_keys")

    params_data = SystemParams.baseline().model_dump()
    params_data.update({k: data[k] for k in PARAM_FIELDS if k in data})
    violations = validate_params(params_data)
    if violations:
        raise ConfigError("Invalid system parameters", code="params", details={"violations": violations})
    params = SystemParams(**params_data)

    if args.command == "region" and not any(k in data for k in _WIDTH_KEYS + _BOX_KEYS):
        data["u"] = DEFAULT_REGION_WIDTH

    widths = UncertaintyWidths(
        u_b=data.get("u_b", data.get("u", 0.0)),
        u_w=data.get("u_w", data.get("u", 0.0)),
    )

    box = None
    box_given = [k for k in _BOX_KEYS if k in data]
    if box_given:
        if len(box_given) != len(_BOX_KEYS):
            raise ConfigError(f"Explicit box needs all of {', '.join(_BOX_KEYS)}")
        if any(k in data for k in _WIDTH_KEYS):
            raise ConfigError("Give either widths or an explicit box, not both")
        box = UncertaintyBox(**{k: data[k] for k in _BOX_KEYS})

    knobs: Dict[str, Any] = {k: data[k] for k in _KNOB_KEYS if k in data}
    for key in _GRID_KEYS:
        if key in knobs:
            knobs[key] = parse_grid(knobs[key])
    knobs.setdefault("seed", get_default_seed())
    knobs.setdefault("workers", get_default_workers())
    knobs.setdefault("chunk", get_default_chunk())

    return RunConfig(params=params, widths=widths, box=box, **knobs)


# -----------------------
# Output helpers
# -----------------------

def _write_csv(df: pd.DataFrame, out: Optional[str], stdout: TextIO) -> None:
    if out:
        df.to_csv(out, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
        logger.info(f"Wrote {len(df)} rows to {out}")
    else:
        df.to_csv(stdout, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")


def _emit_json(payload: Dict[str, Any], stdout: TextIO) -> None:
    stdout.write(json.dumps(payload, indent=2) + "\n")


def _given_or(grid: Optional[List[float]], default: Union[str, List[float]]) -> List[float]:
    # None means the flag was not given; an empty grid is an error downstream
    if grid is not None:
        return grid
    return parse_grid(default) if isinstance(default, str) else default


# -----------------------
# Commands
# -----------------------

def cmd_design(config: RunConfig) -> DesignReport:
    """Nominal and robust optima plus the relative rate loss."""
    nominal, robust = compare(config.params, config.design_box)
    return DesignReport(
        p_nominal=nominal.p_star,
        r_nominal=nominal.r_star,
        p_robust=robust.p_star,
        r_robust=robust.r_star,
        delta_r=robust.delta_r,
        binding=robust.binding,
        box=config.design_box.model_dump(),
    )


def cmd_sweep(config: RunConfig) -> pd.DataFrame:
    """Designs versus the common uncertainty width."""
    grid = _given_or(config.u_grid, DEFAULT_SWEEP_GRID)
    rows = sweep_common_u(config.params, grid)
    return pd.DataFrame([r.model_dump(include=set(SWEEP_COLUMNS)) for r in rows], columns=SWEEP_COLUMNS)


def cmd_table(config: RunConfig) -> pd.DataFrame:
    """Representative (u_b, u_w) settings."""
    rows = sweep_widths(config.params, REPRESENTATIVE_WIDTHS)
    return pd.DataFrame([r.model_dump(include=set(TABLE_COLUMNS)) for r in rows], columns=TABLE_COLUMNS)


def cmd_heatmap(config: RunConfig) -> pd.DataFrame:
    """Long-form robust rate over (u_b, u_w), row-major in u_b then u_w."""
    ub = _given_or(config.u_b_grid, DEFAULT_WIDTH_GRID)
    uw = _given_or(config.u_w_grid, DEFAULT_WIDTH_GRID)
    rates = heatmap(config.params, ub, uw)
    records = [
        {"u_b": b, "u_w": w, "r_robust": float(rates[i, j])}
        for i, b in enumerate(ub)
        for j, w in enumerate(uw)
    ]
    return pd.DataFrame(records, columns=HEATMAP_COLUMNS)


def cmd_region(config: RunConfig) -> pd.DataFrame:
    """Nominal and robust feasibility rasters in long form."""
    default_p, default_r = default_region_grids(config.params, config.p_points, config.r_points)
    p_grid = _given_or(config.p_grid, default_p)
    r_grid = _given_or(config.r_grid, default_r)

    frames = []
    for box in (None, config.design_box):
        raster = feasible_region(config.params, box, p_grid, r_grid)
        p_mesh, r_mesh = np.meshgrid(raster.p_grid, raster.r_grid)
        frames.append(
            pd.DataFrame({
                "mode": raster.mode,
                "p": p_mesh.ravel(),
                "r": r_mesh.ravel(),
                "feasible": raster.mask.ravel().astype(int),
            }, columns=REGION_COLUMNS)
        )
    return pd.concat(frames, ignore_index=True)


def cmd_validate(config: RunConfig) -> Tuple[pd.DataFrame, ValidationSummaryDict]:
    """Surrogate vs exact vs Monte Carlo detection error over a power grid."""
    if config.trials < MIN_VALIDATION_TRIALS:
        raise ConfigError(f"validate needs trials >= {MIN_VALIDATION_TRIALS}, got {config.trials}")
    plan = TrialPlan(trials=config.trials, seed=config.seed, chunk=config.chunk, sampler=config.sampler)
    p_grid = _given_or(config.p_grid, default_validation_grid())
    report = validate_surrogate(config.params, p_grid, plan, workers=config.workers)

    df = pd.DataFrame([r.model_dump() for r in report.rows], columns=VALIDATE_COLUMNS)
    summary = ValidationSummaryDict(
        mae=report.summary.mae,
        max_abs_err=report.summary.max_abs_err,
        trials=report.summary.trials,
        seed=report.summary.seed,
        chunk=plan.chunk,
        sampler=plan.sampler,
        p_grid=[float(p) for p in p_grid],
    )
    return df, summary


def cmd_benchmark(config: RunConfig) -> pd.DataFrame:
    """Conditional surrogate vs averaged benchmark along the Willie-side width."""
    grid = _given_or(config.u_grid, DEFAULT_WIDTH_GRID)
    rows = covertness_vs_uncertainty(config.params, grid)
    return pd.DataFrame([r.model_dump() for r in rows], columns=BENCHMARK_COLUMNS)


# -----------------------
# Argument parsing
# -----------------------

def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file (flat object)")
    common.add_argument("--out", help="Output file (default: stdout)")
    common.add_argument("--log-level", choices=get_args(LogLevel), default=None)

    params = common.add_argument_group("system parameters (linear units)")
    params.add_argument("--omega-b0", dest="omega_b0", type=float)
    params.add_argument("--sigma-b2", dest="sigma_b2", type=float)
    params.add_argument("--sigma-w20", dest="sigma_w20", type=float)
    params.add_argument("--omega-w", dest="omega_w", type=float)
    params.add_argument("--g-w", dest="g_w", type=float)
    params.add_argument("--n-block", dest="n_block", type=int)
    params.add_argument("--p-max", dest="p_max", type=float)
    params.add_argument("--delta", type=float)
    params.add_argument("--epsilon", type=float)

    unc = common.add_argument_group("uncertainty")
    unc.add_argument("--u", type=float, help="Common width for both sides")
    unc.add_argument("--u-b", dest="u_b", type=float)
    unc.add_argument("--u-w", dest="u_w", type=float)

    grids = common.add_argument_group("grids ('start:step:stop' or 'a,b,c')")
    grids.add_argument("--u-grid", dest="u_grid")
    grids.add_argument("--u-b-grid", dest="u_b_grid")
    grids.add_argument("--u-w-grid", dest="u_w_grid")
    grids.add_argument("--p-grid", dest="p_grid")
    grids.add_argument("--r-grid", dest="r_grid")
    grids.add_argument("--p-points", dest="p_points", type=int)
    grids.add_argument("--r-points", dest="r_points", type=int)

    mc = common.add_argument_group("monte carlo")
    mc.add_argument("--trials", type=int)
    mc.add_argument("--seed", type=int)
    mc.add_argument("--chunk", type=int)
    mc.add_argument("--workers", type=int)
    mc.add_argument("--sampler", choices=get_args(Sampler))
    return common


def build_parser() -> argparse.ArgumentParser:
    """Top-level parser with one sub-command per reproduced result."""
    parser = argparse.ArgumentParser(
        prog="covertlink",
        description="Robust covert link design under bounded uncertainty",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common_parser()
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("design", parents=[common], help="Nominal and robust optimum (JSON)")
    sub.add_parser("sweep", parents=[common], help="Designs vs common width u (CSV)")
    sub.add_parser("table", parents=[common], help="Representative width settings (CSV)")
    sub.add_parser("heatmap", parents=[common], help="Robust rate over (u_b, u_w) (CSV)")
    sub.add_parser("region", parents=[common], help="Feasible (P, R) regions (CSV)")
    sub.add_parser("validate", parents=[common], help="Surrogate vs Monte Carlo (CSV + JSON)")
    sub.add_parser("benchmark", parents=[common], help="Conditional vs averaged covertness (CSV)")
    return parser


def run(config: RunConfig, command: Command, stdout: TextIO, stderr: Optional[TextIO] = None) -> None:
    """Execute ``command`` and write its outputs.

    When ``validate`` writes its CSV to ``stdout`` the JSON summary goes to
    ``stderr`` so the CSV stays parseable.
    """
    if command == "design":
        report = cmd_design(config)
        if config.out:
            with open(config.out, "w", encoding="utf-8") as f:
                f.write(json.dumps(report, indent=2) + "\n")
        _emit_json(report, stdout)
    elif command == "validate":
        df, summary = cmd_validate(config)
        _write_csv(df, config.out, stdout)
        _emit_json(summary, stdout if config.out else (stderr or sys.stderr))
    else:
        handlers = {
            "sweep": cmd_sweep,
            "table": cmd_table,
            "heatmap": cmd_heatmap,
            "region": cmd_region,
            "benchmark": cmd_benchmark,
        }
        _write_csv(handlers[command](config), config.out, stdout)


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """Console entry point; returns the process exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)

    try:
        logging.basicConfig(
            level=args.log_level or get_log_level(),
            format="%(asctime)s %(name)s %(levelname)s %(message)s",
            stream=stderr,
        )
        config = load_config(args)
        run(config, args.command, stdout, stderr)
    except Exception as e:
        code = exit_code_for(e)
        stderr.write(f"covertlink {args.command}: {describe(e)}\n")
        if code == EXIT_FAILURE:
            logger.exception("Unexpected failure")
        return code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
