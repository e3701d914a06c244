import numpy as np
import pytest
from pydantic import ValidationError

from covertlink import (
    DesignPoint,
    DetectorMoments,
    ErrorEstimate,
    RegionRaster,
    SystemParams,
    Threshold,
    TrialPlan,
    UncertaintyBox,
    UncertaintyWidths,
    box_from_widths,
    validate_params,
)


def test_baseline_is_valid(baseline):
    assert validate_params(baseline) == []
    assert baseline.g_w == 0.2
    assert baseline.n_block == 100
    assert baseline.p_max == 10.0


def test_validate_reports_field_level_violations(baseline):
    data = baseline.model_dump()
    data.update(delta=0.0, n_block=0)
    violations = validate_params(data)
    assert "delta ∈ (0,1)" in violations
    assert "n_block ≥ 1" in violations
    assert len(violations) == 2


def test_validate_missing_and_unknown_keys(baseline):
    data = baseline.model_dump()
    del data["epsilon"]
    data["gain"] = 3.0
    violations = validate_params(data)
    assert "epsilon missing" in violations
    assert "gain is not a recognised parameter" in violations


def test_validate_accepts_unvalidated_model(baseline):
    raw = SystemParams.model_construct(**{**baseline.model_dump(), "epsilon": 1.0})
    assert validate_params(raw) == ["epsilon ∈ (0,1)"]


def test_system_params_construction_enforces_invariants():
    with pytest.raises(ValidationError, match="delta"):
        SystemParams.baseline(delta=0.0)
    with pytest.raises(ValidationError):
        SystemParams.baseline(g_w=-1.0)
    with pytest.raises(ValidationError):
        SystemParams(**SystemParams.baseline().model_dump(), u_b=0.1)


def test_box_from_widths_zero_width(baseline):
    box = box_from_widths(baseline, UncertaintyWidths())
    assert box == UncertaintyBox.degenerate(baseline)


def test_box_from_widths_table_setting(baseline):
    box = box_from_widths(baseline, UncertaintyWidths.common(0.2))
    assert box.omega_b_lo == pytest.approx(0.8)
    assert box.sigma_w2_lo == pytest.approx(0.8)
    assert box.omega_b_hi == baseline.omega_b0
    assert box.sigma_w2_hi == baseline.sigma_w20


def test_box_from_widths_arithmetic(baseline):
    params = baseline.model_copy(update={"omega_b0": 2.0})
    box = box_from_widths(params, UncertaintyWidths(u_b=0.5, u_w=0.0))
    assert box.omega_b_lo == 1.0


def test_box_from_widths_monotone_and_round_trip(baseline, rng):
    params = baseline.model_copy(update={"omega_b0": 1.7, "sigma_w20": 0.3})
    us = np.sort(rng.uniform(0.0, 0.99, 200))
    boxes = [box_from_widths(params, UncertaintyWidths(u_b=u, u_w=u)) for u in us]
    lows = [b.omega_b_lo for b in boxes]
    assert all(a >= b for a, b in zip(lows, lows[1:]))
    assert all(b.omega_b_hi == params.omega_b0 for b in boxes)
    for u, b in zip(us, boxes):
        assert abs((1.0 - b.omega_b_lo / params.omega_b0) - u) <= 1e-15
        assert abs((1.0 - b.sigma_w2_lo / params.sigma_w20) - u) <= 1e-15


@pytest.mark.parametrize("u", [-0.1, 1.0, 1.5])
def test_widths_range(u):
    with pytest.raises(ValidationError):
        UncertaintyWidths(u_b=u)


def test_box_interval_order():
    with pytest.raises(ValidationError):
        UncertaintyBox(omega_b_lo=1.1, omega_b_hi=1.0, sigma_w2_lo=0.5, sigma_w2_hi=1.0)
    with pytest.raises(ValidationError):
        UncertaintyBox(omega_b_lo=0.5, omega_b_hi=1.0, sigma_w2_lo=0.0, sigma_w2_hi=1.0)
    # upper bounds above nominal are allowed for hand-built boxes
    UncertaintyBox(omega_b_lo=0.5, omega_b_hi=3.0, sigma_w2_lo=0.5, sigma_w2_hi=3.0)


def test_design_point_non_negative():
    with pytest.raises(ValidationError):
        DesignPoint(power=-1.0, rate=0.0)


def test_detector_moments_from_link():
    m = DetectorMoments.from_link(0.25, 1.0, 0.2)
    assert m.mu0 == 1.0
    assert m.mu1 == pytest.approx(1.05)
    with pytest.raises(ValidationError):
        DetectorMoments(mu0=1.0, mu1=0.9)


def test_threshold_alias():
    assert Threshold(value=1.5).value == Threshold(**{"lambda": 1.5}).value
    assert float(Threshold(value=2.0)) == 2.0
    with pytest.raises(ValidationError):
        Threshold(value=0.0)


def test_trial_plan_chunks():
    assert TrialPlan(trials=25_000, chunk=10_000).n_chunks == 3
    with pytest.raises(ValidationError):
        TrialPlan(trials=0)


def test_error_estimate_from_counts():
    est = ErrorEstimate.from_counts(false_alarms=250, missed_detections=750, trials=1000)
    assert est.p_fa == 0.25
    assert est.p_md == 0.75
    assert est.xi == 1.0
    assert est.se_fa == pytest.approx(np.sqrt(0.25 * 0.75 / 1000))
    assert est.se_xi == pytest.approx(np.hypot(est.se_fa, est.se_md))


def test_region_raster_shape_check():
    with pytest.raises(ValidationError):
        RegionRaster(
            p_grid=np.arange(3.0),
            r_grid=np.arange(2.0),
            mask=np.zeros((3, 2), dtype=bool),
            mode="Nominal",
        )
