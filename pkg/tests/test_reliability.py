import math

import numpy as np
import pytest
from pydantic import ValidationError

from covertlink import DomainError, OutageQuery, UncertaintyBox
from covertlink.reliability import max_rate_given_power, outage_array, outage_probability, worst_case_outage


def test_outage_unit_case():
    q = OutageQuery(power=1.0, rate=1.0, omega_b=1.0, sigma_b2=1.0)
    assert outage_probability(q) == pytest.approx(1.0 - math.exp(-1.0), rel=1e-14)


def test_outage_unit_case_against_fading_samples():
    gains = np.random.default_rng(7).exponential(1.0, 2_000_000)
    empirical = np.mean(np.log2(1.0 + gains) < 1.0)
    se = math.sqrt(0.632121 * 0.367879 / gains.size)
    assert abs(empirical - (1.0 - math.exp(-1.0))) <= 4 * se


def test_outage_corners():
    assert outage_probability(OutageQuery(power=0.7, rate=0.0, omega_b=1.0, sigma_b2=1.0)) == 0.0
    assert outage_probability(OutageQuery(power=0.0, rate=0.5, omega_b=1.0, sigma_b2=1.0)) == 1.0
    assert outage_probability(OutageQuery(power=0.0, rate=0.0, omega_b=1.0, sigma_b2=1.0)) == 0.0
    assert outage_array(1e-300, 5.0, 1.0, 1.0) == 1.0


def test_outage_query_rejects_bad_channel():
    with pytest.raises(ValidationError):
        OutageQuery(power=1.0, rate=1.0, omega_b=0.0, sigma_b2=1.0)


def test_nominal_optimum_saturates_outage_target():
    q = OutageQuery(power=0.253347, rate=0.038005, omega_b=1.0, sigma_b2=1.0)
    assert outage_probability(q) == pytest.approx(0.1, abs=1e-5)


def test_worst_case_outage_at_lower_endpoint():
    box = UncertaintyBox(omega_b_lo=0.8, omega_b_hi=1.0, sigma_w2_lo=0.8, sigma_w2_hi=1.0)
    assert worst_case_outage(0.202678, 0.024438, box, 1.0) == pytest.approx(0.1, abs=1e-5)


def test_worst_case_outage_degenerate_box():
    box = UncertaintyBox(omega_b_lo=1.3, omega_b_hi=1.3, sigma_w2_lo=1.0, sigma_w2_hi=1.0)
    q = OutageQuery(power=0.4, rate=0.2, omega_b=1.3, sigma_b2=0.9)
    assert worst_case_outage(0.4, 0.2, box, 0.9) == outage_probability(q)


def test_worst_case_outage_is_grid_supremum(rng):
    for _ in range(200):
        lo = rng.uniform(0.05, 2.0)
        hi = lo * rng.uniform(1.0, 3.0)
        box = UncertaintyBox(omega_b_lo=lo, omega_b_hi=hi, sigma_w2_lo=1.0, sigma_w2_hi=1.0)
        p, r, s2 = rng.uniform(0.01, 5.0), rng.uniform(0.0, 2.0), rng.uniform(0.1, 2.0)
        samples = outage_array(p, r, np.linspace(lo, hi, 100), s2)
        worst = worst_case_outage(p, r, box, s2)
        assert abs(samples.max() - worst) <= 1e-15
        assert worst >= outage_array(p, r, hi, s2)


def test_outage_strictly_decreasing_in_channel_power(rng):
    p = rng.uniform(0.5, 5.0, 1000)
    r = rng.uniform(0.01, 1.0, 1000)
    om = rng.uniform(0.5, 3.0, 1000)
    om_larger = om * rng.uniform(1.01, 2.0, 1000)
    assert np.all(outage_array(p, r, om_larger, 1.0) < outage_array(p, r, om, 1.0))


@pytest.mark.parametrize(
    "power,omega_b,expected",
    [(0.253347, 1.0, 0.038005), (0.101339, 0.4, 0.006148)],
)
def test_max_rate_table_values(power, omega_b, expected):
    assert max_rate_given_power(power, omega_b, 1.0, 0.1) == pytest.approx(expected, abs=1e-6)


def test_max_rate_zero_power():
    assert max_rate_given_power(0.0, 1.0, 1.0, 0.1) == 0.0


@pytest.mark.parametrize("delta", [0.0, 1.0, -0.2])
def test_max_rate_rejects_bad_delta(delta):
    with pytest.raises(DomainError):
        max_rate_given_power(1.0, 1.0, 1.0, delta)


def test_max_rate_inverts_outage(rng):
    for _ in range(1000):
        p = rng.uniform(1e-3, 10.0)
        om = rng.uniform(0.1, 10.0)
        s2 = rng.uniform(0.1, 5.0)
        delta = rng.uniform(0.01, 0.5)
        r = max_rate_given_power(p, om, s2, delta)
        q = OutageQuery(power=p, rate=r, omega_b=om, sigma_b2=s2)
        assert abs(outage_probability(q) - delta) <= 1e-12
