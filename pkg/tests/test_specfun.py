import math

import numpy as np
import pytest

from covertlink import DomainError
from covertlink.specfun import q_func, q_inv, reg_gamma_lower, reg_gamma_upper, scaled_tail


def test_q_func_known_values():
    assert q_func(0.0) == 0.5
    assert q_func(0.2533471) == pytest.approx(0.4, abs=1e-7)
    assert q_func(1.959964) == pytest.approx(0.025, abs=1e-7)


def test_q_func_symmetry_and_monotonicity():
    x = np.linspace(-6, 6, 1201)
    q = q_func(x)
    assert np.allclose(q_func(-x), 1.0 - q, atol=1e-15)
    assert np.all(np.diff(q) < 0)


def test_q_func_deep_tail_is_finite():
    v = q_func(40.0)
    assert math.isfinite(v)
    assert 0.0 <= v < 1e-300


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_q_func_rejects_non_finite(bad):
    with pytest.raises(DomainError):
        q_func(bad)


def test_q_inv_known_values():
    assert q_inv(0.5) == 0.0
    assert q_inv(0.4) == pytest.approx(0.253347, abs=1e-6)
    assert q_inv(0.025) == pytest.approx(1.959964, abs=1e-6)


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.1, 1.5, math.nan])
def test_q_inv_rejects_outside_unit_interval(bad):
    with pytest.raises(DomainError):
        q_inv(bad)


def test_q_inv_inverts_q_func(rng):
    # below x = -5.5 Q(x) is within an ulp of 1 and x cannot be recovered
    x = rng.uniform(-5.0, 8.0, 10_000)
    back = q_inv(q_func(x))
    assert np.all(np.abs(back - x) <= 1e-10 * np.maximum(1.0, np.abs(x)))


def test_q_func_of_q_inv_is_identity(rng):
    p = q_func(rng.uniform(-8.0, 8.0, 10_000))
    p = p[(p > 0) & (p < 1)]
    assert np.allclose(q_func(q_inv(p)), p, rtol=1e-12, atol=0)


def test_scaled_tail_values():
    assert scaled_tail(0.0) == 0.5
    assert scaled_tail(0.2) == pytest.approx(0.429243, abs=1e-5)
    assert scaled_tail(0.2) == pytest.approx(math.exp(0.02) * q_func(0.2), rel=1e-13)


def test_scaled_tail_no_overflow_at_large_eta():
    v = scaled_tail(100.0)
    assert math.isfinite(v)
    assert v == pytest.approx(1.0 / (100.0 * math.sqrt(2.0 * math.pi)), rel=1e-3)
    assert math.isfinite(scaled_tail(1e6))


def test_scaled_tail_monotone_and_asymptotic():
    eta = np.arange(0, 5001) * 0.01
    values = scaled_tail(eta)
    assert np.all(np.diff(values) < 0)
    assert values.max() <= 0.5

    large = eta[eta >= 20.0]
    leading = 1.0 / (large * math.sqrt(2.0 * math.pi))
    two_term = leading * (1.0 - 1.0 / large ** 2)
    assert np.all(np.abs(scaled_tail(large) / two_term - 1.0) <= 4.0 / 20.0 ** 4)
    far = eta >= 32.0
    assert np.all(np.abs(values[far] / (1.0 / (eta[far] * math.sqrt(2.0 * math.pi))) - 1.0) <= 1e-3)


def test_scaled_tail_rejects_negative():
    with pytest.raises(DomainError):
        scaled_tail(-0.1)


def test_reg_gamma_upper_values():
    assert reg_gamma_upper(1.0, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-14)
    assert reg_gamma_upper(5.0, 5.0) == pytest.approx(0.440493, abs=1e-6)
    assert 0.48 < reg_gamma_upper(100.0, 100.0) < 0.49
    assert reg_gamma_upper(3.0, 0.0) == 1.0
    assert reg_gamma_upper(1e4, 1e4) == pytest.approx(0.5, abs=5e-3)


def test_reg_gamma_upper_decreasing_and_complementary():
    x = np.linspace(0.0, 30.0, 301)
    upper = reg_gamma_upper(10.0, x)
    assert np.all(np.diff(upper) <= 0)
    assert np.allclose(upper + reg_gamma_lower(10.0, x), 1.0, atol=1e-14)


@pytest.mark.parametrize("shape,x", [(0.0, 1.0), (-1.0, 1.0), (2.0, -0.5)])
def test_reg_gamma_upper_domain(shape, x):
    with pytest.raises(DomainError):
        reg_gamma_upper(shape, x)


@pytest.mark.parametrize("n,samples", [(1, 200_000), (10, 100_000), (100, 20_000)])
def test_reg_gamma_upper_matches_exponential_means(n, samples):
    rng = np.random.default_rng(1000 + n)
    means = rng.standard_exponential((samples, n)).mean(axis=1)
    for t in (0.8, 1.0, 1.2):
        p = reg_gamma_upper(n, n * t)
        empirical = np.mean(means >= t)
        se = math.sqrt(p * (1 - p) / samples)
        assert abs(empirical - p) <= 4 * se + 1e-12
