import math

import numpy as np
import pytest

from src.detector import (
    SMALL_FREQUENCY_THRESHOLD,
    DetectorSpec,
    EffectiveBath,
    doppler_factors,
    effective_temperature,
    effective_temperature_high_t,
    log_transition_rate,
    lorentz_factor,
    transition_rate,
)
from src.errors import DomainError


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def high_t_factor(velocity):
    return math.log((1 + velocity) / (1 - velocity)) / (2 * velocity * lorentz_factor(velocity))


class TestDetectorSpec:
    def test_temperature(self):
        assert DetectorSpec(1.0, 0.5, 4.0).temperature == 0.25

    @pytest.mark.parametrize("kwargs,match", [
        ({"omega": 0.0, "velocity": 0.1, "beta_bath": 1.0}, "omega"),
        ({"omega": 1.0, "velocity": 1.0, "beta_bath": 1.0}, "velocity"),
        ({"omega": 1.0, "velocity": -0.1, "beta_bath": 1.0}, "velocity"),
        ({"omega": 1.0, "velocity": 0.1, "beta_bath": 0.0}, "beta_bath"),
        ({"omega": 1.0, "velocity": 0.1, "beta_bath": 1.0, "coupling": 0.0}, "coupling"),
        ({"omega": float("nan"), "velocity": 0.1, "beta_bath": 1.0}, "omega"),
    ])
    def test_rejects_invalid_fields(self, kwargs, match):
        with pytest.raises(DomainError, match=match):
            DetectorSpec(**kwargs)

    def test_effective_bath_requires_positive_temperature(self):
        with pytest.raises(DomainError):
            EffectiveBath.from_beta(-1.0)


class TestDopplerFactors:
    def test_rest(self):
        pair = doppler_factors(0.0)
        assert (pair.blue, pair.red) == (1.0, 1.0)

    @pytest.mark.parametrize("velocity,blue,red", [(0.8, 3.0, 1 / 3), (0.6, 2.0, 0.5)])
    def test_known_values(self, velocity, blue, red):
        pair = doppler_factors(velocity)
        assert pair.blue == pytest.approx(blue, rel=1e-15)
        assert pair.red == pytest.approx(red, rel=1e-15)

    def test_product_is_one(self, rng):
        for v in rng.uniform(0.0, 0.999999, 1000):
            pair = doppler_factors(float(v))
            assert abs(pair.blue * pair.red - 1.0) <= 1e-14

    @pytest.mark.parametrize("velocity", [1.0, 1.5, -0.2, float("nan")])
    def test_rejects_bad_velocity(self, velocity):
        with pytest.raises(DomainError, match="velocity"):
            doppler_factors(velocity)

    def test_lorentz_factor(self):
        assert lorentz_factor(0.6) == pytest.approx(1.25, rel=1e-15)


class TestTransitionRate:
    def test_rejects_zero_frequency(self):
        with pytest.raises(DomainError):
            log_transition_rate(DetectorSpec(1.0, 0.3, 1.0), 0.0)

    @pytest.mark.parametrize("omega", [0.3, 1.0, 5.0])
    def test_rest_frame_planck_form(self, omega):
        spec = DetectorSpec(omega, 0.0, 2.0)
        expected_up = omega / (2 * math.pi) / math.expm1(2.0 * omega)
        expected_down = omega / (2 * math.pi) / -math.expm1(-2.0 * omega)
        assert transition_rate(spec, omega) == pytest.approx(expected_up, rel=1e-13)
        assert transition_rate(spec, -omega) == pytest.approx(expected_down, rel=1e-13)

    @pytest.mark.parametrize("omega", [0.5, 1.0, -1.0, 3.0])
    def test_small_velocity_approaches_rest(self, omega):
        moving = DetectorSpec(abs(omega), 1e-8, 1.0)
        rest = DetectorSpec(abs(omega), 0.0, 1.0)
        assert transition_rate(moving, omega) == pytest.approx(transition_rate(rest, omega), rel=1e-6)

    def test_coupling_scales_quadratically(self):
        weak = DetectorSpec(1.0, 0.7, 1.0, coupling=0.5)
        strong = DetectorSpec(1.0, 0.7, 1.0, coupling=1.0)
        assert transition_rate(strong, 1.0) == pytest.approx(4 * transition_rate(weak, 1.0), rel=1e-13)

    def test_rates_positive(self, rng):
        for _ in range(200):
            spec = DetectorSpec(rng.uniform(0.01, 10), rng.uniform(0, 0.99), rng.uniform(0.1, 5))
            assert transition_rate(spec, spec.omega) > 0
            assert transition_rate(spec, -spec.omega) > transition_rate(spec, spec.omega)

    def test_log_rate_finite_for_huge_frequency(self):
        spec = DetectorSpec(1.0, 0.5, 1.0)
        assert math.isfinite(log_transition_rate(spec, 1e300))
        assert math.isfinite(log_transition_rate(spec, -1e300))

    def test_detailed_balance(self):
        for omega in np.linspace(0.1, 10.0, 10):
            for beta in np.linspace(0.2, 5.0, 10):
                for v in (0.1, 0.3, 0.5, 0.8, 0.95):
                    spec = DetectorSpec(float(omega), v, float(beta))
                    ratio = transition_rate(spec, -spec.omega) / transition_rate(spec, spec.omega)
                    beta_eff = effective_temperature(spec).beta_eff
                    assert ratio == pytest.approx(math.exp(spec.omega * beta_eff), rel=1e-10)


class TestEffectiveTemperature:
    def test_rest_frame_identity(self, rng):
        for _ in range(1000):
            beta = float(rng.uniform(0.01, 100))
            spec = DetectorSpec(float(rng.uniform(1e-4, 1e3)), 0.0, beta)
            assert effective_temperature(spec).t_eff == 1.0 / beta

    @pytest.mark.parametrize("velocity", [0.1, 0.5, 0.8, 0.95])
    def test_small_frequency_matches_high_t(self, velocity):
        spec = DetectorSpec(1e-4, velocity, 1.0)
        full = effective_temperature(spec).t_eff
        assert abs(full - effective_temperature_high_t(spec).t_eff) <= 1e-4

    def test_below_threshold_uses_high_t(self):
        spec = DetectorSpec(0.1 * SMALL_FREQUENCY_THRESHOLD, 0.6, 1.0)
        assert effective_temperature(spec) == effective_temperature_high_t(spec)

    def test_high_t_known_values(self):
        assert effective_temperature_high_t(DetectorSpec(1.0, 0.8, 1.0)).t_eff == pytest.approx(
            math.log(9.0) / (8.0 / 3.0), rel=1e-12)
        assert effective_temperature_high_t(DetectorSpec(1.0, 0.99, 1.0)).t_eff == pytest.approx(
            high_t_factor(0.99), rel=1e-12)
        assert high_t_factor(0.99) == pytest.approx(0.3771, abs=1e-4)

    def test_low_frequency_moving_qubit_looks_colder(self):
        bath = effective_temperature(DetectorSpec(0.01, 0.8, 1.0))
        assert bath.t_eff == pytest.approx(0.8240, abs=1e-3)

    def test_high_frequency_moving_qubit_looks_hotter(self):
        assert effective_temperature(DetectorSpec(20.0, 0.8, 1.0)).t_eff > 1.0

    def test_blue_shift_limit(self):
        bath = effective_temperature(DetectorSpec(1e10, 0.8, 1.0))
        assert bath.t_eff == pytest.approx(3.0, rel=1e-7)

    def test_ultra_relativistic_cooling(self):
        temps = [effective_temperature(DetectorSpec(1.0, v, 1.0)).t_eff for v in (0.9, 0.99, 0.999, 0.9999)]
        assert all(b < a for a, b in zip(temps, temps[1:]))
        assert temps[0] < 1.0

    def test_beta_and_temperature_consistent(self):
        bath = effective_temperature(DetectorSpec(2.0, 0.4, 0.7))
        assert bath.t_eff * bath.beta_eff == pytest.approx(1.0, rel=1e-15)
