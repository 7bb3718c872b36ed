import math

import numpy as np
import pytest

from src.detector import DetectorSpec, effective_temperature_high_t
from src.engine.cycle import (
    carnot_bounds,
    classify_mode,
    cycle_observables,
    engine_window,
    entropy_production,
    mean_hot_heat,
    mean_work,
    mode_from_heats,
    tanh_gap,
)
from src.engine.interfaces import EngineConfig, OperatingMode, TemperatureMode
from src.engine.statistics import (
    characteristic_function,
    cumulant,
    finite_difference_means,
    joint_distribution,
    moment,
    thermal_state,
)
from src.engine.temperature import TEMPERATURE_MODELS, effective_baths, get_temperature_model
from src.errors import DomainError

MODES = ("full", "high_t", "rest")


def make_config(omega_a=1.0, omega_b=0.5, beta_a=0.5, beta_b=1.0, velocity_a=0.0, velocity_b=0.0,
                mode="rest"):
    return EngineConfig(
        spec_a=DetectorSpec(omega_a, velocity_a, beta_a),
        spec_b=DetectorSpec(omega_b, velocity_b, beta_b),
        temperature_mode=mode,
    )


def random_config(rng, mode=None):
    return make_config(
        omega_a=float(rng.uniform(0.01, 10)),
        omega_b=float(rng.uniform(0.01, 10)),
        beta_a=float(rng.uniform(0.1, 5)),
        beta_b=float(rng.uniform(0.1, 5)),
        velocity_a=float(rng.uniform(0, 0.95)),
        velocity_b=float(rng.uniform(0, 0.95)),
        mode=mode or MODES[int(rng.integers(len(MODES)))],
    )


@pytest.fixture
def rng():
    return np.random.default_rng(7)


class TestTemperatureModels:
    def test_registry_covers_every_mode(self):
        assert set(TEMPERATURE_MODELS) == set(TemperatureMode)
        assert get_temperature_model("full").frequency_dependent is True
        assert get_temperature_model(TemperatureMode.HIGH_T).frequency_dependent is False

    def test_rest_mode_ignores_velocity(self):
        bath_a, bath_b = effective_baths(make_config(velocity_a=0.3, velocity_b=0.9))
        assert (bath_a.t_eff, bath_b.t_eff) == (2.0, 1.0)

    def test_high_t_mode(self):
        _, bath_b = effective_baths(make_config(velocity_b=0.8, mode="high_t"))
        assert bath_b.t_eff == pytest.approx(0.823959, rel=1e-6)

    def test_full_mode_at_rest_equals_rest_mode(self):
        full = effective_baths(make_config(mode="full"))
        rest = effective_baths(make_config(mode="rest"))
        assert full == rest

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError):
            make_config(mode="lukewarm")


class TestThermalState:
    def test_populations(self):
        state = thermal_state(2.0, 0.5)
        assert state.p_excited == pytest.approx(1 / (1 + math.e), rel=1e-15)
        assert state.p_excited < 0.5
        assert state.p_ground + state.p_excited == pytest.approx(1.0, abs=1e-16)
        assert state.partition_function == pytest.approx(2 * math.cosh(0.5), rel=1e-15)

    def test_extreme_argument_does_not_overflow(self):
        state = thermal_state(1e4, 1.0)
        assert state.p_excited == 0.0
        assert state.population(0) == 1.0


class TestJointDistribution:
    def test_probabilities_sum_to_one(self, rng):
        for _ in range(500):
            dist = joint_distribution(random_config(rng))
            assert abs(dist.total_probability - 1.0) <= 1e-14
            assert all(o.probability >= 0 for o in dist.outcomes)

    def test_unchanged_outcomes_carry_nothing(self):
        dist = joint_distribution(make_config(omega_a=3.0, omega_b=1.0))
        for o in dist.outcomes:
            if o.initial_a == o.initial_b:
                assert (o.w, o.q_h) == (0.0, 0.0)

    def test_exchange_outcome_energies(self):
        dist = joint_distribution(make_config(omega_a=3.0, omega_b=1.0))
        by_state = {(o.initial_a, o.initial_b): o for o in dist.outcomes}
        # A excited hands its quantum to B
        assert by_state[(1, 0)].w == -2.0
        assert by_state[(1, 0)].q_h == 3.0
        assert by_state[(0, 1)].w == 2.0
        assert by_state[(0, 1)].q_h == -3.0

    def test_identical_qubits_do_no_work(self):
        config = make_config(omega_a=1.3, omega_b=1.3, beta_a=0.7, beta_b=0.7)
        dist = joint_distribution(config)
        assert all(o.w == 0.0 for o in dist.outcomes)
        assert moment(config, 0, 1) == 0.0

    def test_wrong_outcome_count_rejected(self):
        dist = joint_distribution(make_config())
        with pytest.raises(DomainError, match="4 outcomes"):
            type(dist)(dist.outcomes[:3])


class TestMoments:
    def test_zeroth_moment(self):
        assert moment(make_config(), 0, 0) == pytest.approx(1.0, abs=1e-15)

    def test_enumeration_matches_closed_forms(self, rng):
        for _ in range(10_000):
            config = random_config(rng)
            bath_a, bath_b = effective_baths(config)
            args = (config.omega_a, config.omega_b, bath_a.beta_eff, bath_b.beta_eff)
            scale = max(config.omega_a, config.omega_b)
            assert abs(moment(config, 1, 0) - mean_work(*args)) <= 1e-12 * scale
            assert abs(moment(config, 0, 1) - mean_hot_heat(*args)) <= 1e-12 * scale

    def test_negative_order_rejected(self):
        with pytest.raises(DomainError):
            moment(make_config(), -1, 0)

    def test_cumulants(self):
        config = make_config(omega_a=2.0, omega_b=1.0, velocity_b=0.8, mode="full")
        assert cumulant(config, 0, 0) == 0.0
        assert cumulant(config, 1, 0) == moment(config, 1, 0)
        assert cumulant(config, 2, 0) >= 0
        assert cumulant(config, 0, 2) >= 0
        assert cumulant(config, 2, 0) == pytest.approx(moment(config, 2, 0) - moment(config, 1, 0) ** 2)
        assert cumulant(config, 1, 1) == pytest.approx(
            moment(config, 1, 1) - moment(config, 1, 0) * moment(config, 0, 1))

    def test_cumulant_order_limit(self):
        with pytest.raises(DomainError, match="order"):
            cumulant(make_config(), 2, 1)


class TestCharacteristicFunction:
    def test_normalized_at_origin(self, rng):
        for _ in range(50):
            assert characteristic_function(random_config(rng), 0.0, 0.0) == 1 + 0j

    def test_modulus_bounded(self, rng):
        for _ in range(50):
            config = random_config(rng)
            assert abs(characteristic_function(config, 0.7, -1.3)) <= 1.0 + 1e-15

    def test_identical_qubits_work_function_is_one(self):
        config = make_config(omega_a=1.0, omega_b=1.0, beta_a=2.0, beta_b=2.0)
        assert characteristic_function(config, 3.0, 0.0) == pytest.approx(1.0 + 0j, abs=1e-15)

    def test_finite_difference_means(self, rng):
        for _ in range(200):
            config = random_config(rng)
            fd_w, fd_q = finite_difference_means(config)
            assert abs(fd_w - moment(config, 1, 0)) <= 1e-7
            assert abs(fd_q - moment(config, 0, 1)) <= 1e-7

    def test_step_must_be_positive(self):
        with pytest.raises(DomainError):
            finite_difference_means(make_config(), step=0.0)


class TestCycleObservables:
    def test_second_law(self, rng):
        for mode in MODES:
            for _ in range(34_000):
                config = random_config(rng, mode)
                obs = cycle_observables(config)
                assert obs.sigma >= -1e-12
                if obs.mode is OperatingMode.ENGINE:
                    assert obs.eta <= carnot_bounds(config).eta_c_eff + 1e-12

    def test_sigma_is_clausius_form(self, rng):
        for _ in range(1000):
            config = random_config(rng)
            bath_a, bath_b = effective_baths(config)
            obs = cycle_observables(config)
            clausius = -bath_a.beta_eff * obs.q_h - bath_b.beta_eff * obs.q_c
            assert obs.sigma == pytest.approx(clausius, rel=1e-9, abs=1e-12)

    def test_first_law(self, rng):
        for _ in range(1000):
            obs = cycle_observables(random_config(rng))
            assert abs(obs.w_ext - (obs.q_h + obs.q_c)) <= 1e-12

    def test_engine_efficiency_bounded(self, rng):
        engines = 0
        for _ in range(5000):
            config = random_config(rng)
            obs = cycle_observables(config)
            if obs.mode is OperatingMode.ENGINE:
                engines += 1
                assert obs.eta == pytest.approx(1 - config.frequency_ratio, rel=1e-12)
                assert obs.eta <= carnot_bounds(config).eta_c_eff + 1e-12
            else:
                assert obs.eta is None
        assert engines > 0

    def test_engine_iff_window(self, rng):
        for _ in range(5000):
            config = random_config(rng)
            low, high = engine_window(config)
            ratio = config.frequency_ratio
            if min(abs(ratio - low), abs(ratio - high)) < 1e-9:
                continue
            is_engine = classify_mode(config) is OperatingMode.ENGINE
            assert is_engine == (low < ratio < high)

    def test_rest_frame_example(self):
        config = make_config(omega_a=0.16, omega_b=0.12)
        obs = cycle_observables(config)
        assert obs.mode is OperatingMode.ENGINE
        assert obs.eta == pytest.approx(0.25, rel=1e-14)
        assert obs.w_ext > 0 and obs.q_h > 0 and obs.q_c < 0

    def test_equal_frequencies_do_no_work(self):
        obs = cycle_observables(make_config(omega_a=1.0, omega_b=1.0))
        assert obs.w_mean == 0.0
        assert obs.mode is not OperatingMode.ENGINE

    def test_equal_temperatures_never_run_an_engine(self):
        obs = cycle_observables(make_config(omega_a=2.0, omega_b=1.0, beta_a=1.0, beta_b=1.0))
        assert obs.mode is OperatingMode.REFRIGERATOR
        assert obs.sigma > 0

    def test_below_window_refrigerates(self):
        assert classify_mode(make_config(omega_a=1.0, omega_b=0.4)) is OperatingMode.REFRIGERATOR

    def test_low_temperature_gap_is_accurate(self):
        gap = tanh_gap(15.0, 8.8, 1.0, 2.0)
        expected = 2 * math.exp(-15.0) - 2 * math.exp(-17.6)
        assert gap == pytest.approx(expected, rel=1e-5)

    def test_entropy_production_zero_on_boundary(self):
        assert entropy_production(2.0, 1.0, 0.5, 1.0) == 0.0


class TestMotionShiftedThreshold:
    """B moving at 0.8 in the high-T mode: engine iff ratio exceeds 0.5 f(0.8)."""

    @pytest.fixture
    def threshold(self):
        return 0.5 * effective_temperature_high_t(DetectorSpec(1.0, 0.8, 1.0)).t_eff

    def config(self, ratio):
        return make_config(omega_a=0.1, omega_b=0.1 * ratio, velocity_b=0.8, mode="high_t")

    def test_threshold_value(self, threshold):
        assert threshold == pytest.approx(0.4119797, abs=1e-6)

    def test_engine_window_matches(self, threshold):
        low, high = engine_window(self.config(0.7))
        assert low == pytest.approx(threshold, rel=1e-14)
        assert high == 1.0

    def test_switches_at_threshold(self, threshold):
        assert classify_mode(self.config(threshold + 1e-6)) is OperatingMode.ENGINE
        assert classify_mode(self.config(threshold - 1e-6)) is OperatingMode.REFRIGERATOR

    def test_engine_where_rest_frame_refrigerates(self):
        assert classify_mode(self.config(0.45)) is OperatingMode.ENGINE
        rest = make_config(omega_a=0.1, omega_b=0.045)
        assert classify_mode(rest) is OperatingMode.REFRIGERATOR


class TestModeFromHeats:
    @pytest.mark.parametrize("w_ext,q_h,q_c,mode", [
        (1.0, 2.0, -1.0, OperatingMode.ENGINE),
        (-1.0, -2.0, 1.0, OperatingMode.REFRIGERATOR),
        (0.0, 0.0, 0.0, OperatingMode.REFRIGERATOR),
        (-1.0, -0.5, -0.5, OperatingMode.HEATER),
        (-1.0, 0.5, -1.5, OperatingMode.ACCELERATOR),
        (1e-15, 1.0, -1.0, OperatingMode.ACCELERATOR),
    ])
    def test_classification(self, w_ext, q_h, q_c, mode):
        assert mode_from_heats(w_ext, q_h, q_c) is mode


class TestCarnotBounds:
    def test_rest_frame(self):
        bounds = carnot_bounds(make_config())
        assert bounds.eta_c_rest == bounds.eta_c_eff == 0.5
        assert bounds.eta_ca_rest == pytest.approx(1 - math.sqrt(0.5), rel=1e-15)

    def test_moving_cold_qubit_raises_effective_bound(self):
        bounds = carnot_bounds(make_config(velocity_b=0.8, mode="high_t"))
        assert bounds.eta_c_rest == 0.5
        assert bounds.eta_c_eff == pytest.approx(1 - 0.5 * 0.823959, rel=1e-6)
        assert bounds.eta_ca_eff > bounds.eta_ca_rest
