"""Mean thermodynamics of one SWAP cycle, operating modes and efficiency bounds."""
import math
import logging

from src.special import LN2, log1mexp
from .interfaces import CarnotBounds, CycleObservables, EngineConfig, OperatingMode
from .temperature import effective_baths

logger = logging.getLogger(__name__)

MODE_TOLERANCE = 1e-14


def tanh_gap(omega_a: float, omega_b: float, beta_a_eff: float, beta_b_eff: float) -> float:
    """tanh(beta_B omega_B / 2) - tanh(beta_A omega_A / 2) for positive arguments.

    Evaluated as sinh(x - y) / (cosh x cosh y) in log space, so the result
    keeps full relative precision when both tanh values are close to 1.
    """
    x = 0.5 * beta_b_eff * omega_b
    y = 0.5 * beta_a_eff * omega_a
    d = x - y
    if d == 0.0:
        return 0.0
    log_sinh = abs(d) + log1mexp(2.0 * abs(d)) - LN2
    # cosh z = e^z (1 + e^{-2z}) / 2
    log_cosh_product = x + y + math.log1p(math.exp(-2.0 * x)) + math.log1p(math.exp(-2.0 * y)) - 2.0 * LN2
    return math.copysign(math.exp(log_sinh - log_cosh_product), d)


def mean_work(omega_a: float, omega_b: float, beta_a_eff: float, beta_b_eff: float) -> float:
    """TPM-convention mean work; negative when the cycle delivers work."""
    return 0.5 * (omega_b - omega_a) * tanh_gap(omega_a, omega_b, beta_a_eff, beta_b_eff)


def mean_hot_heat(omega_a: float, omega_b: float, beta_a_eff: float, beta_b_eff: float) -> float:
    return 0.5 * omega_a * tanh_gap(omega_a, omega_b, beta_a_eff, beta_b_eff)


def extracted_work(omega_a: float, omega_b: float, beta_a_eff: float, beta_b_eff: float) -> float:
    return -mean_work(omega_a, omega_b, beta_a_eff, beta_b_eff)


def entropy_production(omega_a: float, omega_b: float, beta_a_eff: float, beta_b_eff: float) -> float:
    """-beta_A q_h - beta_B q_c, in the factorized form that is manifestly >= 0."""
    gap = tanh_gap(omega_a, omega_b, beta_a_eff, beta_b_eff)
    return 0.5 * (beta_b_eff * omega_b - beta_a_eff * omega_a) * gap


def _snap(value: float) -> float:
    return 0.0 if abs(value) <= MODE_TOLERANCE else value


def mode_from_heats(w_ext: float, q_h: float, q_c: float) -> OperatingMode:
    w_ext, q_h, q_c = _snap(w_ext), _snap(q_h), _snap(q_c)
    if w_ext > 0 and q_h > 0:
        return OperatingMode.ENGINE
    if w_ext <= 0 and q_c >= 0 and q_h <= 0:
        return OperatingMode.REFRIGERATOR
    if q_h < 0 and q_c < 0:
        return OperatingMode.HEATER
    return OperatingMode.ACCELERATOR


def cycle_observables(config: EngineConfig) -> CycleObservables:
    bath_a, bath_b = effective_baths(config)
    args = (config.omega_a, config.omega_b, bath_a.beta_eff, bath_b.beta_eff)
    w_mean = mean_work(*args)
    q_h = mean_hot_heat(*args)
    w_ext = -w_mean
    q_c = w_ext - q_h
    mode = mode_from_heats(w_ext, q_h, q_c)
    eta = 1.0 - config.omega_b / config.omega_a if mode is OperatingMode.ENGINE else None
    return CycleObservables(
        w_mean=w_mean,
        w_ext=w_ext,
        q_h=q_h,
        q_c=q_c,
        sigma=entropy_production(*args),
        eta=eta,
        mode=mode,
    )


def classify_mode(config: EngineConfig) -> OperatingMode:
    return cycle_observables(config).mode


def engine_window(config: EngineConfig) -> tuple[float, float]:
    """Open interval of omega_B/omega_A with positive extracted work at the current baths."""
    bath_a, bath_b = effective_baths(config)
    return bath_a.beta_eff / bath_b.beta_eff, 1.0


def carnot_bounds(config: EngineConfig) -> CarnotBounds:
    bath_a, bath_b = effective_baths(config)
    ratio_rest = config.spec_a.beta_bath / config.spec_b.beta_bath
    ratio_eff = bath_a.beta_eff / bath_b.beta_eff
    return CarnotBounds(
        eta_c_rest=1.0 - ratio_rest,
        eta_c_eff=1.0 - ratio_eff,
        eta_ca_rest=1.0 - math.sqrt(ratio_rest),
        eta_ca_eff=1.0 - math.sqrt(ratio_eff),
    )
