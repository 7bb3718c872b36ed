"""Efficiency at maximum power of the SWAP engine.

The cycle duration is a frequency-independent constant, so maximizing power
is maximizing the extracted work per cycle. Closed forms cover the high- and
low-temperature regimes; a golden-section maximizer of the exact extracted
work cross-validates them and is authoritative in the full temperature mode.
"""
import math
import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from src.errors import BracketError, DomainError
from src.special import wright_omega
from src.engine.cycle import carnot_bounds, classify_mode, engine_window, extracted_work
from src.engine.interfaces import CarnotBounds, EngineConfig, OperatingMode, TemperatureMode
from src.engine.temperature import effective_baths, get_temperature_model

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

HIGH_T_ANCHOR = 0.12  # beta_B * omega_B
LOW_T_ANCHOR = 6.5  # beta_A * omega_A
GOLDEN_TOLERANCE = 1e-10
PARABOLIC_STEP = 1e-5  # relative to the golden-section argmax
SELF_CONSISTENT_TOLERANCE = 1e-12
MAX_SELF_CONSISTENT_ITER = 100
BRACKET_SAMPLES = 199


class OptimumMethod(str, Enum):
    CLOSED_FORM_HIGH_T = "closed_form_high_t"
    CLOSED_FORM_LOW_T = "closed_form_low_t"
    NUMERIC = "numeric"


class VaryFrequency(str, Enum):
    OMEGA_A = "omega_a"
    OMEGA_B = "omega_b"


class Regime(str, Enum):
    HIGH_T = "high_t"
    LOW_T = "low_t"
    NUMERIC_FULL = "numeric-full"


class ScanParameter(str, Enum):
    VELOCITY_A = "velocity_a"
    VELOCITY_B = "velocity_b"
    EFFECTIVE_RATIO = "effective_ratio"


class AnchorFrame(str, Enum):
    REST = "rest"
    EFFECTIVE = "effective"


@dataclass(frozen=True)
class PowerOptimum:
    optimal_frequency: float
    max_work: float
    eta_star: float
    frequency_ratio: float
    method: OptimumMethod

    def __post_init__(self):
        if not self.max_work > 0:
            raise DomainError(f"no positive work at the optimum (max_work={self.max_work!r})")
        if not 0.0 < self.frequency_ratio < 1.0:
            raise DomainError(f"optimum ratio {self.frequency_ratio!r} outside (0, 1)")


@dataclass(frozen=True)
class ScanPoint:
    value: float
    optimum: PowerOptimum | None
    bounds: CarnotBounds
    mode: OperatingMode


def _check_gradient(beta_a_eff: float, beta_b_eff: float) -> None:
    if not (beta_a_eff > 0 and beta_b_eff > 0):
        raise DomainError("effective inverse temperatures must be positive")
    if not beta_a_eff < beta_b_eff:
        raise DomainError(
            f"no engine window: beta_a_eff={beta_a_eff!r} must be below beta_b_eff={beta_b_eff!r}"
        )


def max_power_high_t(beta_a_eff: float, beta_b_eff: float, omega_b: float) -> PowerOptimum:
    """Optimum over omega_A at fixed omega_B in the linear-response regime."""
    _check_gradient(beta_a_eff, beta_b_eff)
    if not omega_b > 0:
        raise DomainError(f"omega_b must be positive, got {omega_b!r}")
    total = beta_a_eff + beta_b_eff
    omega_a = omega_b * total / (2.0 * beta_a_eff)
    return PowerOptimum(
        optimal_frequency=omega_a,
        max_work=extracted_work(omega_a, omega_b, beta_a_eff, beta_b_eff),
        eta_star=(beta_b_eff - beta_a_eff) / total,
        frequency_ratio=2.0 * beta_a_eff / total,
        method=OptimumMethod.CLOSED_FORM_HIGH_T,
    )


def max_power_low_t(beta_a_eff: float, beta_b_eff: float, omega_a: float) -> PowerOptimum:
    """Optimum over omega_B at fixed omega_A when both qubits are deep in the low-T regime.

    Stationarity of (omega_A - omega_B)(e^{-beta_A omega_A} - e^{-beta_B omega_B})
    gives omega_B = omega_A + (1 - W(e^{omega_A (beta_B - beta_A) + 1})) / beta_B.
    """
    _check_gradient(beta_a_eff, beta_b_eff)
    if not omega_a > 0:
        raise DomainError(f"omega_a must be positive, got {omega_a!r}")
    exponent = omega_a * (beta_b_eff - beta_a_eff) + 1.0
    if not math.isfinite(exponent):
        raise DomainError(f"Lambert argument exponent {exponent!r} is not representable")
    omega_b = omega_a + (1.0 - wright_omega(exponent)) / beta_b_eff
    if not 0.0 < omega_b < omega_a:
        raise DomainError(f"low-temperature optimum omega_b={omega_b!r} exits the engine window")
    return PowerOptimum(
        optimal_frequency=omega_b,
        max_work=extracted_work(omega_a, omega_b, beta_a_eff, beta_b_eff),
        eta_star=1.0 - omega_b / omega_a,
        frequency_ratio=omega_b / omega_a,
        method=OptimumMethod.CLOSED_FORM_LOW_T,
    )


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float) -> tuple[float, float]:
    """Golden-section search for the maximum of a unimodal f on [a, b].

    Returns the midpoint of the final bracket and f there.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)
    for _ in range(n - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
    lo, hi = (a, d) if yc > yd else (c, b)
    x = 0.5 * (lo + hi)
    logger.debug("Golden section: %d steps, final bracket [%r, %r]", n, lo, hi)
    return x, f(x)


def _parabolic_refine(f: Callable[[float], float], x: float, h: float, lo: float, hi: float) -> float:
    # one parabola-vertex step past the ~sqrt(eps) resolution of golden section
    if x - h <= lo or x + h >= hi:
        return x
    f_minus, f_zero, f_plus = f(x - h), f(x), f(x + h)
    curvature = f_plus - 2.0 * f_zero + f_minus
    if not curvature < 0:
        return x
    shift = -0.5 * h * (f_plus - f_minus) / curvature
    return x + shift if abs(shift) <= h else x


def _work_at(config: EngineConfig, vary: VaryFrequency, frequency: float) -> float:
    if vary is VaryFrequency.OMEGA_A:
        trial = config.with_frequencies(omega_a=frequency)
    else:
        trial = config.with_frequencies(omega_b=frequency)
    bath_a, bath_b = effective_baths(trial)
    return extracted_work(trial.omega_a, trial.omega_b, bath_a.beta_eff, bath_b.beta_eff)


def max_power_numeric(config: EngineConfig, vary: VaryFrequency | str,
                      bracket: tuple[float, float]) -> PowerOptimum:
    """Maximize the exact extracted work over one frequency inside bracket."""
    vary = VaryFrequency(vary)
    lo, hi = sorted(bracket)
    if not (lo > 0 and math.isfinite(hi)) or lo == hi:
        raise BracketError(f"bracket endpoints must be positive and distinct, got {bracket!r}")

    def objective(frequency: float) -> float:
        return _work_at(config, vary, frequency)

    width = hi - lo
    x, _ = golden_section_max(objective, lo, hi, GOLDEN_TOLERANCE * width)
    x = _parabolic_refine(objective, x, PARABOLIC_STEP * x, lo, hi)
    best = objective(x)
    if not best > 0:
        raise BracketError(f"no positive extracted work inside [{lo!r}, {hi!r}]")
    if not (objective(lo) < best and objective(hi) < best):
        raise BracketError(f"maximum of the extracted work is not interior to [{lo!r}, {hi!r}]")
    omega_a = x if vary is VaryFrequency.OMEGA_A else config.omega_a
    omega_b = x if vary is VaryFrequency.OMEGA_B else config.omega_b
    ratio = omega_b / omega_a
    return PowerOptimum(
        optimal_frequency=x,
        max_work=best,
        eta_star=1.0 - ratio,
        frequency_ratio=ratio,
        method=OptimumMethod.NUMERIC,
    )


def seed_bracket(config: EngineConfig, vary: VaryFrequency | str,
                 samples: int = BRACKET_SAMPLES) -> tuple[float, float]:
    """Bracket around the best sampled frequency ratio.

    Ratios are sampled inside the engine window when the effective
    temperatures do not depend on frequency, and across (0, 1) otherwise.
    """
    vary = VaryFrequency(vary)
    low = 0.0
    if not get_temperature_model(config.temperature_mode).frequency_dependent:
        low, _ = engine_window(config)
        if not low < 1.0:
            raise BracketError(f"empty engine window: ratio lower bound {low!r} >= 1")
    ratios = np.linspace(low, 1.0, samples + 2)[1:-1]
    if vary is VaryFrequency.OMEGA_A:
        frequencies = np.sort(config.omega_b / ratios)
    else:
        frequencies = config.omega_a * ratios
    work = np.array([_work_at(config, vary, float(f)) for f in frequencies])
    best = int(np.argmax(work))
    if not work[best] > 0:
        raise BracketError(f"extracted work is non-positive at every sampled {vary.value}")
    lo = frequencies[max(best - 1, 0)]
    hi = frequencies[min(best + 1, len(frequencies) - 1)]
    return float(lo), float(hi)


def _self_consistent(step: Callable[[float], PowerOptimum], start: float) -> PowerOptimum:
    """Fixed point of frequency -> optimum(frequency) for frequency-dependent baths."""
    frequency = start
    for i in range(MAX_SELF_CONSISTENT_ITER):
        optimum = step(frequency)
        if abs(optimum.optimal_frequency - frequency) <= SELF_CONSISTENT_TOLERANCE * optimum.optimal_frequency:
            logger.debug("Self-consistent optimum after %d iterations", i + 1)
            return optimum
        frequency = optimum.optimal_frequency
    raise DomainError(f"optimum did not converge within {MAX_SELF_CONSISTENT_ITER} iterations")


def _apply_scan(base: EngineConfig, scan: ScanParameter, value: float) -> EngineConfig:
    if scan is ScanParameter.VELOCITY_A:
        return base.with_velocities(velocity_a=value)
    if scan is ScanParameter.VELOCITY_B:
        return base.with_velocities(velocity_b=value)
    model = get_temperature_model(base.temperature_mode)
    if model.frequency_dependent:
        raise DomainError("effective_ratio scans need a frequency-independent temperature mode")
    if not value > 0:
        raise DomainError(f"effective ratio must be positive, got {value!r}")
    # beta_eff / beta depends on the velocity only in these modes
    scale_a = model.bath(base.spec_a).beta_eff / base.spec_a.beta_bath
    beta_b_eff = model.bath(base.spec_b).beta_eff
    return replace(base, spec_a=replace(base.spec_a, beta_bath=value * beta_b_eff / scale_a))


def _anchor_omega_a(config: EngineConfig, anchor: float, frame: AnchorFrame) -> float:
    beta_a = config.spec_a.beta_bath
    if frame is AnchorFrame.REST:
        return anchor / beta_a
    model = get_temperature_model(config.temperature_mode)
    if not model.frequency_dependent:
        return anchor / model.bath(config.spec_a).beta_eff

    def residual(omega: float) -> float:
        return omega * model.bath(replace(config.spec_a, omega=omega)).beta_eff - anchor

    guess = anchor / beta_a
    return brentq(residual, guess * 1e-3, guess * 1e3, xtol=1e-14, rtol=1e-14)


def optimize_point(config: EngineConfig, regime: Regime | str, anchor: float | None = None,
                   anchor_frame: AnchorFrame | str = AnchorFrame.REST,
                   vary: VaryFrequency | str = VaryFrequency.OMEGA_A) -> tuple[EngineConfig, PowerOptimum]:
    """Regime-appropriate optimum at one parameter point; returns the optimal config too."""
    regime = Regime(regime)
    model = get_temperature_model(config.temperature_mode)
    if regime is Regime.LOW_T:
        omega_a = _anchor_omega_a(config, LOW_T_ANCHOR if anchor is None else anchor, AnchorFrame(anchor_frame))
        config = config.with_frequencies(omega_a=omega_a)
        beta_a_eff = model.bath(config.spec_a).beta_eff

        def low_step(omega_b: float) -> PowerOptimum:
            beta_b_eff = model.bath(replace(config.spec_b, omega=omega_b)).beta_eff
            return max_power_low_t(beta_a_eff, beta_b_eff, omega_a)

        start = 0.5 * omega_a * (1.0 + config.spec_a.beta_bath / config.spec_b.beta_bath)
        optimum = _self_consistent(low_step, start)
        return config.with_frequencies(omega_b=optimum.optimal_frequency), optimum

    if regime is Regime.NUMERIC_FULL:
        config = replace(config, temperature_mode=TemperatureMode.FULL)
        vary = VaryFrequency(vary)
        if vary is VaryFrequency.OMEGA_A:
            omega_b = (HIGH_T_ANCHOR if anchor is None else anchor) / config.spec_b.beta_bath
            config = config.with_frequencies(omega_b=omega_b)
        else:
            omega_a = _anchor_omega_a(config, LOW_T_ANCHOR if anchor is None else anchor,
                                      AnchorFrame(anchor_frame))
            config = config.with_frequencies(omega_a=omega_a)
        optimum = max_power_numeric(config, vary, seed_bracket(config, vary))
        if vary is VaryFrequency.OMEGA_A:
            return config.with_frequencies(omega_a=optimum.optimal_frequency), optimum
        return config.with_frequencies(omega_b=optimum.optimal_frequency), optimum

    omega_b = (HIGH_T_ANCHOR if anchor is None else anchor) / config.spec_b.beta_bath
    config = config.with_frequencies(omega_b=omega_b)
    beta_b_eff = model.bath(config.spec_b).beta_eff

    def high_step(omega_a: float) -> PowerOptimum:
        beta_a_eff = model.bath(replace(config.spec_a, omega=omega_a)).beta_eff
        return max_power_high_t(beta_a_eff, beta_b_eff, omega_b)

    start = omega_b * 0.5 * (1.0 + config.spec_b.beta_bath / config.spec_a.beta_bath)
    optimum = _self_consistent(high_step, start)
    return config.with_frequencies(omega_a=optimum.optimal_frequency), optimum


def eta_star_scan(base: EngineConfig, scan: ScanParameter | str, grid: Sequence[float],
                  regime: Regime | str = Regime.HIGH_T, anchor: float | None = None,
                  anchor_frame: AnchorFrame | str = AnchorFrame.REST,
                  vary: VaryFrequency | str = VaryFrequency.OMEGA_A) -> list[ScanPoint]:
    """Efficiency at maximum power and reference efficiencies along a parameter grid.

    Points without an engine window keep their slot with optimum=None and the
    operating mode of the scanned configuration at its own frequencies.
    """
    scan = ScanParameter(scan)
    points = []
    for value in grid:
        value = float(value)
        config = _apply_scan(base, scan, value)
        try:
            optimal_config, optimum = optimize_point(config, regime, anchor, anchor_frame, vary)
        except (DomainError, BracketError) as e:
            logger.warning("No optimum at %s=%r: %s", scan.value, value, e)
            points.append(ScanPoint(value, None, carnot_bounds(config), classify_mode(config)))
            continue
        points.append(ScanPoint(value, optimum, carnot_bounds(optimal_config), OperatingMode.ENGINE))
    logger.info("Scanned %d %s points (%d with an optimum)", len(points), scan.value,
                sum(p.optimum is not None for p in points))
    return points
