"""Two-point-measurement counting statistics of the SWAP stroke.

Each qubit starts in its effective Gibbs state; the SWAP maps the joint
eigenstate (a, b) to (b, a). Per outcome the stochastic work is the total
energy change of the two qubits and the hot heat is minus the energy change
of qubit A.
"""
import cmath
import math
import logging

import numpy as np
from scipy.special import expit

from src.errors import DomainError
from .interfaces import EngineConfig, JointWorkHeatDistribution, Outcome, QubitThermalState
from .temperature import effective_baths

logger = logging.getLogger(__name__)

MAX_CUMULANT_ORDER = 2
FINITE_DIFFERENCE_STEP = 1e-5


def _spin(level: int) -> float:
    return 0.5 if level else -0.5


def thermal_state(omega: float, beta_eff: float) -> QubitThermalState:
    return QubitThermalState(omega=omega, beta_eff=beta_eff, p_excited=float(expit(-beta_eff * omega)))


def thermal_states(config: EngineConfig) -> tuple[QubitThermalState, QubitThermalState]:
    bath_a, bath_b = effective_baths(config)
    return thermal_state(config.omega_a, bath_a.beta_eff), thermal_state(config.omega_b, bath_b.beta_eff)


def joint_distribution(config: EngineConfig) -> JointWorkHeatDistribution:
    state_a, state_b = thermal_states(config)
    outcomes = []
    for a in (0, 1):
        for b in (0, 1):
            probability = state_a.population(a) * state_b.population(b)
            if a == b:
                outcomes.append(Outcome(a, b, probability, 0.0, 0.0))
                continue
            delta_a = config.omega_a * (_spin(b) - _spin(a))
            delta_b = config.omega_b * (_spin(a) - _spin(b))
            outcomes.append(Outcome(a, b, probability, delta_a + delta_b, -delta_a))
    return JointWorkHeatDistribution(tuple(outcomes))


def characteristic_function(config: EngineConfig, chi_w: float, chi_h: float) -> complex:
    """E[exp(i chi_w W + i chi_h Q_H)] over the four outcomes."""
    if chi_w == 0 and chi_h == 0:
        return complex(1.0, 0.0)
    dist = joint_distribution(config)
    probabilities = np.array([o.probability for o in dist.outcomes])
    phases = np.array([chi_w * o.w + chi_h * o.q_h for o in dist.outcomes])
    return complex(np.sum(probabilities * np.exp(1j * phases)))


def moment(config: EngineConfig, m: int, n: int) -> float:
    """<W^m Q_H^n> by direct enumeration."""
    if m < 0 or n < 0:
        raise DomainError(f"moment orders must be non-negative, got ({m}, {n})")
    dist = joint_distribution(config)
    return math.fsum(o.probability * o.w ** m * o.q_h ** n for o in dist.outcomes)


def cumulant(config: EngineConfig, m: int, n: int) -> float:
    """Joint cumulant of (W, Q_H) of total order m + n <= 2."""
    if m < 0 or n < 0 or m + n > MAX_CUMULANT_ORDER:
        raise DomainError(f"cumulants are supported up to total order {MAX_CUMULANT_ORDER}, got ({m}, {n})")
    if m + n == 0:
        return 0.0
    if m + n == 1:
        return moment(config, m, n)
    first_w = moment(config, 1, 0)
    first_q = moment(config, 0, 1)
    if m == 2:
        return moment(config, 2, 0) - first_w ** 2
    if n == 2:
        return moment(config, 0, 2) - first_q ** 2
    return moment(config, 1, 1) - first_w * first_q


def finite_difference_means(config: EngineConfig, step: float = FINITE_DIFFERENCE_STEP) -> tuple[float, float]:
    """First cumulants from central differences of ln of the characteristic function."""
    if not step > 0:
        raise DomainError(f"step must be positive, got {step!r}")

    def log_chi(chi_w: float, chi_h: float) -> complex:
        return cmath.log(characteristic_function(config, chi_w, chi_h))

    d_w = (log_chi(step, 0.0) - log_chi(-step, 0.0)) / (2.0 * step)
    d_h = (log_chi(0.0, step) - log_chi(0.0, -step)) / (2.0 * step)
    return (-1j * d_w).real, (-1j * d_h).real
