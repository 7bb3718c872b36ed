"""Qubit (Unruh-DeWitt detector) moving at constant velocity through a thermal
massless scalar-field bath: Doppler factors, transition rate and the
frequency-dependent effective temperature read off from detailed balance.
"""
import math
import logging
from dataclasses import dataclass

from src.errors import DomainError
from src.special import log1mexp, log_expm1

logger = logging.getLogger(__name__)

# below this beta*omega the log-difference form loses more than six digits
SMALL_FREQUENCY_THRESHOLD = 1e-6
# above this red-shifted exponent ln(1 - e^{-x}) is -e^{-x} to double precision
_ASYMPTOTIC_EXPONENT = 40.0
_LOG_RATIO_CUTOFF = 600.0


def _check_velocity(velocity: float) -> None:
    if not (math.isfinite(velocity) and 0.0 <= velocity < 1.0):
        raise DomainError(f"velocity must lie in [0, 1), got {velocity!r}")


@dataclass(frozen=True)
class DetectorSpec:
    omega: float
    velocity: float
    beta_bath: float
    coupling: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise DomainError(f"omega must be positive, got {self.omega!r}")
        _check_velocity(self.velocity)
        if not (math.isfinite(self.beta_bath) and self.beta_bath > 0):
            raise DomainError(f"beta_bath must be positive, got {self.beta_bath!r}")
        if not (math.isfinite(self.coupling) and self.coupling > 0):
            raise DomainError(f"coupling must be positive, got {self.coupling!r}")

    @property
    def temperature(self) -> float:
        return 1.0 / self.beta_bath


@dataclass(frozen=True)
class DopplerPair:
    blue: float
    red: float

    def __post_init__(self):
        if not (self.blue >= 1.0 >= self.red > 0.0):
            raise DomainError(f"invalid Doppler pair blue={self.blue!r}, red={self.red!r}")


@dataclass(frozen=True)
class EffectiveBath:
    t_eff: float
    beta_eff: float

    def __post_init__(self):
        if not (math.isfinite(self.t_eff) and self.t_eff > 0):
            raise DomainError(f"effective temperature must be positive, got {self.t_eff!r}")

    @classmethod
    def from_temperature(cls, t_eff: float) -> "EffectiveBath":
        return cls(t_eff=t_eff, beta_eff=1.0 / t_eff)

    @classmethod
    def from_beta(cls, beta_eff: float) -> "EffectiveBath":
        return cls(t_eff=1.0 / beta_eff, beta_eff=beta_eff)


def lorentz_factor(velocity: float) -> float:
    _check_velocity(velocity)
    return 1.0 / math.sqrt((1.0 - velocity) * (1.0 + velocity))


def doppler_factors(velocity: float) -> DopplerPair:
    """Blue- and red-shifted factors gamma(1 +/- v) in cancellation-free form."""
    _check_velocity(velocity)
    return DopplerPair(
        blue=math.sqrt((1.0 + velocity) / (1.0 - velocity)),
        red=math.sqrt((1.0 - velocity) / (1.0 + velocity)),
    )


def _log_rate_terms(beta: float, omega: float, velocity: float) -> tuple[float, float, float]:
    """Return (delta, log D, log N) for a moving detector and omega > 0.

    D = ln(1 - e^{-x1}) - ln(1 - e^{-x2}) and N = ln(e^{x1} - 1) - ln(e^{x2} - 1)
    with x1, x2 the blue/red-shifted exponents; N - D = x1 - x2 = delta exactly.
    """
    pair = doppler_factors(velocity)
    x1 = beta * omega * pair.blue
    x2 = beta * omega * pair.red
    delta = 2.0 * beta * omega * velocity * lorentz_factor(velocity)
    if x2 > _ASYMPTOTIC_EXPONENT:
        # D = e^{-x2} - e^{-x1} would underflow
        log_d = -x2 + log1mexp(delta)
    else:
        log_d = math.log(log1mexp(x1) - log1mexp(x2))
    log_n = math.log(delta + math.exp(log_d))
    return delta, log_d, log_n


def log_transition_rate(spec: DetectorSpec, omega_signed: float) -> float:
    """ln G(omega); G(omega) for omega > 0, G(-omega) for the opposite channel."""
    if omega_signed == 0 or not math.isfinite(omega_signed):
        raise DomainError(f"omega_signed must be finite and non-zero, got {omega_signed!r}")
    beta, lam, v = spec.beta_bath, spec.coupling, spec.velocity
    magnitude = abs(omega_signed)
    if v == 0.0:
        # Planck-factor rate lam^2 w / (2 pi) / (e^{beta w} - 1), signed w
        thermal = log_expm1(beta * magnitude) if omega_signed > 0 else log1mexp(beta * magnitude)
        return 2.0 * math.log(lam) + math.log(magnitude / (2.0 * math.pi)) - thermal
    gamma_v = v * lorentz_factor(v)
    log_prefactor = 2.0 * math.log(lam) - math.log(4.0 * math.pi * beta * gamma_v)
    _, log_d, log_n = _log_rate_terms(beta, magnitude, v)
    return log_prefactor + (log_d if omega_signed > 0 else log_n)


def transition_rate(spec: DetectorSpec, omega_signed: float) -> float:
    """Transition rate G(omega) of the moving detector.

    Underflows to 0.0 once the red-shifted exponent exceeds ~745; use
    log_transition_rate there.
    """
    return math.exp(log_transition_rate(spec, omega_signed))


def effective_temperature_high_t(spec: DetectorSpec) -> EffectiveBath:
    """Leading small-frequency effective temperature T ln((1+v)/(1-v)) / (2 gamma v)."""
    v = spec.velocity
    if v == 0.0:
        factor = 1.0
    else:
        factor = math.atanh(v) * math.sqrt((1.0 - v) * (1.0 + v)) / v
    return EffectiveBath.from_temperature(factor / spec.beta_bath)


def effective_temperature(spec: DetectorSpec) -> EffectiveBath:
    """Effective temperature omega / ln(G(-omega)/G(omega)) of the moving qubit."""
    if spec.velocity == 0.0:
        return EffectiveBath(t_eff=1.0 / spec.beta_bath, beta_eff=spec.beta_bath)
    if spec.beta_bath * spec.omega < SMALL_FREQUENCY_THRESHOLD:
        logger.debug("beta*omega=%g below %g, using the small-frequency form",
                     spec.beta_bath * spec.omega, SMALL_FREQUENCY_THRESHOLD)
        return effective_temperature_high_t(spec)
    delta, log_d, log_n = _log_rate_terms(spec.beta_bath, spec.omega, spec.velocity)
    if log_d > -_LOG_RATIO_CUTOFF:
        log_ratio = math.log1p(delta / math.exp(log_d))
    else:
        log_ratio = log_n - log_d
    return EffectiveBath.from_beta(log_ratio / spec.omega)
