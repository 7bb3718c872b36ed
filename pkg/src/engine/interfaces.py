import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from enum import Enum

from src.detector import DetectorSpec, EffectiveBath
from src.errors import DomainError

PROBABILITY_TOLERANCE = 1e-14


class TemperatureMode(str, Enum):
    FULL = "full"
    HIGH_T = "high_t"
    REST = "rest"


class OperatingMode(str, Enum):
    ENGINE = "engine"
    REFRIGERATOR = "refrigerator"
    HEATER = "heater"
    ACCELERATOR = "accelerator"


@dataclass(frozen=True)
class QubitThermalState:
    omega: float
    beta_eff: float
    p_excited: float

    @property
    def p_ground(self) -> float:
        return 1.0 - self.p_excited

    @property
    def partition_function(self) -> float:
        return 2.0 * math.cosh(0.5 * self.beta_eff * self.omega)

    def population(self, level: int) -> float:
        return self.p_excited if level else self.p_ground


@dataclass(frozen=True)
class EngineConfig:
    """Two-qubit SWAP engine; qubit A couples to the hot bath, B to the cold one."""
    spec_a: DetectorSpec
    spec_b: DetectorSpec
    temperature_mode: TemperatureMode = TemperatureMode.FULL

    def __post_init__(self):
        if not isinstance(self.spec_a, DetectorSpec) or not isinstance(self.spec_b, DetectorSpec):
            raise DomainError("spec_a and spec_b must be DetectorSpec instances")
        object.__setattr__(self, "temperature_mode", TemperatureMode(self.temperature_mode))

    @property
    def omega_a(self) -> float:
        return self.spec_a.omega

    @property
    def omega_b(self) -> float:
        return self.spec_b.omega

    @property
    def frequency_ratio(self) -> float:
        return self.spec_b.omega / self.spec_a.omega

    def with_frequencies(self, omega_a: float | None = None, omega_b: float | None = None) -> "EngineConfig":
        spec_a = self.spec_a if omega_a is None else replace(self.spec_a, omega=omega_a)
        spec_b = self.spec_b if omega_b is None else replace(self.spec_b, omega=omega_b)
        return replace(self, spec_a=spec_a, spec_b=spec_b)

    def with_velocities(self, velocity_a: float | None = None, velocity_b: float | None = None) -> "EngineConfig":
        spec_a = self.spec_a if velocity_a is None else replace(self.spec_a, velocity=velocity_a)
        spec_b = self.spec_b if velocity_b is None else replace(self.spec_b, velocity=velocity_b)
        return replace(self, spec_a=spec_a, spec_b=spec_b)


@dataclass(frozen=True)
class Outcome:
    initial_a: int
    initial_b: int
    probability: float
    w: float
    q_h: float


@dataclass(frozen=True)
class JointWorkHeatDistribution:
    outcomes: tuple[Outcome, ...]

    def __post_init__(self):
        if len(self.outcomes) != 4:
            raise DomainError(f"expected 4 outcomes, got {len(self.outcomes)}")
        total = math.fsum(o.probability for o in self.outcomes)
        if abs(total - 1.0) > 4 * PROBABILITY_TOLERANCE:
            raise DomainError(f"outcome probabilities sum to {total!r}")

    @property
    def total_probability(self) -> float:
        return math.fsum(o.probability for o in self.outcomes)


@dataclass(frozen=True)
class CycleObservables:
    w_mean: float
    w_ext: float
    q_h: float
    q_c: float
    sigma: float
    eta: float | None
    mode: OperatingMode


@dataclass(frozen=True)
class CarnotBounds:
    eta_c_rest: float
    eta_c_eff: float
    eta_ca_rest: float
    eta_ca_eff: float


class TemperatureModel(ABC):
    mode: TemperatureMode

    @abstractmethod
    def bath(self, spec: DetectorSpec) -> EffectiveBath:
        ...

    @property
    @abstractmethod
    def frequency_dependent(self) -> bool:
        ...
