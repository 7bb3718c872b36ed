import json
import math
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

import numpy as np

from src.detector import DetectorSpec
from src.engine.interfaces import EngineConfig, TemperatureMode
from src.errors import ConfigError, DomainError

logger = logging.getLogger(__name__)

SCENARIOS = {
    "both-moving": {
        "name": "Both qubits moving",
        "description": "A and B cross their baths with the same speed",
        "moving": ("a", "b"),
    },
    "only-a-moving": {
        "name": "Only A moving",
        "description": "The hot-side qubit moves, the cold-side qubit is at rest",
        "moving": ("a",),
    },
    "only-b-moving": {
        "name": "Only B moving",
        "description": "The cold-side qubit moves, the hot-side qubit is at rest",
        "moving": ("b",),
    },
    "both-rest": {
        "name": "Both at rest",
        "description": "Standard SWAP engine with rest-frame temperatures",
        "moving": (),
    },
}

DEFAULT_SCENARIO_VELOCITY = 0.8
OUTPUT_FORMATS = ("csv", "json")
SPACINGS = ("linear", "log")
REGIMES = ("high_t", "low_t", "numeric-full")
SCANS = ("velocity_a", "velocity_b", "effective_ratio")
ANCHOR_FRAMES = ("rest", "effective")
VARY_CHOICES = ("omega_a", "omega_b")


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.count < 2:
            raise ConfigError("sweep_count", f"must be at least 2, got {self.count}")
        if not self.start < self.stop:
            raise ConfigError("sweep_start", f"must be below sweep_stop ({self.start} >= {self.stop})")
        if self.spacing not in SPACINGS:
            raise ConfigError("sweep_spacing", f"must be one of {SPACINGS}, got {self.spacing!r}")
        if self.spacing == "log" and not self.start > 0:
            raise ConfigError("sweep_start", "log spacing requires a positive start")

    def values(self) -> list[float]:
        if self.spacing == "log":
            grid = np.geomspace(self.start, self.stop, self.count)
        else:
            grid = np.linspace(self.start, self.stop, self.count)
        return [float(v) for v in grid]


@dataclass
class ScenarioConfig:
    """Flat scenario configuration shared by all subcommands.

    Precedence: field defaults < --config JSON file < command-line flags.
    """
    omega_a: float = 1.0
    omega_b: float = 0.5
    beta_a: float = 0.5
    beta_b: float = 1.0
    velocity_a: float = 0.0
    velocity_b: float = 0.0
    coupling: float = 1.0
    temperature_mode: str = "full"
    scenarios: list[str] = field(default_factory=lambda: list(SCENARIOS))
    scenario_velocity: float = DEFAULT_SCENARIO_VELOCITY
    beta: float = 1.0
    velocities: list[float] = field(default_factory=lambda: [0.0, 0.3, 0.6, 0.8, 0.95])
    sweep_parameter: str | None = None
    sweep_start: float | None = None
    sweep_stop: float | None = None
    sweep_count: int | None = None
    sweep_spacing: str = "linear"
    sweep_values: list[float] | None = None
    regime: str = "high_t"
    scan: str = "velocity_b"
    vary: str = "omega_a"
    anchor: float | None = None
    anchor_frame: str = "rest"
    workers: int = 1
    format: str = "csv"
    out: str = "-"

    def validate(self) -> "ScenarioConfig":
        for name in ("omega_a", "omega_b", "beta_a", "beta_b", "coupling", "beta"):
            value = getattr(self, name)
            if not (_is_number(value) and math.isfinite(value) and value > 0):
                raise ConfigError(name, f"must be a positive number, got {value!r}")
        for name in ("velocity_a", "velocity_b", "scenario_velocity"):
            _check_velocity_field(name, getattr(self, name))
        _check_list("velocities", self.velocities)
        for v in self.velocities:
            _check_velocity_field("velocities", v)
        _check_choice("temperature_mode", self.temperature_mode, tuple(m.value for m in TemperatureMode))
        _check_list("scenarios", self.scenarios)
        for name in self.scenarios:
            _check_choice("scenarios", name, tuple(SCENARIOS))
        _check_choice("regime", self.regime, REGIMES)
        _check_choice("scan", self.scan, SCANS)
        _check_choice("vary", self.vary, VARY_CHOICES)
        _check_choice("anchor_frame", self.anchor_frame, ANCHOR_FRAMES)
        _check_choice("format", self.format, OUTPUT_FORMATS)
        if not isinstance(self.out, str) or not self.out:
            raise ConfigError("out", f"must be a path or '-', got {self.out!r}")
        if self.anchor is not None and not (_is_number(self.anchor) and self.anchor > 0):
            raise ConfigError("anchor", f"must be positive, got {self.anchor!r}")
        if not (_is_int(self.workers) and self.workers >= 1):
            raise ConfigError("workers", f"must be an integer of at least 1, got {self.workers!r}")
        self._validate_sweep()
        return self

    def _validate_sweep(self) -> None:
        if self.sweep_parameter is not None and not isinstance(self.sweep_parameter, str):
            raise ConfigError("sweep_parameter", f"must be a string, got {self.sweep_parameter!r}")
        for name in ("sweep_start", "sweep_stop"):
            value = getattr(self, name)
            if value is not None and not (_is_number(value) and math.isfinite(value)):
                raise ConfigError(name, f"must be a finite number, got {value!r}")
        if self.sweep_count is not None and not (_is_int(self.sweep_count) and self.sweep_count >= 2):
            raise ConfigError("sweep_count", f"must be an integer of at least 2, got {self.sweep_count!r}")
        _check_choice("sweep_spacing", self.sweep_spacing, SPACINGS)
        if self.sweep_start is not None and self.sweep_stop is not None and not self.sweep_start < self.sweep_stop:
            raise ConfigError("sweep_start", f"must be below sweep_stop ({self.sweep_start} >= {self.sweep_stop})")
        if self.sweep_spacing == "log" and self.sweep_start is not None and not self.sweep_start > 0:
            raise ConfigError("sweep_start", "log spacing requires a positive start")
        if self.sweep_values is not None:
            _check_list("sweep_values", self.sweep_values)
            for v in self.sweep_values:
                if not (_is_number(v) and math.isfinite(v)):
                    raise ConfigError("sweep_values", f"must hold finite numbers, got {v!r}")

    def sweep(self, parameter: str, start: float, stop: float, count: int) -> SweepSpec:
        """Sweep spec with the given defaults filled in for unset sweep fields."""
        return SweepSpec(
            parameter=parameter,
            start=start if self.sweep_start is None else self.sweep_start,
            stop=stop if self.sweep_stop is None else self.sweep_stop,
            count=count if self.sweep_count is None else self.sweep_count,
            spacing=self.sweep_spacing,
        )

    def grid(self, parameter: str, start: float, stop: float, count: int) -> list[float]:
        """Values of the command's sweep axis `parameter`."""
        if self.sweep_parameter is not None and self.sweep_parameter != parameter:
            raise ConfigError("sweep_parameter",
                              f"this command sweeps {parameter!r}, got {self.sweep_parameter!r}")
        if self.sweep_values is not None:
            if not self.sweep_values:
                raise ConfigError("sweep_values", "must not be empty")
            return [float(v) for v in self.sweep_values]
        return self.sweep(parameter, start, stop, count).values()

    def engine_config(self) -> EngineConfig:
        try:
            return EngineConfig(
                spec_a=DetectorSpec(self.omega_a, self.velocity_a, self.beta_a, self.coupling),
                spec_b=DetectorSpec(self.omega_b, self.velocity_b, self.beta_b, self.coupling),
                temperature_mode=TemperatureMode(self.temperature_mode),
            )
        except DomainError as e:
            raise ConfigError("engine", str(e)) from e

    def scenario_config(self, name: str) -> EngineConfig:
        _check_choice("scenarios", name, tuple(SCENARIOS))
        moving = SCENARIOS[name]["moving"]
        speed = self.scenario_velocity
        return self.engine_config().with_velocities(
            velocity_a=speed if "a" in moving else 0.0,
            velocity_b=speed if "b" in moving else 0.0,
        )


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _check_list(name: str, value: Any) -> None:
    if not isinstance(value, list):
        raise ConfigError(name, f"must be a list, got {value!r}")


def _check_velocity_field(name: str, value: Any) -> None:
    if not (_is_number(value) and 0.0 <= value < 1.0):
        raise ConfigError(name, f"must lie in [0, 1), got {value!r}")


def _check_choice(name: str, value: Any, choices: tuple[str, ...]) -> None:
    if not isinstance(value, str) or value not in choices:
        raise ConfigError(name, f"must be one of {', '.join(choices)}; got {value!r}")


CONFIG_FIELDS = tuple(f.name for f in fields(ScenarioConfig))


def load_config_file(path: str | Path) -> dict[str, Any]:
    """Read a flat JSON object of ScenarioConfig fields."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except FileNotFoundError as e:
        raise ConfigError("config", f"file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise ConfigError("config", f"invalid JSON in {path}: {e.msg} (line {e.lineno})") from e
    if not isinstance(data, dict):
        raise ConfigError("config", f"{path} must hold a flat JSON object")
    for key in data:
        if key not in CONFIG_FIELDS:
            raise ConfigError(key, f"unknown configuration key in {path}")
    logger.info("Loaded config file %s (%d keys)", path, len(data))
    return data


def build_config(file_values: dict[str, Any] | None = None,
                 overrides: dict[str, Any] | None = None) -> ScenarioConfig:
    merged = dict(file_values or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    config = replace(ScenarioConfig(), **merged)
    return config.validate()
