import logging

from src.detector import (
    DetectorSpec,
    EffectiveBath,
    effective_temperature,
    effective_temperature_high_t,
)
from .interfaces import EngineConfig, TemperatureMode, TemperatureModel

logger = logging.getLogger(__name__)


class FullTemperatureModel(TemperatureModel):
    """Frequency-dependent effective temperature from the exact rate ratio."""
    mode = TemperatureMode.FULL

    def bath(self, spec: DetectorSpec) -> EffectiveBath:
        return effective_temperature(spec)

    @property
    def frequency_dependent(self) -> bool:
        return True


class HighTemperatureModel(TemperatureModel):
    mode = TemperatureMode.HIGH_T

    def bath(self, spec: DetectorSpec) -> EffectiveBath:
        return effective_temperature_high_t(spec)

    @property
    def frequency_dependent(self) -> bool:
        return False


class RestFrameModel(TemperatureModel):
    """Ignores the velocity: the qubit sees the bath's rest-frame temperature."""
    mode = TemperatureMode.REST

    def bath(self, spec: DetectorSpec) -> EffectiveBath:
        return EffectiveBath(t_eff=1.0 / spec.beta_bath, beta_eff=spec.beta_bath)

    @property
    def frequency_dependent(self) -> bool:
        return False


TEMPERATURE_MODELS: dict[TemperatureMode, TemperatureModel] = {
    TemperatureMode.FULL: FullTemperatureModel(),
    TemperatureMode.HIGH_T: HighTemperatureModel(),
    TemperatureMode.REST: RestFrameModel(),
}


def get_temperature_model(mode: TemperatureMode | str) -> TemperatureModel:
    return TEMPERATURE_MODELS[TemperatureMode(mode)]


def effective_baths(config: EngineConfig) -> tuple[EffectiveBath, EffectiveBath]:
    model = get_temperature_model(config.temperature_mode)
    bath_a = model.bath(config.spec_a)
    bath_b = model.bath(config.spec_b)
    logger.debug("Effective baths (%s): T_A=%g, T_B=%g", model.mode.value, bath_a.t_eff, bath_b.t_eff)
    return bath_a, bath_b
