"""Subcommand bodies: each turns a ScenarioConfig into a SweepState of rows."""
import logging
from dataclasses import replace

from src.config import ScenarioConfig
from src.detector import DetectorSpec, effective_temperature
from src.engine.cycle import cycle_observables
from src.engine.interfaces import EngineConfig
from src.engine.statistics import cumulant, finite_difference_means, joint_distribution, moment
from src.errors import ConfigError, EmptyResultError
from src.optimizer import Regime, ScanParameter, eta_star_scan
from src.state import SweepState
from .grid import evaluate_grid

logger = logging.getLogger(__name__)

TEFF_COLUMNS = ("omega", "velocity", "beta", "t_eff", "t_eff_over_t")
ENGINE_COLUMNS = ("omega_ratio", "scenario", "w_ext", "q_h", "q_c", "sigma", "eta_or_blank", "mode")
OPTIMIZE_COLUMNS = ("scan_value", "eta_star", "eta_ca_rest", "eta_ca_eff", "eta_c_rest", "eta_c_eff",
                    "optimal_ratio", "max_work", "mode")
FCS_COLUMNS = ("record", "initial_a", "initial_b", "order_w", "order_q", "probability", "w", "q_h", "value")

BOUNDARY_MODE = "boundary"
MAX_FCS_ORDER = 2


def _teff_row(point: tuple[float, float, float, float]) -> dict:
    omega, velocity, beta, coupling = point
    bath = effective_temperature(DetectorSpec(omega, velocity, beta, coupling))
    return {
        "omega": omega,
        "velocity": velocity,
        "beta": beta,
        "t_eff": bath.t_eff,
        "t_eff_over_t": bath.t_eff * beta,
    }


def cmd_teff(config: ScenarioConfig) -> SweepState:
    omegas = config.grid("omega", 0.01 / config.beta, 20.0 / config.beta, 40)
    if any(not omega > 0 for omega in omegas):
        raise ConfigError("sweep_values", "omega grid values must be positive")
    points = [(omega, float(v), config.beta, config.coupling) for v in config.velocities for omega in omegas]
    state = SweepState(columns=TEFF_COLUMNS)
    for row in evaluate_grid(_teff_row, points, config.workers):
        state.add_row(row)
    return state


def _engine_row(point: tuple[str, float, EngineConfig, bool]) -> dict:
    scenario, ratio, base, boundary = point
    obs = cycle_observables(base.with_frequencies(omega_b=ratio * base.omega_a))
    return {
        "omega_ratio": ratio,
        "scenario": scenario,
        "w_ext": obs.w_ext,
        "q_h": obs.q_h,
        "q_c": obs.q_c,
        "sigma": obs.sigma,
        "eta_or_blank": obs.eta,
        "mode": BOUNDARY_MODE if boundary else obs.mode.value,
    }


def cmd_engine(config: ScenarioConfig) -> SweepState:
    ratios = config.grid("omega_ratio", 0.05, 1.0, 20)
    if any(not 0.0 < r <= 1.0 for r in ratios):
        raise ConfigError("sweep_values", "omega_ratio values must lie in (0, 1]")
    boundary = config.beta_a / config.beta_b
    points = []
    for scenario in config.scenarios:
        base = config.scenario_config(scenario)
        grid = list(ratios)
        if scenario == "both-rest" and 0.0 < boundary <= 1.0 and boundary not in grid:
            grid = sorted(grid + [boundary])
        points.extend((scenario, r, base, scenario == "both-rest" and r == boundary) for r in grid)
    state = SweepState(columns=ENGINE_COLUMNS)
    state.note(f"temperature_mode={config.temperature_mode}")
    state.note(f"scenario_velocity={config.scenario_velocity!r}")
    for row in evaluate_grid(_engine_row, points, config.workers):
        state.add_row(row)
    return state


def _optimize_point(point: tuple) -> dict:
    value, base, scan, regime, anchor, anchor_frame, vary = point
    result = eta_star_scan(base, scan, [value], regime, anchor, anchor_frame, vary)[0]
    optimum = result.optimum
    return {
        "scan_value": result.value,
        "eta_star": optimum.eta_star if optimum else None,
        "eta_ca_rest": result.bounds.eta_ca_rest,
        "eta_ca_eff": result.bounds.eta_ca_eff,
        "eta_c_rest": result.bounds.eta_c_rest,
        "eta_c_eff": result.bounds.eta_c_eff,
        "optimal_ratio": optimum.frequency_ratio if optimum else None,
        "max_work": optimum.max_work if optimum else None,
        "mode": result.mode.value,
    }


def cmd_optimize(config: ScenarioConfig) -> SweepState:
    scan = ScanParameter(config.scan)
    regime = Regime(config.regime)
    if scan is ScanParameter.EFFECTIVE_RATIO:
        grid = config.grid(scan.value, 0.05, 0.95, 19)
    else:
        grid = config.grid(scan.value, 0.0, 0.99, 34)
    base = config.engine_config()
    if scan is ScanParameter.EFFECTIVE_RATIO and base.temperature_mode.value == "full":
        raise ConfigError("scan", "effective_ratio scans need temperature_mode high_t or rest")
    if regime is Regime.NUMERIC_FULL:
        base = replace(base, temperature_mode="full")
    points = [(v, base, scan, regime, config.anchor, config.anchor_frame, config.vary) for v in grid]
    state = SweepState(columns=OPTIMIZE_COLUMNS)
    state.note(f"regime={regime.value}")
    state.note(f"temperature_mode={base.temperature_mode.value}")
    if config.anchor is not None:
        state.note(f"anchor={config.anchor!r}")
    if regime is Regime.LOW_T or config.vary == "omega_b":
        state.note(f"anchor_frame={config.anchor_frame}")
    for row in evaluate_grid(_optimize_point, points, config.workers):
        state.add_row(row, engine=row["eta_star"] is not None)
    logger.info("Optimized %d %s points, %.0f%% inside the engine window",
                state.points, scan.value, 100.0 * state.engine_fraction)
    if state.empty_engine_window:
        raise EmptyResultError(f"no {scan.value} grid point lies inside the engine window")
    return state


def _fcs_row(record: str, **values) -> dict:
    row = dict.fromkeys(FCS_COLUMNS)
    row["record"] = record
    row.update(values)
    return row


def cmd_fcs(config: ScenarioConfig) -> SweepState:
    engine = config.engine_config()
    dist = joint_distribution(engine)
    state = SweepState(columns=FCS_COLUMNS)
    state.note(f"temperature_mode={engine.temperature_mode.value}")
    for o in dist.outcomes:
        state.add_row(_fcs_row("outcome", initial_a=o.initial_a, initial_b=o.initial_b,
                               probability=o.probability, w=o.w, q_h=o.q_h))
    for m in range(MAX_FCS_ORDER + 1):
        for n in range(MAX_FCS_ORDER + 1):
            state.add_row(_fcs_row("moment", order_w=m, order_q=n, value=moment(engine, m, n)))
    for m, n in ((1, 0), (0, 1), (2, 0), (1, 1), (0, 2)):
        state.add_row(_fcs_row("cumulant", order_w=m, order_q=n, value=cumulant(engine, m, n)))
    fd_w, fd_q = finite_difference_means(engine)
    state.add_row(_fcs_row("fd_mean_w", order_w=1, order_q=0, value=abs(moment(engine, 1, 0) - fd_w)))
    state.add_row(_fcs_row("fd_mean_q_h", order_w=0, order_q=1, value=abs(moment(engine, 0, 1) - fd_q)))
    state.add_row(_fcs_row("probability_sum", value=dist.total_probability))
    return state


COMMANDS = {
    "teff": cmd_teff,
    "engine": cmd_engine,
    "optimize": cmd_optimize,
    "fcs": cmd_fcs,
}
