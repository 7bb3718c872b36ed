import argparse
import logging
import sys

from src import __version__
from src.config import ScenarioConfig, build_config, load_config_file
from src.errors import ConfigError, DomainError, EmptyResultError
from src.sweep.commands import COMMANDS
from src.sweep.tables import write_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_EMPTY = 3

PRECEDENCE_HELP = (
    "Configuration precedence: built-in defaults < --config JSON file < command-line flags. "
    "The config file is a single flat JSON object whose keys are the long flag names with "
    "dashes replaced by underscores."
)

FLOAT_FLAGS = ("omega_a", "omega_b", "beta_a", "beta_b", "velocity_a", "velocity_b", "coupling",
               "scenario_velocity", "beta", "sweep_start", "sweep_stop", "anchor")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _str_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relengine",
        description="Thermodynamics of a two-qubit SWAP engine with qubits moving through thermal baths.",
        epilog=PRECEDENCE_HELP,
    )
    parser.add_argument("--version", action="version", version=f"relengine {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    helps = {
        "teff": "effective temperature grid over (omega, velocity)",
        "engine": "cycle observables versus omega_B/omega_A for the motion scenarios",
        "optimize": "efficiency at maximum power along a velocity or temperature-ratio scan",
        "fcs": "work/heat counting statistics of a single configuration",
    }
    for name, text in helps.items():
        sub = subparsers.add_parser(name, help=text, description=text, epilog=PRECEDENCE_HELP)
        sub.add_argument("--config", help="flat JSON scenario file")
        sub.add_argument("--format", choices=("csv", "json"), default=None)
        sub.add_argument("--out", default=None, help="output path, '-' for standard output")
        sub.add_argument("--workers", type=int, default=None)
        sub.add_argument("-v", "--verbose", action="store_true")
        sub.add_argument("-q", "--quiet", action="store_true")
        for flag in FLOAT_FLAGS:
            sub.add_argument("--" + flag.replace("_", "-"), dest=flag, type=float, default=None)
        sub.add_argument("--temperature-mode", dest="temperature_mode", default=None)
        sub.add_argument("--sweep-parameter", dest="sweep_parameter", default=None)
        sub.add_argument("--sweep-count", dest="sweep_count", type=int, default=None)
        sub.add_argument("--sweep-spacing", dest="sweep_spacing", default=None)
        sub.add_argument("--sweep-values", dest="sweep_values", type=_float_list, default=None)
        sub.add_argument("--velocities", type=_float_list, default=None)
        sub.add_argument("--scenarios", type=_str_list, default=None)
        sub.add_argument("--regime", default=None)
        sub.add_argument("--scan", default=None)
        sub.add_argument("--vary", default=None)
        sub.add_argument("--anchor-frame", dest="anchor_frame", default=None)
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    skip = {"command", "config", "verbose", "quiet"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        file_values = load_config_file(args.config) if args.config else {}
        config: ScenarioConfig = build_config(file_values, _overrides(args))
        logger.info("Running %s (format=%s, workers=%d)", args.command, config.format, config.workers)
        state = COMMANDS[args.command](config)
        write_table(state, config.format, config.out)
    except (ConfigError, DomainError) as e:
        logger.error("Invalid configuration: %s", e)
        print(f"relengine: error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except EmptyResultError as e:
        logger.error("Empty result: %s", e)
        print(f"relengine: no engine window: {e}", file=sys.stderr)
        return EXIT_EMPTY
    except Exception as e:
        logger.error("Unhandled error in %s: %s", args.command, e, exc_info=True)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(run())
