"""
Pipeline entrypoint: config-driven experiment runner.

Each command runs in two phases:

    1. prepare   → read the config, expand grids, resolve selectors
                   (nothing is written; any ConfigError ends the run here)
    2. execute   → create the output directory, snapshot the config,
                   compute, write tables / summaries / plot scripts

Exit codes:
    0  every checked inequality holds
    1  config error (or a config that contradicts a theorem hypothesis)
    2  at least one inequality violated
    3  a numerical guard tripped

Usage:
    python -m src.pipelines check-inequalities configs/check_inequalities.yaml
    python -m src.pipelines ritz-run configs/ritz_run.yaml --out artifacts/ritz --jobs 4
    spectral-lab counterexample configs/counterexample.yaml
"""

from __future__ import annotations

import argparse
import sys
from types import ModuleType

from src.pipelines import check_inequalities, counterexample, inverse_rate, ritz_run
from src.pipelines.common import EXIT_CONFIG, EXIT_GUARD, EXIT_VIOLATION
from src.utils.config import COMMANDS, load_experiment_config
from src.utils.errors import ConfigError, HypothesisError, NumericalGuardError
from src.utils.experiment import create_run
from src.utils.logger import get_logger


# ── Constants ───────────────────────────────────────────────────────────────

RUNNERS: dict[str, ModuleType] = {
    "check-inequalities": check_inequalities,
    "ritz-run": ritz_run,
    "counterexample": counterexample,
    "inverse-rate": inverse_rate,
}


# ── CLI ─────────────────────────────────────────────────────────────────────


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="spectral-lab",
        description="Spectral approximation laboratory: run one experiment from a YAML config",
    )
    parser.add_argument(
        "command",
        choices=COMMANDS,
        help="Experiment to run",
    )
    parser.add_argument(
        "config",
        type=str,
        help="Path to the experiment config YAML",
    )
    parser.add_argument(
        "--out",
        type=str,
        default=None,
        help="Output directory (overrides output_dir in the config)",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="Parallel workers for independent parameter tuples (overrides jobs)",
    )
    parser.add_argument(
        "--log-level",
        type=str,
        default="INFO",
        help="Console log level",
    )
    return parser.parse_args(argv)


# ── Main pipeline ───────────────────────────────────────────────────────────


def main(argv: list[str] | None = None) -> int:
    args = parse_args(argv)
    logger = get_logger("pipelines")
    runner = RUNNERS[args.command]

    # ── 1. Prepare ──────────────────────────────────────────────────────
    try:
        config = load_experiment_config(args.config).with_overrides(args.out, args.jobs)
        if config.command != args.command:
            raise ConfigError(
                f"Config {args.config} is for command '{config.command}', not '{args.command}'"
            )
        plan = runner.prepare(config)
    except (ConfigError, HypothesisError) as exc:
        logger.error("Config rejected: {}", exc)
        return EXIT_CONFIG

    # ── 2. Execute ──────────────────────────────────────────────────────
    run = create_run(args.command, args.config, config.output_dir, log_level=args.log_level)
    logger = get_logger("pipelines", run_id=run["run_id"])
    logger.info("Run {} started → {}", run["run_id"], run["out_dir"])

    try:
        status = runner.execute(plan, config, run)
    except NumericalGuardError as exc:
        logger.error("Numerical guard tripped: {}", exc)
        return EXIT_GUARD
    except (ConfigError, HypothesisError) as exc:
        logger.error("Config rejected: {}", exc)
        return EXIT_CONFIG

    if status == EXIT_VIOLATION:
        logger.warning("Run {} finished with violations", run["run_id"])
    else:
        logger.info("Run {} finished", run["run_id"])
    return status


def command_main(command: str, argv: list[str] | None = None) -> int:
    """``python -m src.pipelines.<module> <config> …`` for a single command."""
    argv = sys.argv[1:] if argv is None else argv
    return main([command, *argv])


if __name__ == "__main__":
    raise SystemExit(main())
