"""End-to-end tests for the experiment runner: files written, exit codes, determinism."""

from __future__ import annotations

import json
import math
from pathlib import Path

import pandas as pd
import pytest
import yaml

from src.pipelines.cli import RUNNERS, main
from src.pipelines.common import EXIT_CONFIG, EXIT_GUARD, EXIT_OK
from src.utils.config import load_experiment_config
from src.utils.data_version import compute_directory_hash


def write_config(directory: Path, command: str, parameters: dict, seed: int = 7) -> Path:
    path = directory / f"{command}.yaml"
    payload = {
        "command": command,
        "seed": seed,
        "output_dir": str(directory / "unused"),
        "jobs": 1,
        "parameters": parameters,
    }
    path.write_text(yaml.safe_dump(payload, sort_keys=False), encoding="utf-8")
    return path


def run(command: str, config: Path, out: Path, *extra: str) -> int:
    return main([command, str(config), "--out", str(out), *extra])


SMALL_CORPUS = {"size": 5, "truncation": 16, "lam_max": 50.0}
CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"


# ── check-inequalities ──────────────────────────────────────────────────────


def test_kernel_sweep_writes_all_pairs(tmp_path):
    config = write_config(
        tmp_path,
        "check-inequalities",
        {"kernel": {"k": {"start": 1, "stop": 6, "step": 1}, "theta": list(range(1, 21))}},
    )
    out = tmp_path / "kernel"
    assert run("check-inequalities", config, out) == EXIT_OK

    table = pd.read_csv(out / "inequalities.csv", keep_default_na=False)
    assert list(table.columns) == ["check", "k", "param", "lhs", "rhs", "slack", "pass"]
    assert len(table) == 120
    first = table[(table["k"] == 1) & (table["param"] == "theta=1")].iloc[0]
    assert first["lhs"] == pytest.approx(2.0)
    assert first["rhs"] == pytest.approx(2.0, abs=1e-9)

    summary = json.loads((out / "summary.json").read_text())
    assert summary["pass_count"] == 120 and summary["fail_count"] == 0
    assert summary["command"] == "check-inequalities"
    assert (out / "config.yaml").is_file()
    assert (out / "run.log").is_file()


def test_empty_grid_is_config_error_without_output(tmp_path):
    config = write_config(tmp_path, "check-inequalities", {"kernel": {"k": [], "theta": [1.0]}})
    out = tmp_path / "empty"
    assert run("check-inequalities", config, out) == EXIT_CONFIG
    assert not out.exists()


def test_unsorted_grid_and_unknown_symbol_rejected(tmp_path):
    unsorted = write_config(tmp_path, "check-inequalities", {"jackson": {"k": [2, 1], "r": [1.0]}})
    assert run("check-inequalities", unsorted, tmp_path / "a") == EXIT_CONFIG

    unknown = write_config(
        tmp_path,
        "check-inequalities",
        {"corpus": SMALL_CORPUS, "symbols": ["cubic"], "jackson": {"k": [1], "r": [1.0]}},
    )
    assert run("check-inequalities", unknown, tmp_path / "b") == EXIT_CONFIG


def test_config_for_other_command_rejected(tmp_path):
    config = write_config(tmp_path, "counterexample", {"alpha": 1.0, "truncation": 2000})
    assert run("ritz-run", config, tmp_path / "out") == EXIT_CONFIG


def test_jackson_sweep_is_deterministic(tmp_path):
    parameters = {
        "corpus": SMALL_CORPUS,
        "symbols": ["one", "abs"],
        "jackson": {"k": [1, 2], "r": [1.0, 5.0, 25.0]},
        "bernstein": {"k": [0, 1], "h": [0.1, 1.0], "alpha": [1.0]},
    }
    config = write_config(tmp_path, "check-inequalities", parameters, seed=7)
    first, second = tmp_path / "first", tmp_path / "second"
    assert run("check-inequalities", config, first) == EXIT_OK
    assert run("check-inequalities", config, second, "--jobs", "2") == EXIT_OK

    for pattern in ("*.csv", "*.json"):
        assert compute_directory_hash(first, pattern) == compute_directory_hash(second, pattern)

    table = pd.read_csv(first / "inequalities.csv", keep_default_na=False)
    # 5 vectors x 2 symbols x (6 jackson + 4 bernstein)
    assert len(table) == 100
    assert table["pass"].all()


# ── Shipped configs ─────────────────────────────────────────────────────────


@pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.yaml")), ids=lambda path: path.stem)
def test_shipped_configs_validate(path):
    config = load_experiment_config(path)
    plan = RUNNERS[config.command].prepare(config)
    assert plan is not None


# ── ritz-run ────────────────────────────────────────────────────────────────


def ritz_parameters(**overrides) -> dict:
    parameters = {
        "problem": {
            "name": "constant-q",
            "potential": {"constant": 1.0},
            "solution": {"kind": "algebraic", "p": 4.0},
        },
        "truncation": 128,
        "max_truncation": 512,
        "n_grid": [2, 4, 8, 16],
        "alpha": 1.0,
        "k": 1,
    }
    parameters.update(overrides)
    return parameters


def test_ritz_constant_potential_collapses_sandwich(tmp_path):
    config = write_config(tmp_path, "ritz-run", ritz_parameters())
    out = tmp_path / "ritz"
    assert run("ritz-run", config, out) == EXIT_OK

    table = pd.read_csv(out / "ritz_errors.csv")
    assert list(table["n"]) == [2, 4, 8, 16]
    assert (table["energy_error"].diff().dropna() < 0).all()
    assert table["sandwich_lo"].to_numpy() == pytest.approx(table["sandwich_hi"], rel=1e-9)
    assert (table["energy_error"] <= table["apriori_rhs"]).all()

    rates = json.loads((out / "rates.json").read_text())
    # 128 fails the truncation guard for n = 16 and is doubled once
    assert rates["truncation"] == 256
    assert rates["equivalence"]["c1"] == pytest.approx(1.0, rel=1e-9)
    assert rates["monotone_energy_error"]
    assert rates["fail_count"] == 0
    assert (out / "ritz_errors.plt").read_text().count("ritz_errors.csv") >= 1


def test_ritz_truncation_guard_exit_code(tmp_path):
    config = write_config(tmp_path, "ritz-run", ritz_parameters(max_truncation=128))
    assert run("ritz-run", config, tmp_path / "guard") == EXIT_GUARD


def test_ritz_cosine_potential_with_rate(tmp_path):
    parameters = ritz_parameters(
        problem={
            "name": "cosine-q",
            "potential": {"cosine": [2.0, 0.0, 1.0]},
            "solution": {"kind": "algebraic", "p": 6.0},
        },
        truncation=256,
        n_grid=[2, 4, 8, 16, 32],
        rate={"k": 1, "n_grid": [4, 8, 16, 24, 32, 48]},
    )
    config = write_config(tmp_path, "ritz-run", parameters)
    out = tmp_path / "cosine"
    assert run("ritz-run", config, out) == EXIT_OK

    rates = json.loads((out / "rates.json").read_text())
    assert rates["truncation"] == 256
    assert rates["slopes"]["graph"] <= -2.7
    assert rates["rate"]["surrogate_decreasing"]
    c1, c2 = rates["equivalence"]["c1"], rates["equivalence"]["c2"]
    # 1 <= q <= 3 against the q = 1 reference
    assert 1.0 - 1e-9 <= c1 < c2 <= math.sqrt(3.0) + 1e-9
    assert c2 >= math.sqrt(2.0) - 1e-9
    assert list(pd.read_csv(out / "rates.csv")["n"]) == [4, 8, 16, 24, 32, 48]


@pytest.mark.parametrize(
    "overrides",
    [
        {"alpha": 0.5},
        {"n_grid": [2, 4, 128]},
        {"method": "simpson"},
        {
            "problem": {
                "potential": {"constant": 0.0},
                "solution": {"kind": "cosine", "coefficients": [1.0]},
            }
        },
        {"problem": {"potential": {"constant": 1.0}}},
        {"rate": {"k": 1, "n_grid": [4, 8, 16]}},
    ],
)
def test_ritz_config_errors(tmp_path, overrides):
    config = write_config(tmp_path, "ritz-run", ritz_parameters(**overrides))
    out = tmp_path / "bad"
    assert run("ritz-run", config, out) == EXIT_CONFIG
    assert not out.exists()


# ── counterexample ──────────────────────────────────────────────────────────


def test_counterexample_tables(tmp_path):
    config = write_config(
        tmp_path,
        "counterexample",
        {"alpha": 1.0, "truncation": 2000, "cutoffs": [1000, 10000]},
    )
    out = tmp_path / "counter"
    assert run("counterexample", config, out) == EXIT_OK

    errors = pd.read_csv(out / "counterexample.csv")
    assert list(errors.columns) == ["n", "scaled_error"]
    assert errors["scaled_error"].iloc[-1] < errors["scaled_error"].iloc[0]

    sums = pd.read_csv(out / "partial_sums.csv")
    assert list(sums["M"]) == [1000, 10000]
    assert sums["partial_sum"].is_monotonic_increasing

    summary = json.loads((out / "summary.json").read_text())
    assert summary["bound_respected"] and summary["decays"]
    assert summary["fail_count"] == 0


def test_counterexample_rejects_small_alpha(tmp_path):
    config = write_config(tmp_path, "counterexample", {"alpha": 0.75, "truncation": 2000})
    assert run("counterexample", config, tmp_path / "out") == EXIT_CONFIG


# ── inverse-rate ────────────────────────────────────────────────────────────


def test_inverse_rate_fits_stable_constant(tmp_path):
    config = write_config(
        tmp_path, "inverse-rate", {"moduli": ["power:1.0"], "symbol": "one", "k": 1}
    )
    out = tmp_path / "inverse"
    assert run("inverse-rate", config, out) == EXIT_OK

    table = pd.read_csv(out / "inverse_rate.csv")
    assert sorted(table["N"].unique()) == [4096, 8192]
    assert len(table) == 2 * 45
    assert (table["ratio"] > 0).all()

    summary = json.loads((out / "summary.json").read_text())
    (fit,) = summary["moduli"]
    assert fit["regime"] == "k=alpha"
    assert fit["stable"]
    assert set(fit["fitted_constant"]) == {"4096", "8192"}


def test_inverse_rate_guard_and_config_errors(tmp_path):
    small = write_config(tmp_path, "inverse-rate", {"moduli": ["power:1.0"], "truncation": 2048})
    assert run("inverse-rate", small, tmp_path / "small") == EXIT_GUARD

    bad = write_config(tmp_path, "inverse-rate", {"moduli": ["power:-1"]})
    assert run("inverse-rate", bad, tmp_path / "bad") == EXIT_CONFIG
