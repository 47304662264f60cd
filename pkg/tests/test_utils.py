"""Tests for config loading, grids, result files and run bookkeeping."""

from __future__ import annotations

import json

import numpy as np
import pytest
import yaml

from src.utils.config import expand_grid, load_experiment_config
from src.utils.data_version import compute_directory_hash, compute_file_hash
from src.utils.errors import ConfigError
from src.utils.experiment import create_run
from src.utils.logger import get_logger
from src.utils.results import save_json, write_plot_script, write_table
from src.utils.seed import make_rng


def write_yaml(path, payload):
    path.write_text(yaml.safe_dump(payload), encoding="utf-8")
    return path


# ── Grids ───────────────────────────────────────────────────────────────────


def test_expand_grid_forms():
    assert expand_grid([1, 2, 5]).tolist() == [1, 2, 5]
    assert expand_grid(3.0).tolist() == [3.0]

    stepped = expand_grid({"start": 1, "stop": 6, "step": 1})
    assert stepped.tolist() == [1, 2, 3, 4, 5, 6]
    assert np.issubdtype(stepped.dtype, np.integer)

    tenths = expand_grid({"start": 1.0, "stop": 20.0, "step": 0.1})
    assert tenths.size == 191
    assert tenths[-1] == pytest.approx(20.0)

    log = expand_grid({"start": 2.0**-12, "stop": 0.5, "num": 45, "spacing": "log"})
    assert log[0] == pytest.approx(2.0**-12) and log[-1] == pytest.approx(0.5)
    assert np.allclose(np.diff(np.log2(log)), 0.25)


@pytest.mark.parametrize(
    "spec",
    [
        [],
        [3, 1, 2],
        [1, 1],
        {"start": 5, "stop": 1, "step": 1},
        {"start": 1, "stop": 5},
        {"start": 0.0, "stop": 1.0, "num": 4, "spacing": "log"},
        {"start": 1, "stop": 5, "num": 4, "spacing": "cubic"},
        "1..5",
    ],
)
def test_expand_grid_rejects(spec):
    with pytest.raises(ConfigError):
        expand_grid(spec, name="n_grid")


# ── Config loading ──────────────────────────────────────────────────────────


def test_load_experiment_config(tmp_path):
    path = write_yaml(
        tmp_path / "ritz.yaml",
        {
            "command": "ritz-run",
            "seed": 7,
            "output_dir": "artifacts/ritz",
            "parameters": {"truncation": 64, "n_grid": [2, 4], "problem": {"name": "x"}},
        },
    )
    config = load_experiment_config(path)
    assert config.command == "ritz-run"
    assert config.seed == 7 and config.jobs == 1
    assert config.require("truncation") == 64
    assert config.grid("n_grid").tolist() == [2, 4]
    assert config.section("problem") == {"name": "x"}
    assert config.section("absent") == {}

    overridden = config.with_overrides(output_dir=tmp_path / "out", jobs=3)
    assert overridden.output_dir == tmp_path / "out" and overridden.jobs == 3
    assert config.jobs == 1

    with pytest.raises(ConfigError, match="Missing parameter"):
        config.require("alpha")
    with pytest.raises(ConfigError, match="must be a mapping"):
        config.section("truncation")
    with pytest.raises(ConfigError):
        config.with_overrides(jobs=0)


@pytest.mark.parametrize(
    "payload, message",
    [
        ({"command": "train", "seed": 1, "output_dir": "x"}, "Unknown command"),
        ({"command": "ritz-run", "output_dir": "x"}, "seed"),
        ({"command": "ritz-run", "seed": 1}, "output_dir"),
        ({"command": "ritz-run", "seed": 1, "output_dir": "x", "jobs": 0}, "jobs"),
        ({"command": "ritz-run", "seed": 1, "output_dir": "x", "parameters": [1]}, "mapping"),
    ],
)
def test_load_experiment_config_rejects(tmp_path, payload, message):
    path = write_yaml(tmp_path / "bad.yaml", payload)
    with pytest.raises(ConfigError, match=message):
        load_experiment_config(path)


def test_missing_or_malformed_config_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_experiment_config(tmp_path / "nope.yaml")
    broken = tmp_path / "broken.yaml"
    broken.write_text("command: [unclosed", encoding="utf-8")
    with pytest.raises(ConfigError, match="not valid YAML"):
        load_experiment_config(broken)


# ── Result files ────────────────────────────────────────────────────────────


def test_write_table_format(tmp_path):
    rows = [
        {"n": 2, "error": 0.1, "ok": True, "extra": "dropped"},
        {"n": 4, "error": float("nan"), "ok": False},
    ]
    path = write_table(tmp_path / "sub" / "t.csv", rows, ["n", "error", "ok"])
    raw = path.read_bytes()
    assert b"\r\n" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "n,error,ok"
    assert lines[1] == "2,0.10000000000000001,True"
    assert lines[2] == "4,nan,False"


def test_save_json_sorts_and_sanitizes(tmp_path):
    payload = {"b": np.float64(1.5), "a": {"y": np.arange(2), "x": np.bool_(True)}, "c": np.nan}
    path = save_json(tmp_path / "s.json", payload)
    text = path.read_text()
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"') < text.index('"c"')
    assert json.loads(text) == {"a": {"x": True, "y": [0, 1]}, "b": 1.5, "c": "nan"}


def test_write_plot_script(tmp_path):
    path = write_plot_script(
        tmp_path / "errors.plt", "errors.csv", "n", ["a", "b"], "Errors", "n", "error"
    )
    text = path.read_text()
    assert 'set output "errors.png"' in text
    assert "set logscale xy" in text
    assert text.count('"errors.csv"') == 2

    linear = write_plot_script(
        tmp_path / "lin.plt", "lin.csv", "n", ["a"], "t", "x", "y", loglog=False
    )
    assert "logscale" not in linear.read_text()


# ── Run bookkeeping ─────────────────────────────────────────────────────────


def test_create_run_is_deterministic(tmp_path):
    config = write_yaml(tmp_path / "c.yaml", {"command": "counterexample", "seed": 1})
    first = create_run("counterexample", config, tmp_path / "one")
    get_logger("test", run_id=first["run_id"]).info("hello from {}", "first")
    second = create_run("counterexample", config, tmp_path / "two")

    digest = compute_file_hash(config)
    assert first["run_id"] == second["run_id"] == f"counterexample_{digest[:8]}"
    assert first["config_sha256"] == digest
    assert (tmp_path / "one" / "config.yaml").read_bytes() == config.read_bytes()
    assert "hello from first" in first["log_file"].read_text()
    assert compute_directory_hash(tmp_path / "one", "*.yaml") == compute_directory_hash(
        tmp_path / "two", "*.yaml"
    )


def test_directory_hash_requires_matches(tmp_path):
    with pytest.raises(FileNotFoundError):
        compute_directory_hash(tmp_path / "missing")
    with pytest.raises(ValueError):
        compute_directory_hash(tmp_path, "*.csv")


def test_make_rng_reproducible():
    assert np.array_equal(make_rng(7).standard_normal(5), make_rng(7).standard_normal(5))
