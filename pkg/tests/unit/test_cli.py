"""Tests for the command-line surface and its exit codes."""

from __future__ import annotations

import csv
import json

from typer.testing import CliRunner

from app.packages.base.errors import DegenerateDataError
from app.packages.cli import cli_generated
from app.packages.cli.cli_generated import app
from app.packages.models_generated import ExperimentKind
from app.packages.worker import TrialPoolError


runner = CliRunner()


def test_bounds_json():
    result = runner.invoke(app, ["-q", "bounds", "--m", "30", "--theta", "0.1,0.2", "--format", "json"])
    assert result.exit_code == 0
    reports = json.loads(result.stdout)
    assert [r["n_star_rounded"] for r in reports] == [121, 65]


def test_bounds_table_format():
    result = runner.invoke(app, ["-q", "bounds", "--m", "30", "--theta", "0.3"])
    assert result.exit_code == 0
    header, row = result.stdout.strip().splitlines()
    assert header.split()[0] == "m"
    assert row.split()[6] == "64"


def test_bounds_domain_error_exits_with_config_code():
    result = runner.invoke(app, ["-q", "bounds", "--m", "30", "--theta", "1.5"])
    assert result.exit_code == 1
    assert "Configuration error" in result.output
    result = runner.invoke(app, ["-q", "bounds", "--m", "thirty", "--theta", "0.2"])
    assert result.exit_code == 1


def test_gen_learn_update_round_trip(tmp_path):
    data = tmp_path / "data"
    result = runner.invoke(app, ["-q", "gen", "--m", "6", "--n", "60", "--theta", "0.2", "--seed", "4", "--out", str(data)])
    assert result.exit_code == 0, result.output
    assert (data / "Y.txt").exists()

    learned = tmp_path / "learned"
    result = runner.invoke(
        app, ["-q", "learn", "--data", str(data), "--method", "mod", "--iterations", "3", "--out", str(learned)]
    )
    assert result.exit_code == 0, result.output
    assert "r_err:" in result.stdout
    with (learned / "history.csv").open(encoding="utf-8", newline="") as handle:
        assert len(list(csv.DictReader(handle))) == 3

    updated = tmp_path / "updated"
    result = runner.invoke(
        app,
        [
            "-q", "update", "--data", str(data), "--method", "mod", "--r", "0",
            "--dictionary", str(learned / "D.txt"), "--out", str(updated),
        ],
    )
    assert result.exit_code == 0, result.output
    r_err = float(result.stdout.split("r_err:")[1])
    assert r_err < 1e-6
    assert (updated / "X.txt").exists()


def test_learn_missing_data_is_config_error(tmp_path):
    result = runner.invoke(app, ["-q", "learn", "--data", str(tmp_path / "none"), "--out", str(tmp_path / "out")])
    assert result.exit_code == 1


def test_numerical_failure_exit_code(tmp_path, monkeypatch):
    data = tmp_path / "data"
    assert runner.invoke(app, ["-q", "gen", "--m", "4", "--n", "30", "--theta", "0.3", "--out", str(data)]).exit_code == 0

    def failing(*_args, **_kwargs):
        raise DegenerateDataError("forced")

    monkeypatch.setattr(cli_generated, "update_dictionary", failing)
    result = runner.invoke(app, ["-q", "update", "--data", str(data), "--out", str(tmp_path / "out")])
    assert result.exit_code == 2
    assert "Numerical failure" in result.output


def test_experiment_command_writes_untimed_csv(tmp_path):
    spec = tmp_path / "phase.json"
    spec.write_text(json.dumps({"m": [5], "theta": [0.2], "n": [40], "trials": 2}), encoding="utf-8")
    out = tmp_path / "phase.csv"
    result = runner.invoke(
        app, ["-q", "phase", "--spec", str(spec), "--seed", "9", "--out", str(out), "--no-timing"]
    )
    assert result.exit_code == 0, result.output
    with out.open(encoding="utf-8", newline="") as handle:
        rows = list(csv.DictReader(handle))
    assert {row["kind"] for row in rows} == {"phase_transition"}
    assert all(row["seconds"] == "" for row in rows)


def test_experiment_command_rejects_unknown_spec_fields(tmp_path):
    spec = tmp_path / "bad.json"
    spec.write_text(json.dumps({"m": [5], "trails": 2}), encoding="utf-8")
    result = runner.invoke(app, ["-q", "curve", "--spec", str(spec), "--out", str(tmp_path / "x.csv")])
    assert result.exit_code == 1


def test_bounds_table_command_uses_presets(tmp_path):
    out = tmp_path / "bounds.csv"
    result = runner.invoke(app, ["-q", "bounds-table", "--out", str(out)])
    assert result.exit_code == 0, result.output
    with out.open(encoding="utf-8", newline="") as handle:
        metrics = {row["metric"] for row in csv.DictReader(handle)}
    assert "n_star_rounded" in metrics


def test_denoise_without_images_is_config_error(tmp_path):
    result = runner.invoke(
        app, ["-q", "denoise", "--images", str(tmp_path / "none"), "--out", str(tmp_path / "d.csv")]
    )
    assert result.exit_code == 1


def test_trial_pool_failure_has_its_own_exit_code(tmp_path, monkeypatch):
    def crashing(_spec):
        raise TrialPoolError(4, "ZeroDivisionError: division by zero")

    monkeypatch.setitem(cli_generated.RUNNERS, ExperimentKind.BOUNDS_TABLE, crashing)
    result = runner.invoke(app, ["-q", "bounds-table", "--out", str(tmp_path / "table.csv")])
    assert result.exit_code == cli_generated.EXIT_INTERNAL == 3
    assert "Trial failure" in result.output
    assert "Trial task 4" in result.output
