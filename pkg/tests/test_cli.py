"""Command-line surface: registry coverage, exit codes, determinism, suites."""

import json

import numpy as np
import pytest

from qcorrkit import PureState, RandomSource, random_density, random_pure, save_state
from qcorrkit.cli import QUANTITIES, run

SQ2 = 1.0 / np.sqrt(2.0)


@pytest.fixture
def bell_file(tmp_path):
    psi = PureState((2, 2), np.array([SQ2, 0.0, 0.0, SQ2]))
    path = tmp_path / "bell.json"
    save_state(psi, path)
    return str(path)


@pytest.fixture
def bell_dm_file(tmp_path):
    psi = PureState((2, 2), np.array([SQ2, 0.0, 0.0, SQ2]))
    path = tmp_path / "bell_dm.json"
    save_state(psi.density(), path)
    return str(path)


class TestCompute:
    def test_discord_of_bell(self, bell_dm_file, capsys):
        code = run(
            ["compute", "--quantity", "discord", "--side", "B", "--state", bell_dm_file,
             "--seed", "42", "--restarts", "8"]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert abs(report["value_bits"] - 1.0) <= 1e-4
        assert report["seed"] == 42
        assert "optimal_parameters" in report["diagnostics"]

    def test_every_registered_quantity_runs(self, bell_dm_file, bell_file, tmp_path, capsys):
        # some quantities need pure inputs; route them to the vector file
        pure_only = {"entanglement-entropy", "relative-entanglement-pure"}
        for name in sorted(QUANTITIES):
            state = bell_file if name in pure_only else bell_dm_file
            code = run(
                ["compute", "--quantity", name, "--state", state, "--restarts", "2"]
            )
            out = capsys.readouterr().out
            assert code == 0, f"{name} failed"
            assert "value_bits" in out

    def test_unknown_quantity_rejected_before_compute(self, bell_dm_file):
        with pytest.raises(SystemExit):
            run(["compute", "--quantity", "no-such-thing", "--state", bell_dm_file])

    def test_determinism_modulo_timing(self, bell_dm_file, capsys):
        argv = ["compute", "--quantity", "discord", "--state", bell_dm_file,
                "--seed", "3", "--restarts", "4"]
        run(argv)
        first = json.loads(capsys.readouterr().out)
        run(argv)
        second = json.loads(capsys.readouterr().out)
        first.pop("wall_time_s")
        second.pop("wall_time_s")
        assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)

    def test_out_flag_writes_file(self, bell_dm_file, tmp_path):
        out = tmp_path / "report.json"
        code = run(["compute", "--quantity", "negativity", "--state", bell_dm_file,
                    "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert abs(report["value_bits"] - 0.5) <= 1e-10

    def test_plain_format(self, bell_dm_file, capsys):
        run(["compute", "--quantity", "concurrence", "--state", bell_dm_file,
             "--format", "plain"])
        assert "concurrence" in capsys.readouterr().out


class TestExitCodes:
    def test_invalid_state_exits_two_with_diagnostic(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(
            {"dims": [2], "matrix": [[[0.45, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.45, 0.0]]]}
        ))
        code = run(["validate", "--state", str(path)])
        assert code == 2
        assert "trace" in capsys.readouterr().err

    def test_missing_file_exits_two(self, tmp_path):
        assert run(["validate", "--state", str(tmp_path / "missing.json")]) == 2

    def test_valid_state_exits_zero(self, bell_file, capsys):
        assert run(["validate", "--state", bell_file]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["valid"] and payload["kind"] == "pure"

    def test_internal_error_exits_one(self, bell_dm_file):
        # concurrence on a non-two-qubit state triggers an internal error path
        rho = random_density((2, 3), 2, RandomSource(1))
        import qcorrkit

        path = bell_dm_file.replace("bell_dm", "qutrit")
        qcorrkit.save_state(rho, path)
        assert run(["compute", "--quantity", "concurrence", "--state", path]) == 1


class TestSuites:
    def test_verify_kw_csv(self, capsys):
        code = run(["verify-kw", "--samples", "3", "--seed", "7", "--restarts", "8",
                    "--format", "csv"])
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 4  # header + 3 rows
        assert "residual_kw" in lines[0]

    def test_verify_kw_json_summary(self, capsys):
        code = run(["verify-kw", "--samples", "2", "--seed", "7", "--restarts", "8"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["summary"]["samples"] == 2
        assert payload["summary"]["residual_kw"]["max"] <= 1e-3

    def test_verify_activation(self, capsys):
        code = run(["verify-activation", "--samples", "2", "--seed", "5",
                    "--restarts", "6"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["samples"]) == 2
        assert payload["max_residual"] <= 2e-4

    def test_random_suite(self, capsys):
        code = run(["random-suite", "--samples", "10", "--seed", "1"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["pass"]
