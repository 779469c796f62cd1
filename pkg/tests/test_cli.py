"""Tests for the command-line interface: configs, exit codes, artifacts."""
import json

import numpy as np
import pytest

from solwave.cli import ExperimentConfig, main
from solwave.errors import ConfigurationError


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def benchmark_config(out, **sections):
    payload = {
        "problem": {"name": "nls-two-power", "mu": 1.0, "alpha": 1.0,
                    "beta": 1.0, "m1": 2.0, "m2": 4.0},
        "grid": {"half_length": 32.0, "num_points": 512},
        "iteration": {"engine": "extended", "residual_tol": 1e-12,
                      "guess": {"kind": "gaussian", "amplitude": 1.5,
                                "width": 2.0}},
        "output_dir": str(out),
    }
    payload.update(sections)
    return payload


class TestConfigParsing:
    """Validation errors name the offending key and exit with status 2."""

    def test_unknown_preset(self, capsys):
        assert main(["solve", "--preset", "no-such-thing"]) == 2
        assert "no-such-thing" in capsys.readouterr().err

    def test_preset_or_config_required(self, capsys):
        assert main(["solve"]) == 2
        assert "--preset or --config" in capsys.readouterr().err

    def test_unknown_top_level_key(self, tmp_path, capsys):
        cfg = benchmark_config(tmp_path / "out")
        cfg["iterktion"] = {}
        assert main(["solve", "--config", write_config(tmp_path, cfg)]) == 2
        assert "iterktion" in capsys.readouterr().err

    def test_unknown_problem_name(self, tmp_path, capsys):
        cfg = benchmark_config(tmp_path / "out")
        cfg["problem"]["name"] = "kdv"
        assert main(["solve", "--config", write_config(tmp_path, cfg)]) == 2
        assert "kdv" in capsys.readouterr().err

    def test_unknown_problem_parameter(self, tmp_path, capsys):
        cfg = benchmark_config(tmp_path / "out")
        cfg["problem"]["speed"] = 2.0
        assert main(["solve", "--config", write_config(tmp_path, cfg)]) == 2
        assert "speed" in capsys.readouterr().err

    def test_invalid_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert main(["solve", "--config", str(path)]) == 2
        assert "JSON" in capsys.readouterr().err

    def test_unknown_guess_kind(self, tmp_path):
        cfg = ExperimentConfig.from_dict(benchmark_config(
            tmp_path, iteration={"guess": {"kind": "sawtooth"}}))
        with pytest.raises(ConfigurationError):
            cfg.build_guess(cfg.build_grid())

    def test_bumps_guess_compiles(self, tmp_path):
        cfg = ExperimentConfig.from_dict(benchmark_config(
            tmp_path,
            iteration={"guess": {"kind": "bumps",
                                 "bumps": [[0.6, -1.5, 0.8],
                                           [2.8, 1.5, 0.8]]}}))
        guess = cfg.build_guess(cfg.build_grid())
        values = np.asarray(guess.values)
        nodes = cfg.build_grid().nodes
        assert values[np.argmin(np.abs(nodes - 1.5))] > 2.7
        assert values[np.argmin(np.abs(nodes + 1.5))] > 0.5


class TestSolveCommand:
    """Exit codes and artifacts of one iteration run."""

    def test_converged_run(self, tmp_path, capsys):
        out = tmp_path / "out"
        cfg = write_config(tmp_path, benchmark_config(out))
        assert main(["solve", "--config", cfg]) == 0
        assert "converged" in capsys.readouterr().out
        for artifact in ("trace.csv", "trace.json", "profile.csv"):
            assert (out / artifact).exists(), f"missing {artifact}"

    def test_profile_csv_is_plottable(self, tmp_path):
        out = tmp_path / "out"
        cfg = write_config(tmp_path, benchmark_config(out))
        main(["solve", "--config", cfg])
        lines = (out / "profile.csv").read_text().splitlines()
        assert lines[0] == "x,component_0"
        assert len(lines) == 1 + 512

    def test_classic_engine_diverges(self, tmp_path, capsys):
        out = tmp_path / "out"
        cfg = write_config(tmp_path, benchmark_config(out))
        assert main(["solve", "--config", cfg, "--engine", "classic"]) == 1
        assert "diverged" in capsys.readouterr().err

    def test_reruns_are_byte_identical(self, tmp_path):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        main(["solve", "--config", write_config(tmp_path, benchmark_config(out_a))])
        main(["solve", "--config", write_config(tmp_path, benchmark_config(out_b),
                                                name="config2.json")])
        for artifact in ("trace.csv", "profile.csv"):
            assert (out_a / artifact).read_bytes() == \
                (out_b / artifact).read_bytes(), f"{artifact} differs"


class TestSpectrumCommand:
    """Eigenvalue tables from config-driven runs."""

    def test_table_written(self, tmp_path, capsys):
        out = tmp_path / "out"
        cfg = write_config(tmp_path, benchmark_config(
            out, spectrum={"point": "exact", "k": 4,
                           "kinds": [{"kind": "S"},
                                     {"kind": "analytic-general",
                                      "gammas": [1.5, 1.25]}]}))
        assert main(["spectrum", "--config", cfg]) == 0
        table = (out / "spectrum.txt").read_text()
        assert table.splitlines()[0].startswith("S")
        assert "analytic-general(1.5,1.25)" in table
        assert (out / "spectrum_0_S.json").exists()

    def test_k_clamped_with_warning(self, tmp_path, capsys):
        out = tmp_path / "out"
        cfg = write_config(tmp_path, benchmark_config(
            out, spectrum={"point": "exact", "kinds": [{"kind": "S"}]}))
        assert main(["spectrum", "--config", cfg, "--k", "4096"]) == 0
        captured = capsys.readouterr()
        assert "clamping" in captured.err
        assert len(captured.out.strip().splitlines()) == 1 + 512


class TestEvolveCommand:
    """Snapshot emission from a short run."""

    def test_snapshots_written(self, tmp_path):
        out = tmp_path / "out"
        cfg = write_config(tmp_path, benchmark_config(
            out, evolution={"dt": 0.01, "t_final": 0.1, "sample_stride": 5,
                            "initial": "exact"}))
        assert main(["evolve", "--config", cfg]) == 0
        snaps = sorted(out.glob("snapshot_*.csv"))
        assert len(snaps) == 3
        assert (out / "diagnostics.csv").exists()
        assert (out / "phase_speed.csv").exists()

    def test_missing_section_rejected(self, tmp_path, capsys):
        out = tmp_path / "out"
        cfg = write_config(tmp_path, benchmark_config(out))
        assert main(["evolve", "--config", cfg]) == 2
        assert "evolution" in capsys.readouterr().err


class TestSweepCommand:
    """Continuation rows, warm starts, and honest failure reporting."""

    def test_rows_include_failures(self, tmp_path, capsys):
        out = tmp_path / "out"
        cfg = write_config(tmp_path, {
            "problem": {"name": "gnls-double-well", "mu": 1.9, "V0": 2.8,
                        "x0": 1.5, "gamma": 0.25},
            "grid": {"half_length": 16.0, "num_points": 512},
            "iteration": {"engine": "extended", "max_iters": 120,
                          "residual_tol": 1e-9,
                          "guess": {"kind": "gaussian", "amplitude": 0.5,
                                    "width": 2.0}},
            "sweep": {"mu_values": [1.9, 2.0, 2.5]},
            "output_dir": str(out),
        })
        assert main(["sweep", "--config", cfg]) == 0
        err = capsys.readouterr().err
        assert "mu=2.5" in err
        rows = (out / "sweep.csv").read_text().splitlines()
        assert rows[0] == "mu,power,iterations,residual,reason"
        assert len(rows) == 4
        assert rows[1].endswith("converged")
        assert rows[3].endswith("diverged")
        assert "nan" in rows[3]

    def test_empty_range_is_noop(self, tmp_path, capsys):
        out = tmp_path / "out"
        cfg = write_config(tmp_path, benchmark_config(
            out, sweep={"mu_values": []}))
        assert main(["sweep", "--config", cfg]) == 0
        assert "empty sweep" in capsys.readouterr().err


class TestReproduceCommand:
    """Preset bundles and the summary report."""

    def test_single_preset(self, tmp_path):
        out = tmp_path / "repro"
        assert main(["reproduce", "--preset", "cubic-quintic",
                     "--out", str(out)]) == 0
        report = json.loads((out / "report.json").read_text())
        assert report["cubic-quintic"]["exit_status"] == 0
        assert (out / "cubic-quintic" / "profile.csv").exists()

    def test_unknown_preset(self, tmp_path, capsys):
        assert main(["reproduce", "--preset", "table99",
                     "--out", str(tmp_path / "r")]) == 2
        assert "table99" in capsys.readouterr().err
