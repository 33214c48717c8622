import json
import math
import os

import numpy as np
import pytest
from jsonschema import validate

import darkport as dp
from darkport.cli import main
from importlib import resources


def _read_csv(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def _manifest_schema():
    return json.loads(resources.files("darkport.schemas")
                      .joinpath("manifest.schema.json").read_text())


def test_stats_csv_matches_library(tmp_path, capsys):
    rc = main(["--outdir", str(tmp_path), "stats", "--r", "1", "--x", "1",
               "--eps", "0"])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "stats.csv")
    assert header == ["n", "probability"]
    probs = dp.distribution(1.0, dp.SqueezedVacuumSpec(1.0)).probs
    assert len(rows) == probs.size
    for row, want in zip(rows, probs):
        assert float(row[1]) == want

    manifest = json.loads((tmp_path / "stats_manifest.json").read_text())
    validate(manifest, _manifest_schema())
    assert manifest["command"] == "stats"
    assert manifest["parameters"]["r"] == 1.0
    out = capsys.readouterr().out.splitlines()
    assert out[0].endswith("stats.csv")


def test_stats_json_format(tmp_path):
    rc = main(["--outdir", str(tmp_path), "stats", "--r", "0.5", "--x", "0.3",
               "--eps", "0", "--format", "json"])
    assert rc == 0
    body = json.loads((tmp_path / "stats.json").read_text())
    probs = dp.distribution(0.3, dp.SqueezedVacuumSpec(0.5)).probs
    assert body["probabilities"] == pytest.approx(list(probs), abs=0)
    assert body["norm_deficit"] < 1e-11


def test_zeros_table(tmp_path):
    rc = main(["--outdir", str(tmp_path), "zeros", "--r", "1",
               "--n-max", "4"])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "zeros.csv")
    assert header == ["n", "k", "x"]
    spec = dp.SqueezedVacuumSpec(1.0)
    table = {(int(n), int(k)): float(x) for n, k, x in rows}
    for n in (1, 2, 3, 4):
        zs = dp.zeros(n, spec)
        for zp in zs:
            assert table[(n, zp.k)] == pytest.approx(zp.x, abs=1e-15)
        if n % 2 == 1:
            assert table[(n, 0)] == 0.0


def test_fisher_modes_and_roundtrip(tmp_path):
    rc = main(["--outdir", str(tmp_path), "fisher", "--r", "1",
               "--eps", "0.002", "--x-min", "1.0", "--x-max", "1.4",
               "--points", "5", "--mode", "avg"])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "fisher.csv")
    assert header == ["x", "i_avg", "qfi"]
    spec = dp.SqueezedVacuumSpec(1.0)
    channel = dp.LossChannel(0.002)
    for row in rows:
        x = float(row[0])
        assert float(row[1]) == dp.avg_photon_sensitivity(x, spec, channel)
        assert float(row[2]) == dp.quantum_fisher(spec, channel)

    body = json.loads((tmp_path / "fisher.json").read_text())
    assert body["schema"] == "darkport.fisher_curve.v1"
    manifest = json.loads((tmp_path / "fisher_manifest.json").read_text())
    validate(manifest, _manifest_schema())
    assert len(manifest["outputs"]) == 2


def test_fisher_all_mode_columns(tmp_path):
    rc = main(["--outdir", str(tmp_path), "fisher", "--r", "0.5",
               "--x-min", "0.5", "--x-max", "1.0", "--points", "3",
               "--mode", "all", "--eps", "0"])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "fisher.csv")
    assert header == ["x", "cfi_exact", "ifisher_approx", "i_avg", "qfi"]
    assert len(rows) == 3


def test_simulate_report(tmp_path):
    rc = main(["--outdir", str(tmp_path), "simulate", "--r", "1",
               "--eps", "0", "--x", "1.0", "--n-samples", "60",
               "--trials", "3", "--seed", "4"])
    assert rc == 0
    body = json.loads((tmp_path / "report.json").read_text())
    schema = json.loads(resources.files("darkport.schemas")
                        .joinpath("estimation_report.schema.json").read_text())
    validate(body, schema)
    assert body["method"] == "mle"
    assert body["seed"] == 4

    cfg = dp.ExperimentConfig(spec=dp.SqueezedVacuumSpec(1.0), channel=None,
                              x_true=1.0, n_samples=60, n_trials=3, seed=4)
    report = dp.run_experiment(cfg)
    assert body["estimates"] == pytest.approx(list(report.estimates), abs=0)


def test_config_file_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# settings\nr = 0.5\nx = 0.7\n")
    rc = main(["--config", str(cfg), "--outdir", str(tmp_path), "stats"])
    assert rc == 0
    manifest = json.loads((tmp_path / "stats_manifest.json").read_text())
    assert manifest["parameters"]["r"] == 0.5
    assert manifest["parameters"]["x"] == 0.7

    rc = main(["--config", str(cfg), "--outdir", str(tmp_path), "stats",
               "--r", "0.8"])
    assert rc == 0
    manifest = json.loads((tmp_path / "stats_manifest.json").read_text())
    assert manifest["parameters"]["r"] == 0.8
    assert manifest["parameters"]["x"] == 0.7


def test_bad_config_line_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("r == 0.5\n")
    rc = main(["--config", str(cfg), "--outdir", str(tmp_path), "stats"])
    assert rc == 2
    assert "error:" in capsys.readouterr().err


def test_outdir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("DARKPORT_OUTDIR", str(tmp_path))
    rc = main(["zeros", "--r", "1", "--n-max", "2"])
    assert rc == 0
    assert (tmp_path / "zeros.csv").exists()


def test_unknown_figure_exits_2(tmp_path, capsys):
    rc = main(["--outdir", str(tmp_path), "figure", "fig99"])
    assert rc == 2
    err = capsys.readouterr().err
    assert "fig99" in err and "fig3" in err


def test_bad_flag_value_exits_2(tmp_path, capsys):
    rc = main(["--outdir", str(tmp_path), "zeros", "--r", "1",
               "--n-max", "0"])
    assert rc == 2
    with pytest.raises(SystemExit):
        main(["--outdir", str(tmp_path), "stats", "--format", "yaml"])
    capsys.readouterr()


def test_figure_grid_formula(tmp_path):
    rc = main(["--outdir", str(tmp_path), "figure", "fig5"])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "fig5" / "grid.csv")
    assert header == ["u", "v", "fringe_index"]
    assert len(rows) == 100 * 80
    u, v, f = (float(c) for c in rows[137])
    assert f == pytest.approx(0.75 * v ** 3 / u + 0.25, rel=1e-15)
    manifest = json.loads((tmp_path / "fig5" / "manifest.json").read_text())
    validate(manifest, _manifest_schema())


def test_figure_curves_match_library(tmp_path):
    rc = main(["--outdir", str(tmp_path), "figure", "fig3"])
    assert rc == 0
    header, rows = _read_csv(tmp_path / "fig3" / "probabilities.csv")
    assert header == ["x"] + [f"p{n}" for n in range(9)]
    spec = dp.SqueezedVacuumSpec(1.0)
    x = float(rows[40][0])
    dist = dp.distribution(x, spec)
    for n in range(9):
        assert float(rows[40][1 + n]) == pytest.approx(dist.probs[n],
                                                       rel=1e-12)
