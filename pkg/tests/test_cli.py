"""CLI surface: subcommands, exit codes, emitted files."""

import json

import numpy as np
import pytest

from fouriergmm.cli import main
from fouriergmm.harness import read_bench_csv, read_phase_csv, read_trials_json
from fouriergmm.model import GmmModel, sample_gmm


@pytest.fixture(scope="module")
def samples_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "samples.csv"
    model = GmmModel(weights=[1.0], means=[[2.0, -1.0, 0.5]], sigma=1.0)
    np.savetxt(path, sample_gmm(model, 2000, 99).data, delimiter=",")
    return str(path)


def test_order_subcommand(samples_csv, tmp_path, capsys):
    assert main(["order", samples_csv, "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "k_hat = 1" in out
    doc = json.loads((tmp_path / "order.json").read_text())
    assert doc["k_hat"] == 1 and doc["n"] == 2000


def test_estimate_subcommand(samples_csv, tmp_path, capsys):
    assert main(["estimate", samples_csv, "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "k_hat = 1" in out and "mu = [" in out
    doc = json.loads((tmp_path / "estimate.json").read_text())
    assert doc["k_hat"] == 1
    center = np.array(doc["centers"][0])
    assert np.linalg.norm(center - [2.0, -1.0, 0.5]) < 0.2
    assert doc["weights"] == [1.0]


def test_estimate_below_floor_exits_nonzero(samples_csv, tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"experiment": "estimate", "eps_floor": 100.0}))
    code = main(["estimate", samples_csv, "--config", str(cfg),
                 "--out", str(tmp_path)])
    assert code == 1
    assert "order selection failed" in capsys.readouterr().out
    assert json.loads((tmp_path / "estimate.json").read_text())["k_hat"] == 0


def test_phase_subcommand(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "experiment": "phase", "k": 2, "d": 2, "trials": 2,
        "delta_min": 4.0, "delta_max": 4.0, "delta_step": 1.0,
        "log10_n_min": 3.0, "log10_n_max": 3.3, "log10_n_step": 0.3,
    }))
    assert main(["phase", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    assert "wrote" in capsys.readouterr().out
    cells = read_phase_csv(str(tmp_path / "phase.csv"))
    assert len(cells) == 2 and all(c.trials == 2 for c in cells)
    assert (tmp_path / "phase.svg").read_text().startswith("<svg")


def test_phase_json_format(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "experiment": "phase", "k": 2, "d": 2, "trials": 1,
        "delta_min": 4.0, "delta_max": 4.0, "delta_step": 1.0,
        "log10_n_min": 3.0, "log10_n_max": 3.0, "log10_n_step": 0.3,
    }))
    assert main(["phase", "--config", str(cfg), "--out", str(tmp_path),
                 "--format", "json"]) == 0
    (doc,) = json.loads((tmp_path / "phase.json").read_text())
    assert set(doc) >= {"k", "d", "delta", "n", "successes", "success_rate"}


def test_bench_subcommand_both_formats(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "experiment": "bench", "k": 2, "d": 2, "geometry": "sphere",
        "n_schedule": [1500], "trials": 2, "seed": 9,
    }))
    assert main(["bench", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    recs = read_bench_csv(str(tmp_path / "bench.csv"))
    assert len(recs) == 4  # 2 trials x 2 methods
    assert {r.method for r in recs} == {"fourier", "em"}
    assert main(["bench", "--config", str(cfg), "--out", str(tmp_path),
                 "--format", "json"]) == 0
    trials = read_trials_json(str(tmp_path / "bench.json"))
    assert len(trials) == 2 and trials[0].n == 1500


def test_seed_override(samples_csv, tmp_path):
    # different root seed -> different design draw -> different spectrum
    assert main(["order", samples_csv, "--seed", "1", "--out", str(tmp_path)]) == 0
    a = json.loads((tmp_path / "order.json").read_text())
    assert main(["order", samples_csv, "--seed", "2", "--out", str(tmp_path)]) == 0
    b = json.loads((tmp_path / "order.json").read_text())
    assert a["k_hat"] == b["k_hat"] == 1
    assert a["singular_values"] != b["singular_values"]


def test_error_exits(samples_csv, tmp_path, capsys):
    bad_cfg = tmp_path / "bad.json"
    bad_cfg.write_text(json.dumps({"typo_key": 1}))
    assert main(["order", samples_csv, "--config", str(bad_cfg)]) == 1
    assert "unknown config keys" in capsys.readouterr().err

    notjson = tmp_path / "notjson.json"
    notjson.write_text("{")
    assert main(["order", samples_csv, "--config", str(notjson)]) == 1
    assert "not valid JSON" in capsys.readouterr().err

    assert main(["order", "--out", str(tmp_path)]) == 1
    assert "no samples file" in capsys.readouterr().err

    assert main(["order", str(tmp_path / "missing.csv")]) == 1
    assert "error:" in capsys.readouterr().err


def test_requires_subcommand(capsys):
    with pytest.raises(SystemExit):
        main([])
    capsys.readouterr()
