import csv
import json

import pytest

from smoothfind.cli import main


def run_args(tmp_path, *extra):
    return [
        "run", "--experiment", "general-lower", "--algorithm", "hoare-find",
        "--rule", "classic", "--target", "max", "--model", "additive", "--d", "1.0",
        "--seed", "42", *extra,
    ]


def test_run_writes_csv(tmp_path):
    out = tmp_path / "r.csv"
    assert main(run_args(tmp_path, "--n", "4096", "--trials", "200", "--out", str(out))) == 0
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 200
    assert {r["n"] for r in rows} == {"4096"}


def test_run_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(run_args(tmp_path, "--n-grid", "64,128", "--trials", "10", "--out", str(a)))
    main(run_args(tmp_path, "--n-grid", "64,128", "--trials", "10", "--out", str(b), "--jobs", "3"))
    assert a.read_bytes() == b.read_bytes()


def test_run_json(tmp_path):
    out = tmp_path / "r.json"
    assert main(run_args(tmp_path, "--n", "64", "--trials", "3", "--out", str(out))) == 0
    doc = json.loads(out.read_text())
    assert doc["meta"]["master_seed"] == 42 and len(doc["rows"]) == 3


def test_d_law(tmp_path):
    out = tmp_path / "r.csv"
    argv = [
        "run", "--experiment", "sorted", "--algorithm", "quicksort", "--model", "additive",
        "--d-law", "2,0.5", "--n-grid", "16,64", "--trials", "1", "--out", str(out),
    ]
    assert main(argv) == 0
    assert [r["param"] for r in csv.DictReader(out.open())] == ["8.0", "16.0"]


@pytest.mark.parametrize(
    "argv, flag",
    [
        (["run", "--experiment", "pp-lower", "--model", "additive", "--d", "1",
          "--algorithm", "hoare-find", "--n", "65"], "--model"),
        (["run", "--experiment", "sorted", "--algorithm", "quicksort", "--n", "8",
          "--wobble", "3"], "--wobble"),
        (["run", "--experiment", "sorted", "--algorithm", "quicksort", "--n", "8"], "--d"),
        (["run", "--experiment", "sorted", "--algorithm", "quicksort", "--n", "8",
          "--model", "partial"], "--p"),
        (["run", "--experiment", "sorted", "--algorithm", "hoare-find", "--n", "8",
          "--model", "none", "--target", "k=x"], "--target"),
        (["run", "--experiment", "sorted", "--algorithm", "quicksort", "--n-grid", "8,4",
          "--model", "none"], "--n-grid"),
        (["run", "--experiment", "sorted", "--algorithm", "bogosort", "--n", "8"], "--algorithm"),
    ],
)
def test_usage_errors(argv, flag, capsys):
    assert main(argv) == 2
    assert flag in capsys.readouterr().err


def test_sweep_and_fit(tmp_path, capsys):
    config = {
        "experiments": [
            {"experiment": "sorted", "algorithm": "quicksort", "model": "additive",
             "d": 1e-12, "n_grid": [32, 64, 128], "trials": 2, "out": "sorted.csv"},
            {"experiment": "pp-lower", "algorithm": "hoare-find", "model": "partial",
             "p": 0.5, "target": "median", "n_grid": [33, 65], "trials": 3,
             "out": "pp.json"},
        ]
    }
    cfg = tmp_path / "sweep.json"
    cfg.write_text(json.dumps(config))
    assert main(["sweep", "--config", str(cfg)]) == 0
    assert (tmp_path / "sorted.csv").exists() and (tmp_path / "pp.json").exists()
    capsys.readouterr()
    assert main(["fit", str(tmp_path / "sorted.csv")]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    slope = float(lines[1].split(",")[6])
    assert slope == pytest.approx(2.0, abs=0.05)
    assert main(["fit", str(tmp_path / "pp.json")]) == 0


def test_sweep_bad_config(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text("[{\"experiment\": \"sorted\"}]")
    assert main(["sweep", "--config", str(cfg)]) == 2
    cfg.write_text("{not json")
    assert main(["sweep", "--config", str(cfg)]) == 2


def test_fit_missing_file(tmp_path):
    assert main(["fit", str(tmp_path / "none.csv")]) == 2


def test_verify_deterministic(capsys):
    assert main(["verify", "--suite", "deterministic"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert out.count("PASS") == 5
