import json
import subprocess
import sys

import pytest

from superdirac.cli import run


def run_json(argv, capsys):
    code = run(argv)
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_monogenics_reports_classical_dimension(capsys):
    code, rep, _ = run_json(["monogenics", "--m", "3", "--n", "0", "--k", "2"], capsys)
    assert code == 0
    dims = {c["name"].split(" [")[0]: c["data"]["dim"] for c in rep["checks"]}
    assert dims == {"harmonic kernel": 5, "monogenic kernel": 6}
    assert rep["version"] == "1" and rep["suite"] == "monogenics"


def test_fischer_singular_exits_one_with_reason(capsys):
    code, rep, err = run_json(["fischer", "--m", "4", "--n", "2", "--k", "1"], capsys)
    assert code == 1
    assert "FischerSingular" in err
    assert rep["checks"][0]["status"] == "fail"


def test_k_range_and_skips(capsys):
    code, rep, _ = run_json(["fischer", "--m", "3", "--n", "1", "--k", "1..2", "--Q", "1"], capsys)
    assert code == 0
    assert {c["data"]["k"] for c in rep["checks"]} == {1, 2}
    code, rep, _ = run_json(["casimir", "--m", "2", "--n", "1", "--k", "1"], capsys)
    assert code == 0 and rep["checks"][0]["status"] == "skip"
    code, rep, _ = run_json(["submodule", "--m", "4", "--n", "2", "--k", "0", "--Q", "1"], capsys)
    assert code == 0 and "WindowViolation" in rep["checks"][0]["data"]["reason"]


@pytest.mark.parametrize(
    "argv",
    [
        ["fischer", "--m", "3", "--n", "1", "--k", "x"],
        ["fischer", "--m", "3", "--n", "1", "--k", "3..1"],
        ["fischer", "--m", "0", "--n", "1", "--k", "1"],
        ["casimir", "--m", "3", "--n", "1", "--k", "0"],
        ["check", "--m", "3", "--n", "1", "X(1)*( == 0"],
        ["check", "--m", "3", "--n", "1", "X(9) == 0"],
        ["nonsense"],
    ],
)
def test_bad_arguments_exit_two(argv, capsys):
    assert run(argv) == 2
    capsys.readouterr()


def test_check_identity(capsys):
    code, rep, _ = run_json(["check", "--m", "3", "--n", "1", "dirac*vector + vector*dirac == -2*euler - M"], capsys)
    assert code == 0 and rep["checks"][0]["status"] == "pass"
    code, rep, err = run_json(["check", "--m", "3", "--n", "1", "dirac == vector"], capsys)
    assert code == 1 and "counterexample" in err


def test_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run(["singular", "--m", "3", "--n", "1", "--k", "1", "--output", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    capsys.readouterr()


@pytest.mark.parametrize("fmt", ["csv", "text"])
def test_other_formats(fmt, capsys):
    assert run(["pi-power", "--m", "4", "--n", "3", "--format", fmt]) == 0
    out = capsys.readouterr().out
    assert "Pi_1" in out
    if fmt == "csv":
        assert out.splitlines()[0] == "suite,name,paper_anchor,status,data"


def test_manifest_resume(tmp_path, capsys):
    manifest = tmp_path / "cells.json"
    argv = ["monogenics", "--m", "3", "--n", "1", "--k", "0..1", "--Q", "1", "--manifest", str(manifest)]
    assert run(argv) == 0
    first = capsys.readouterr().out
    cells = json.loads(manifest.read_text())["cells"]
    assert set(cells) == {"monogenics|3|1|0|1", "monogenics|3|1|1|1"}
    # a resumed run reads finished cells instead of recomputing them
    cells["monogenics|3|1|0|1"][0]["data"]["marker"] = True
    manifest.write_text(json.dumps({"cells": cells}))
    assert run(argv) == 0
    second = json.loads(capsys.readouterr().out)
    assert second["checks"][0]["data"]["marker"] is True
    assert len(second["checks"]) == len(json.loads(first)["checks"])


def test_workers_match_serial(tmp_path, monkeypatch, capsys):
    argv = ["monogenics", "--m", "3", "--n", "0", "--k", "0..3", "--Q", "0"]
    assert run(argv) == 0
    serial = capsys.readouterr().out
    monkeypatch.setenv("SUPERDIRAC_WORKERS", "2")
    assert run(argv) == 0
    assert capsys.readouterr().out == serial
    monkeypatch.setenv("SUPERDIRAC_WORKERS", "many")
    assert run(argv) == 2
    capsys.readouterr()


def test_list_ops(capsys):
    code, ops, _ = run_json(["list-ops", "--m", "2", "--n", "1"], capsys)
    assert code == 0 and any(o["spec"] == "dirac" for o in ops)


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "superdirac.cli", "pi-power", "--m", "3", "--n", "1", "--k-max", "3", "--format", "text"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.rstrip().endswith("PASS")
