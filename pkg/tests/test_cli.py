from __future__ import annotations

import json
import subprocess
import sys

import pytest

from rgshift import examples as ex
from rgshift.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


@pytest.fixture
def write_example(tmp_path):
    def go(name):
        path = tmp_path / f"{name}.json"
        path.write_text(ex.example_json(name))
        return str(path)

    return go


def _json_run(argv, capsys):
    code = main(["--emit", "json"] + argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_validate_ok(write_example, capsys):
    code, rep = _json_run(["validate", write_example("dyck2")], capsys)
    assert code == EXIT_OK
    assert rep["body"]["command"] == "validate"


def test_validate_negative_fixture_fails(write_example, capsys):
    assert main(["validate", write_example("neg_g3")]) == EXIT_FAIL
    assert "G3" in capsys.readouterr().out


def test_zeta_methods_agree(write_example, capsys):
    assert main(["zeta", write_example("dyck2"), "--terms", "5"]) == EXIT_OK
    assert "methods agree" in capsys.readouterr().out


def test_sofic_instant_reports_failure(write_example, capsys):
    code, rep = _json_run(["sofic", "instant", write_example("sofic_left_not_right")], capsys)
    assert code == EXIT_FAIL
    assert "0 1" in json.dumps(rep["body"]["verdicts"])


def test_sbi_doctored(write_example, capsys):
    code, rep = _json_run(["sofic", "sbi", write_example("sbi_doctored"), "--R", "1", "--max-len", "2"], capsys)
    assert code == EXIT_FAIL
    assert "0 1" in json.dumps(rep["body"]["verdicts"])


def test_ri_search_full_shift(write_example, capsys):
    assert main(["sofic", "ri-search", write_example("full2")]) == EXIT_OK


def test_usage_errors(tmp_path, capsys):
    assert main(["bogus"]) == EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": 3}')
    assert main(["validate", str(bad)]) == EXIT_USAGE
    assert main(["validate", str(tmp_path / "missing.json")]) == EXIT_USAGE


def test_budget_exit(write_example):
    assert main(["language", write_example("dyck3"), "--max-len", "8", "--budget", "50"]) == EXIT_BUDGET


def test_report_body_deterministic(write_example, capsys):
    path = write_example("motzkin2")
    bodies = [_json_run(["periodic", path, "--max-period", "4"], capsys)[1]["body"] for _ in range(2)]
    assert bodies[0] == bodies[1]
    assert len(bodies[0]["inputs"]) == 1


def test_example_emit_round_trip(tmp_path, capsys):
    out = tmp_path / "sec8.json"
    assert main(["example", "section8_d2", "--emit", "json", "--out", str(out)]) == EXIT_OK
    cfg = ex.Section8Config.from_dict(json.loads(out.read_text()))
    assert cfg == ex.Section8Config.d2_base()
    capsys.readouterr()
    assert main(["props", str(out), "--recipe", "parent"]) == EXIT_OK


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rgshift", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "sofic" in res.stdout


def test_example_out_without_emit(tmp_path, capsys):
    out = tmp_path / "d.json"
    assert main(["example", "dyck2", "--out", str(out)]) == EXIT_OK
    assert "summary" in capsys.readouterr().out
    assert json.loads(out.read_text())
