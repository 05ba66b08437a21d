import json
import subprocess
import sys

import pytest

from sidecond.cli import main
from sidecond.fixtures import data_path, data_text

U1, P1, W, Q1 = (data_path(n) for n in ("U1.json", "p1.json", "w.json", "q1.json"))


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse rejects bad flags before any work
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_universe(capsys):
    code, out, _ = run(capsys, "validate-universe", U1)
    assert code == 0 and json.loads(out)["valid"] is True


def test_worked_amalgam_document(capsys):
    code, out, _ = run(capsys, "amalgamate", "--mode", "countable", "--universe", U1,
                       "--r", P1, "--w", W, "--model", "N")
    assert code == 0 and out == data_text("amalgam.json")


def test_amalgam_precondition_failure_is_exit_1(capsys):
    code, _, err = run(capsys, "amalgamate", "--mode", "countable", "--universe", U1,
                       "--r", W, "--w", P1, "--model", "N")
    assert code == 1
    assert json.loads(err)["error"] == "PreconditionFailed"


def test_product_amalgam_and_projection(capsys):
    code, out, _ = run(capsys, "restrict", "--universe", U1, "--cond", Q1, "--model", "N")
    assert code == 0 and json.loads(out)["aSet"] == []
    code, out, _ = run(capsys, "project", "--universe", U1, "--cond", Q1, "--index", "0")
    assert code == 0 and json.loads(out)["sIndex"] == 0
    code, _, err = run(capsys, "project", "--universe", U1, "--cond", Q1, "--index", "1")
    assert code == 1 and json.loads(err)["error"] == "CoordinateMissing"


def test_validate_cond_reports_clauses(capsys, tmp_path):
    doc = json.loads(data_text("p1.json"))
    doc["gMap"][0]["value"] = [13]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate-cond", str(bad), "--universe", U1)
    assert code == 1
    assert [v["clause"] for v in json.loads(out)["violations"]] == ["C4"]
    code, out, _ = run(capsys, "validate-cond", Q1, "--universe", U1)
    assert code == 0


def test_restrict_rejects_conditions_outside_the_class(capsys):
    code, _, err = run(capsys, "restrict", "--universe", U1, "--cond", W, "--model", "N")
    assert code == 1 and json.loads(err)["error"] == "NotInDClass"


def test_input_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "check", "P-8.6", "--seed", "1", "--bogus")[0] == 2
    assert run(capsys, "check", "P-8.6")[0] == 2  # --seed is required
    assert run(capsys, "check", "P-99.9", "--seed", "1")[0] == 2
    assert run(capsys, "restrict", "--universe", U1, "--cond", P1, "--model", "Z")[0] == 2
    broken = tmp_path / "u.json"
    broken.write_text('{"config": ')
    code, _, err = run(capsys, "validate-universe", str(broken))
    assert code == 2 and "line 1" in json.loads(err)["message"]


def test_check_is_byte_identical_across_runs_and_jobs(capsys):
    args = ["check", "P-8.6", "--seed", "7", "--trials", "500"]
    first = run(capsys, *args)
    again = run(capsys, *args)
    par = run(capsys, *args, "--jobs", "4")
    assert first[0] == 0 and first[1] == again[1] == par[1]
    env = json.loads(first[1])["environment"]
    assert set(env) == {"seed", "trials", "version", "fixtures"}


def test_zero_trials_is_a_vacuous_failure(capsys):
    code, out, _ = run(capsys, "check", "P-6.15", "--seed", "0", "--trials", "0")
    assert code == 1 and json.loads(out)["results"][0]["status"] == "vacuous"


def test_report_renders_tables(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "P-2.16", "--seed", "0", "--trials", "30", "--timing")
    path = tmp_path / "r.json"
    path.write_text(out)
    code, table, _ = run(capsys, "report", str(path))
    assert code == 0
    assert "P-2.16" in table and "pass" in table and "seconds" in table
    code, out, _ = run(capsys, "validate-universe", U1)
    path.write_text(out)
    assert "A14" in run(capsys, "report", str(path))[1]


def test_gen_universe_stats(capsys):
    code, out, _ = run(capsys, "gen-universe", "--seed", "3", "--stats")
    doc = json.loads(out)
    assert code == 0 and doc["stats"]["attempts"] >= 1 and "universe" in doc


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sidecond", "validate-universe", U1],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and '"valid": true' in proc.stdout
