import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from polyconvex import cli, repro
from polyconvex.instance_file import load
from polyconvex.verify import GridOracleConfig, grid_primal_oracle

DATA = Path(__file__).parent / "data"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_repro_all_passes():
    code, out, _ = run("repro", "all", "--json")
    assert code == 0
    doc = json.loads(out)
    assert [e["verdict"] for e in doc["examples"]] == ["PASS"] * 3


def test_repro_human_output_lists_checks():
    code, out, _ = run("repro", "example-2.3")
    assert code == 0
    assert "counterexample eps=100" in out and "FAIL" not in out


def test_json_output_is_byte_stable():
    a = run("solve", "--example", "example-2.1", "--json")[1]
    b = run("solve", "--example", "example-2.1", "--json")[1]
    assert a == b
    doc = json.loads(a)
    assert doc["primal_value"] == "3" and doc["dual_value"] == "0" and doc["gap"] == "3"
    assert "elapsed_ms" not in doc


def test_timing_is_opt_in():
    doc = json.loads(run("solve", "--example", "abs", "--json", "--timing")[1])
    assert isinstance(doc["elapsed_ms"], int)


def test_seed42_golden_instance():
    path = DATA / "seed42.json"
    code, out, _ = run("generate", "--seed", "42")
    assert code == 0 and out == path.read_text()
    code, out, _ = run("solve", str(path), "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["primal_value"] == doc["dual_value"] == "6"
    I = load(path)
    best, _ = grid_primal_oracle(I, GridOracleConfig(box_bound=3, spacing=Fraction(1, 2), dims=I.total_dim))
    assert best == 6


def test_tset_output():
    code, out, _ = run("tset", "--example", "example-2.1", "--point", "0,5,0", "--eps", "1/2")
    assert code == 0
    assert "R x [9/10, 1] x R" in out and "closed: True" in out


def test_subdiff_output():
    code, out, _ = run("subdiff", "--example", "example-2.1", "--block", "0", "--point", "0,3", "--eps", "1", "--json")
    assert code == 0
    assert "R_- x [2/3, 1]" in out


def test_conjugate_output():
    code, out, _ = run("conjugate", "--example", "example-2.1", "--block", "1", "--json")
    assert code == 0
    assert json.loads(out)["command"] == "conjugate"


@pytest.mark.parametrize(
    "argv",
    [
        ("subdiff", "--example", "example-2.1", "--block", "0", "--point", "0,3", "--eps", "0.5"),
        ("subdiff", "--example", "example-2.1", "--block", "9", "--point", "0,3", "--eps", "1"),
        ("tset", "--example", "example-2.1", "--point", "0,3", "--eps", "1"),
        ("tset", "--example", "example-2.1", "--point", "0,3,0", "--eps", "-1"),
        ("solve", "--example", "nope"),
        ("solve", "/nonexistent/file.json"),
        ("frobnicate",),
    ],
)
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_parse_error_names_position(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"version": 1, "blocks": [{"dim": 1, "pieces": [{"slope": [0.5], "offset": "0"}]}], "subspace_basis": []}))
    code, _, err = run("solve", str(bad))
    assert code == 2 and "$.blocks[0].pieces[0].slope[0]" in err


def test_failed_check_exits_1(monkeypatch):
    def broken():
        return [repro.Check("x", "1", "2", False)]

    monkeypatch.setitem(repro.SCRIPTS, "example-2.1", broken)
    code, out, _ = run("repro", "example-2.1")
    assert code == 1 and "FAIL" in out


def test_small_verify_campaign():
    code, out, _ = run("verify", "thm34", "--trials", "4", "--json")
    assert code == 0 and json.loads(out)["campaigns"][0]["verdict"] == "PASS"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "polyconvex.cli", "repro", "example-2.2"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
