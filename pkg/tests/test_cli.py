import json
import subprocess
import sys
from pathlib import Path

import pytest

from approxforms.cli import Report, dump_structured, main, render_report

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "approxforms", *args], capture_output=True, text=True,
                          cwd=HERE)
    return proc.returncode, proc.stdout, proc.stderr


DECOMPOSE = ["decompose", "--poset", "data/chain3.json", "--codomain", "data/bool.json",
             "--function", "data/psi.json", "--algebra", "data/primal.json"]


@pytest.mark.parametrize("golden,args", [
    ("choice_table.json", ["choice", "table"]),
    ("inf_lefebvre.json", ["inf", "--arity", "3", "--table", "01001111"]),
    ("decompose_theta.json", DECOMPOSE + ["--theorem", "2"]),
    ("ensemble_counter.json", ["ensemble", "marginals", "--p", "data/ensemble_counter.json"]),
])
def test_structured_output_matches_golden_file(golden, args):
    code, out, err = run("--output", "json", *args)
    assert err == ""
    assert out == (GOLDEN / golden).read_text()
    assert code in (0,)


def test_structured_output_is_byte_stable():
    args = ["--output", "json", "ensemble", "sample", "--p", "data/ensemble_counter.json", "--n", "5000",
            "--seed", "11"]
    first, second = run(*args), run(*args)
    assert first == second
    assert first[0] == 0
    doc = json.loads(first[1])
    assert doc["payload"]["empirical"]["seed"] == 11


def test_choice_table_text_layout():
    code, out, _ = run("choice", "table")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "choice table: PASS"
    assert lines[2].split() == ["x1", "x2", "x3", "z", "(exact)", "F", "z", "(approx)", "f"]
    assert lines[4 + 3].split() == ["0", "1", "1", "x3", "1", "x1", "0"]
    assert len(lines) == 4 + 8


def test_inf_verify():
    code, out, _ = run("--output", "json", "inf", "verify", "--arity", "3")
    doc = json.loads(out)
    assert code == 0
    assert doc["payload"]["checked"] == 256 and doc["payload"]["failures"] == []
    assert doc["verdict"] == "pass"


def test_ensemble_golden_command():
    code, out, _ = run("--output", "json", "ensemble", "golden")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "pass"
    assert abs(doc["payload"]["root"] - 0.6180339887498949) < 1e-10


def test_failing_verification_exits_one():
    code, out, _ = run("check-axioms", "--algebra", "data/dual.json", "--system", "B*")
    assert code == 0
    bad = HERE / "data" / "broken.json"
    code, out, _ = run("--output", "json", "check-axioms", "--algebra", str(bad), "--system", "A")
    doc = json.loads(out)
    assert code == 1
    assert doc["verdict"] == "fail"
    assert doc["diagnostics"]


def test_input_errors_exit_two(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": [0.5, 0.4, 0, 0, 0, 0, 0, 0]}')
    code, out, err = run("ensemble", "marginals", "--p", str(bad))
    assert code == 2 and out == ""
    assert "sum to" in err
    broken = tmp_path / "broken.json"
    broken.write_text('{"elements": [\n')
    code, _, err = run(*DECOMPOSE[:2], str(broken), *DECOMPOSE[3:])
    assert code == 2 and ":2:1" in err
    assert run("choice", "--x1", "2", "--x2", "0", "--x3", "0")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("ensemble", "sample", "--p", "data/ensemble_counter.json", "--n", "10")[0] == 2


def test_map_with_unknown_element_exits_two(tmp_path):
    f = tmp_path / "f.json"
    f.write_text(json.dumps({"map": {"a": "1", "b": "0", "c": "1", "d": "0"}}))
    code, _, err = run(*DECOMPOSE[:6], str(f), *DECOMPOSE[7:])
    assert code == 2
    assert "absent from the domain" in err


def test_precondition_failure_exits_two():
    code, _, err = run(*DECOMPOSE, "--dual")
    assert code == 2
    assert "primal" in err


def test_decompose_pad_and_dual():
    code, out, _ = run("--output", "json", *DECOMPOSE, "--pad")
    doc = json.loads(out)
    assert code == 0 and doc["payload"]["dissociation_count"] == 2 and doc["payload"]["padded"]
    dual = [a if a != "data/primal.json" else "data/dual.json" for a in DECOMPOSE]
    code, out, _ = run("--output", "json", *dual, "--dual")
    assert code == 0 and json.loads(out)["payload"]["polarity"] == "dual"


def test_global_seed_is_accepted():
    args = ["--seed", "4", "--output", "json", "ensemble", "region", "--x1", "0.5", "--x2", "0", "--x3", "0.5",
            "--samples", "50"]
    code, out, _ = run(*args)
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "info"
    assert doc["payload"]["holds_for_all"] is False


def test_verify_suite_small():
    code, out, _ = run("--output", "json", "verify-suite", "--count", "40", "--seed", "5")
    doc = json.loads(out)
    assert doc["payload"]["count"] == 40
    assert code == (1 if doc["verdict"] == "fail" else 0)


def test_main_in_process(capsys):
    assert main(["choice", "--x1", "0", "--x2", "0", "--x3", "1"]) == 0
    assert "chosen: x3" in capsys.readouterr().out


def test_render_report_contract():
    r = Report("demo", "fail", {"b": 0.1, "a": [1, 2.5], "c": {"z": True, "y": None}}, ["it broke"])
    s = render_report(r, "json")
    assert s.endswith("\n")
    assert s == render_report(r, "json")
    assert '"b": 0.10000000000000001' in s
    assert s.index('"a"') < s.index('"b"') < s.index('"c"')
    assert json.loads(s)["diagnostics"] == ["it broke"]
    text = render_report(r, "text")
    assert text.startswith("demo: FAIL") and "diagnostics:" in text
    assert r.exit_code == 1
    with pytest.raises(ValueError):
        Report("demo", "maybe", {})
    with pytest.raises(ValueError):
        dump_structured(float("nan"))
