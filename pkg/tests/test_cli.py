import io
import json
import subprocess
import sys

import pytest

from rfn.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def src(tmp_path):
    def write(text, name="prog.rfn"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return write


def test_eval_collect():
    code, out, _ = run("eval", "corpus/collect.rfn", "--fuel", "1000")
    assert code == 0
    assert out.strip() == "inr((5, inr((4, inr((3, inl(unit)))))))"


def test_check_even():
    assert run("check", "corpus/even.rfn")[0] == 0


def test_eval_diverge_times_out():
    code, out, _ = run("eval", "corpus/diverge.rfn", "--fuel", "5")
    assert (code, out.strip()) == (3, "timeout")


def test_type_error_exit_and_json(src):
    path = src("def x : {v: Int32 with v % 2 == 0} = 43\n")
    code, out, _ = run("check", path, "--json")
    assert code == 1
    diag = json.loads(out.strip().splitlines()[0])
    assert diag["code"] == "E-PREDICATE" and diag["severity"] == "error"
    assert diag["span"] == [37, 39]
    assert diag["expected"] == "{v: Int32 with v % 2 == 0}"


def test_spans_are_byte_offsets(src):
    # the comment holds a two-byte character before the error
    path = src("-- é\ndef x : Int32 = true\n")
    code, out, _ = run("check", path, "--json")
    diag = json.loads(out)
    text = open(path, "rb").read()
    assert code == 1 and text[diag["span"][0]:diag["span"][1]] == b"true"


def test_parse_error_exit(src):
    code, out, _ = run("check", src("def x : Int32 = (\n"), "--json")
    assert code == 2 and json.loads(out)["code"] == "E-PARSE"


def test_unbound_name_diagnostic(src):
    code, out, _ = run("check", src("def x : Int32 = y\n"), "--json")
    assert code == 2 and json.loads(out)["code"] == "E-UNBOUND"


def test_text_diagnostics(src):
    code, out, _ = run("check", src("def f : Int32 = true 3\n"))
    assert code == 1 and "E-NOT-FUNCTION" in out and ":1:17:" in out


def test_all_failing_definitions_are_reported(src):
    code, out, _ = run("check", src("def a : Int32 = true\ndef b : Bool = 1\ndef c : Int32 = a + 1\n"), "--json")
    assert code == 1 and len(out.strip().splitlines()) == 2


def test_no_anf_rejects_non_variable_arguments(src):
    path = src("def x : Int32 = (fun(y: Int32) => y) 3\n")
    assert run("check", path)[0] == 0
    code, out, _ = run("check", path, "--no-anf", "--json")
    assert code == 1 and json.loads(out)["code"] == "E-ARG-NOT-VAR"


def test_eval_checks_first(src):
    assert run("eval", src("def x : Int32 = true\nmain = x"))[0] == 1


def test_eval_stuck_is_unreachable_for_well_typed_input(src):
    code, out, _ = run("eval", src("main = 7 / 2"), "--json")
    assert code == 0 and json.loads(out) == {"result": "3"}


def test_trace_solver(src):
    code, _, err = run("check", "corpus/even.rfn", "--trace-solver")
    assert code == 0 and "merge" in err


def test_solve_cases():
    assert run("solve", "--facts", "y == 2*x + 3*x", "--goal", "y == 5*x")[0] == 0
    code, out, _ = run("solve", "--facts", "x > 0", "--goal", "x > 1", "--oracle")
    assert code == 1 and "countermodel x = 1" in out
    code, out, _ = run("solve", "--facts", "x > 1; y == x", "--goal", "y > 0", "--oracle")
    assert code == 0 and "holds" in out


def test_solve_usage_errors():
    assert run("solve", "--goal", "x >")[0] == 2
    assert run("solve", "--goal", "loop(x) s => inr[Int32] s")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("check", "/nonexistent/file.rfn")[0] == 2


def test_check_is_deterministic():
    results = {run("check", "corpus/collect.rfn", "--json") for _ in range(3)}
    assert len(results) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rfn", "eval", "corpus/diverge.rfn", "--fuel", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 3 and proc.stdout.strip() == "timeout"
