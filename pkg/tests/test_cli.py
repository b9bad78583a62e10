import json
import subprocess
import sys

import pytest

from thetaq import __version__
from thetaq.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and __version__ in out


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--expr", "sinq(pi/2)", "--tau", "1.2i")
    assert code == EXIT_OK and out.strip().startswith("1.0000000000")
    code, out, _ = run(capsys, "eval", "--expr", "thetanull3()", "--q", "0.1", "--bits", "96")
    assert out.strip().startswith("1.20020000200000020000000")
    code, out, _ = run(capsys, "eval", "--expr", "cosq(x)", "--env", "x=0.2+0.1i", "--tau", "i", "--form", "theta")
    assert code == EXIT_OK and "i" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--expr", "sinq(x)", "--tau", "i"],
        ["eval", "--expr", "sinq(", "--tau", "i"],
        ["eval", "--expr", "1", "--tau", "-i"],
        ["eval", "--expr", "1", "--tau", "i", "--bits", "20"],
        ["eval", "--expr", "1"],
        ["verify", "--only", "nope"],
        ["verify", "--corpus", "/nonexistent.qid"],
        ["exact", "--order", "doubling=15"],
        ["exact", "--order", "riemann_L"],
        ["limits", "--q", "0.9", "--q", "0.5"],
        ["limits", "--identity", "nope"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err


def test_bad_qid_reports_position(capsys, tmp_path):
    f = tmp_path / "bad.qid"
    f.write_text('identity "x" {\n  vars: z;\n  lhs: sinq(z;\n  rhs: 1;\n}\n', encoding="utf-8")
    code, _, err = run(capsys, "verify", "--corpus", str(f), "--no-builtin", "--no-exact")
    assert code == EXIT_USAGE and "line 3" in err


def test_verify_pass_and_fail(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--only", "rel_1_3", "--samples", "4", "--no-exact")
    assert code == EXIT_OK and "PASS: 2/2" in out
    f = tmp_path / "wrong.qid"
    f.write_text('identity "wrong" { vars: z; lhs: sinq(2*z); rhs: 2*sinq(z)*cosq(z); }', encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--corpus", str(f), "--no-builtin", "--samples", "4", "--no-exact")
    assert code == EXIT_FAIL and "FAIL  wrong" in out


def test_verify_json_to_file(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--only", "prod_sin_diff", "--samples", "3", "--tau", "i",
                       "--format", "json", "--out", str(out_file), "--no-exact")
    assert code == EXIT_OK and out == ""
    d = json.loads(out_file.read_text())
    assert d["meta"]["tau_set"] == ["i"] and len(d["numeric"]) == 1


def test_verify_product_quotients_fails_on_null_factor(capsys):
    code, out, _ = run(capsys, "verify", "--only", "thm_7_5", "--samples", "3", "--product-quotients",
                       "--no-exact")
    assert code == EXIT_FAIL and "PoleError" in out


def test_exact(capsys):
    code, out, _ = run(capsys, "exact", "--order", "riemann_L=8", "--only")
    assert code == EXIT_OK and out.startswith("PASS  riemann_L  order 8")
    code, out, _ = run(capsys, "exact", "--format", "json", "--order", "t3=12", "--order", "t2=12", "--only")
    assert [e["name"] for e in json.loads(out)["exact"]] == ["t3", "t2"]


def test_limits(capsys):
    code, out, _ = run(capsys, "limits")
    assert code == EXIT_OK and "PASS  sin" in out and "PASS  cos" in out
    code, out, _ = run(capsys, "limits", "--function", "cos", "--q", "0.9", "--q", "0.99")
    assert code == EXIT_FAIL and "below resolution" in out
    code, out, _ = run(capsys, "limits", "--identity", "classical_sum_diff", "--q", "0.5", "--format", "json")
    # built from sin and cos only, so it holds at every nome
    assert code == EXIT_OK and json.loads(out)["limits"][0]["target"] == "classical_sum_diff"


def test_corpus_commands(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus", "list")
    assert code == EXIT_OK and out.splitlines()[0].startswith("gosper_1_15")
    code, out, _ = run(capsys, "corpus", "dump")
    from thetaq.dsl import shipped_qid_text

    assert out == shipped_qid_text()


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "thetaq", "corpus", "list"], capture_output=True, text=True)
    assert r.returncode == 0 and "ptolemy_ssn" in r.stdout
