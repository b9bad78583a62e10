import io
import json

import pytest

from thetaq.dsl import EvalOptions
from thetaq.harness import SampleStrategy, limit_sweep, run_corpus
from thetaq.params import Precision
from thetaq.report import emit_report, render_exact, render_limits, render_report, report_from_json
from thetaq.harness import run_exact

P128 = Precision(128)


@pytest.fixture(scope="module")
def report():
    return run_corpus(SampleStrategy(count=3), P128, only=["thm_7_2", "rel_1_3"],
                      exact_orders={"riemann_L": 8})


@pytest.fixture(scope="module")
def failing():
    return run_corpus(SampleStrategy(count=3), P128, only=["thm_7_5"],
                      options=EvalOptions(product_quotients=True))


def test_json_round_trip(report, failing):
    for r in (report, failing):
        assert report_from_json(render_report(r)) == r


def test_json_layout(report):
    d = json.loads(render_report(report))
    assert list(d) == ["meta", "numeric", "exact"]
    meta = d["meta"]
    assert (meta["seed"], meta["bits"], meta["tol"], meta["passed"]) == (42, 128, "1e-25", True)
    row = d["numeric"][0]
    assert set(row["max_rel"]) == {"value", "float"}
    assert float(row["max_rel"]["value"]) == row["max_rel"]["float"]
    assert "elapsed" not in row and "elapsed" not in d["exact"][0]


def test_timing_is_opt_in(report):
    d = json.loads(render_report(report, timing=True))
    assert "elapsed" in d["numeric"][0] and "elapsed" in d["exact"][0]
    assert "seconds" in render_report(report, "text", timing=True)


def test_text_report(report, failing):
    text = render_report(report, "text")
    assert "seed=42" in text and "bits=128" in text
    assert text.count("PASS  thm_7_2") == 2
    assert "PASS  exact riemann_L" in text
    assert text.rstrip().endswith("PASS: 5/5 checks passed")
    bad = render_report(failing, "text")
    assert "FAIL  thm_7_5" in bad and "samples skipped" in bad
    assert bad.rstrip().endswith("FAIL: 0/2 checks passed")


def test_emit_report_to_stream(report):
    buf = io.StringIO()
    emit_report(report, "json", buf)
    assert buf.getvalue() == render_report(report)
    with pytest.raises(ValueError):
        render_report(report, "xml")


def test_exact_and_limit_rendering():
    from thetaq.qformal import verify_riemann_L

    text = render_exact([verify_riemann_L(8, flip=1)])
    assert text.startswith("FAIL  riemann_L") and "first nonzero" in text
    assert json.loads(render_exact(run_exact({"t3": 12}), "json"))["exact"][0]["passed"] is True
    t = limit_sweep("cos", qs=("0.5", "0.8"))
    assert render_limits([t]).startswith("PASS  cos at w=0.37")
    rows = json.loads(render_limits([t], "json"))["limits"][0]["rows"]
    assert rows[0]["deviation"]["float"] > rows[1]["deviation"]["float"]
