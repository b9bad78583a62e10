import math

import mpmath
import pytest

from test_qtrig import gosper_oracle
from thetaq.dsl import EvalOptions, corpus_by_name, parse
from thetaq.dsl import ast as A
from thetaq.errors import DomainError, GridError
from thetaq.harness import (
    LIMIT_FUNCTIONS,
    SampleStrategy,
    format_sample,
    limit_sweep,
    run_corpus,
    run_exact,
    run_identity,
)
from thetaq.params import Precision, parse_complex
from thetaq.qformal.checks import DEFAULT_ORDERS

P128 = Precision(128)
CORPUS = corpus_by_name()
SMALL = SampleStrategy(count=5)


def _flip_first_term(d):
    """Negate the first summand of the right side (a single sign mutation)."""
    rhs = d.rhs
    assert isinstance(rhs, (A.Add, A.Sub))
    left = rhs.left
    while isinstance(left, (A.Add, A.Sub)):
        left = left.left
    return d.with_sides(d.lhs, _replace(rhs, left, A.Neg(left)))


def _replace(e, old, new):
    if e is old:
        return new
    if isinstance(e, (A.Add, A.Sub)):
        return type(e)(_replace(e.left, old, new), e.right)
    return e


@pytest.mark.parametrize(
    "kwargs",
    [dict(count=0), dict(real_box=(1, 1)), dict(imag_box=(0.2, -0.2)), dict(seed=2**64), dict(tau_set=()),
     dict(tau_set=("-i",))],
)
def test_strategy_validation(kwargs):
    with pytest.raises(DomainError):
        SampleStrategy(**kwargs)


def test_rng_is_keyed_by_name_and_tau():
    s = SampleStrategy()
    a = [s.draw(s.rng("x", 0)) for _ in range(3)]
    assert a == [s.draw(s.rng("x", 0)) for _ in range(3)]
    assert s.draw(s.rng("x", 1)) != s.draw(s.rng("x", 0))
    assert s.draw(s.rng("y", 0)) != s.draw(s.rng("x", 0))
    z = s.draw(s.rng("x", 0))
    assert -2 <= z.real <= 2 and -0.2 <= z.imag <= 0.2
    assert SampleStrategy(real_only=True).draw(s.rng("x", 0)).imag == 0


def test_format_sample_replays_exactly():
    for z in [complex(0.1, -0.3), complex(-1.9999999999, 0.0), complex(1e-17, 2.5e-5)]:
        back = parse_complex(format_sample(z), Precision(128))
        assert complex(float(back.real), float(back.imag)) == z


def test_run_identity_passes_and_records():
    r = run_identity(CORPUS["gosper_1_15"], SMALL, P128, 1e-25, 1)
    assert r.passed and r.evaluated == 5 and r.tau == "0.3+1.1i"
    assert float(r.max_rel) <= 1e-25
    assert len(r.records) == 5 and r.worst_index in range(5)
    assert dict(r.worst_env).keys() == {"a", "b", "x", "y"}
    again = run_identity(CORPUS["gosper_1_15"], SMALL, P128, 1e-25, 1)
    assert again == r


def test_sign_mutation_fails_with_large_residual():
    bad = _flip_first_term(CORPUS["thm_7_5"])
    r = run_identity(bad, SMALL, P128)
    assert not r.passed
    assert float(r.max_rel) > 1e-3
    assert "exceeds tolerance" in r.diagnosis


def test_classical_identity_real_only():
    s = SampleStrategy(count=10, real_only=True)
    r = run_identity(CORPUS["classical_ptolemy"], s, P128, 1e-12)
    assert r.passed and float(r.max_rel) < 1e-12


def test_skips_are_counted():
    r = run_identity(CORPUS["thm_7_5"], SMALL, P128, options=EvalOptions(product_quotients=True))
    assert not r.passed
    assert len(r.skipped) == 5 and r.evaluated == 0
    assert r.skipped[0].kind == "PoleError"
    assert "5 of 5 samples skipped" in r.diagnosis


def test_other_errors_are_diagnosed():
    [d] = parse('identity "bad_q" { vars: z; lhs: poch(z, 2); rhs: 1; }')
    r = run_identity(d, SMALL, P128)
    assert not r.passed and "DomainError" in r.diagnosis


def test_run_corpus_shape_and_filters(tmp_path):
    [extra] = [parse('identity "mine" { vars: z; lhs: sinq(z)^2 + cosq(z)^2; rhs: 1; }')]
    rep = run_corpus(SMALL, P128, extra=[extra], only=["thm_7_2", "mine"])
    assert [(r.name, r.tau) for r in rep.numeric] == [
        ("thm_7_2", "1.2i"), ("thm_7_2", "0.3+1.1i"), ("mine", "1.2i"), ("mine", "0.3+1.1i"),
    ]
    # sinq^2 + cosq^2 = 1 fails for q-trig functions, which keeps the run honest
    assert rep.numeric[0].passed and not rep.numeric[2].passed
    assert not rep.passed and rep.failures == ["mine @ tau=1.2i", "mine @ tau=0.3+1.1i"]
    assert rep.exact == ()
    with pytest.raises(DomainError):
        run_corpus(SMALL, P128, only=["nope"])


def test_run_corpus_jobs_do_not_change_results():
    only = ["rel_1_3", "rel_7_4", "prod_cos_diff"]
    a = run_corpus(SMALL, P128, only=only)
    b = run_corpus(SMALL, P128, only=only, jobs=3)
    assert a == b


def test_run_exact_defaults_and_errors():
    reports = run_exact({"riemann_L": 4, "triple": 6})
    assert [r.name for r in reports] == ["riemann_L", "triple"] and all(r.passed for r in reports)
    assert set(DEFAULT_ORDERS) == {r.name for r in run_exact()}
    with pytest.raises(GridError, match="doubling"):
        run_exact({"doubling": 15})
    with pytest.raises(DomainError, match="unknown"):
        run_exact({"riemann": 4})


@pytest.mark.parametrize("name", ["sin", "cos"])
def test_limit_sweep_decreasing(name):
    t = limit_sweep(name)
    devs = [float(r.deviation) for r in t.rows]
    assert t.passed and t.strictly_decreasing and t.resolved
    assert devs[0] > devs[1] > devs[2] > 0
    assert [r.bits for r in t.rows][0] == 128


def test_limit_deviation_against_oracle():
    t = limit_sweep("sin", qs=("0.5",))
    with mpmath.workdps(60):
        tau = 1j * mpmath.log(2) / mpmath.pi
        w = mpmath.mpf("0.37")
        ref = abs(gosper_oracle("sin", w, tau, dps=60) - mpmath.sin(w))
        assert abs(mpmath.mpf(t.rows[0].deviation) / ref - 1) < 1e-20


def test_limit_angle_is_taken_literally():
    # a float angle means the double nearest 0.37, which moves the deviation in the 17th digit
    a = limit_sweep("sin", qs=("0.5",)).rows[0].deviation
    b = limit_sweep("sin", qs=("0.5",), w=0.37).rows[0].deviation
    assert a != b and abs(float(a) / float(b) - 1) < 1e-15


def test_limit_sweep_zero_angle():
    for name in ("sin", "ccs"):
        t = limit_sweep(name, w=0)
        assert t.all_zero and t.passed


def test_limit_sweep_unresolved_near_one():
    t = limit_sweep("cos", qs=(0.9, 0.99))
    assert not t.rows[1].resolved and not t.passed


def test_limit_sweep_identity_target():
    t = limit_sweep(CORPUS["gosper_1_15"], qs=(0.5, 0.8))
    assert t.passed and all(float(r.deviation) < 1e-30 for r in t.rows)
    assert t.target == "gosper_1_15"


def test_limit_sweep_validation():
    with pytest.raises(DomainError):
        limit_sweep("sin", qs=(0.8, 0.5))
    with pytest.raises(DomainError):
        limit_sweep("tan")
    assert LIMIT_FUNCTIONS == ("sin", "cos", "ccs", "ssn")


def test_tolerance_scales_with_bits():
    p = Precision(256)
    r = run_identity(CORPUS["prod_sin_diff"], SMALL, p, p.eps)
    assert r.passed and float(r.max_rel) < 1e-60
    assert math.isclose(p.eps, 2.0 ** -240)
