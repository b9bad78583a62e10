"""Theta series, products and the pair-returning identity helpers.

Reference values come from mpmath.jtheta / mpmath.qp at 80 digits, which
share no code with the package's own summation.
"""

import random

import mpmath
import pytest

from conftest import random_points, rel
from thetaq.errors import ConvergenceError, DomainError
from thetaq.params import Precision, from_real_nome, make_param
from thetaq.theta import (
    SeriesControl,
    doubling_identities,
    q_pochhammer,
    shift_half_period,
    shift_half_pi,
    theta1_quarter_pi,
    theta_null,
    theta_product,
    theta_series,
    triple_product_check,
)

P128 = Precision(128)


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_series_matches_mpmath(j, param, oracle):
    for z in random_points(j, 15, re=(-3, 3), im=(-0.5, 0.5)):
        ours = theta_series(j, z, param, P128)
        assert rel(ours, oracle.theta(j, z, param.tau)) <= P128.eps


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_series_at_256_bits(j, oracle):
    prec = Precision(256)
    p = make_param("0.3+1.1i", prec)
    z = complex(0.7, -0.15)
    with mpmath.workdps(100):
        ref = mpmath.jtheta(j, z, mpmath.expjpi(mpmath.mpc("0.3", "1.1")))
        assert rel(theta_series(j, z, p, prec), ref) <= prec.eps


def test_frozen_null_values():
    p = from_real_nome("0.1", P128)
    # 1 + 2q + 2q^4 + 2q^9 + 2q^16 + ... at q = 1/10
    with mpmath.workdps(60):
        assert rel(theta_null(3, p, P128), mpmath.mpf("1.2002000020000002000000002")) < 1e-35
        assert rel(theta_series(4, 0, p, P128), mpmath.mpf("0.8001999980000001999999998")) < 1e-35
    assert theta_null(1, p, P128) == 0
    assert theta_series(1, 0, p, P128) == 0


def test_null2_against_oracle(oracle):
    p = from_real_nome("0.1", P128)
    with mpmath.workdps(80):
        ref = mpmath.jtheta(2, 0, mpmath.mpf("0.1"))
    assert rel(theta_null(2, p, P128), ref) <= P128.eps
    assert abs(float(ref.real) - 1.1359306015682802) < 1e-15


def test_theta_null_cached_per_precision():
    p = make_param("1.2i", P128)
    a = theta_null(3, p, P128)
    assert theta_null(3, p, P128) == a
    b = theta_null(3, make_param("1.2i", Precision(192)), Precision(192))
    assert rel(a, b) <= P128.eps


@pytest.mark.parametrize("j", [0, 5, "1"])
def test_bad_index(j):
    with pytest.raises(DomainError):
        theta_series(j, 0.1, make_param("i"), P128)


def test_parity(param):
    for z in random_points(99, 10):
        assert rel(theta_series(1, -z, param, P128), -theta_series(1, z, param, P128)) <= P128.eps
        for j in (2, 3, 4):
            assert rel(theta_series(j, -z, param, P128), theta_series(j, z, param, P128)) <= P128.eps


def test_convergence_error_on_tiny_budget():
    p = from_real_nome("0.95", P128)
    with pytest.raises(ConvergenceError):
        theta_series(3, 0.2, p, P128, SeriesControl(max_terms=3))


def test_q_pochhammer_values(oracle):
    ctx = P128.ctx
    assert q_pochhammer(0, ctx.mpf("0.3"), P128) == 1
    assert q_pochhammer(1, ctx.mpf("0.3"), P128) == 0
    val = q_pochhammer(ctx.mpf(1) / 10, ctx.mpf(1) / 10, P128)
    assert rel(val, oracle.qp(ctx.mpf(1) / 10, ctx.mpf(1) / 10)) <= P128.eps
    assert abs(float(val.real) - 0.8900100999989990) < 1e-15
    # direct finite product (independent of both implementations)
    with mpmath.workdps(60):
        direct = mpmath.fprod(1 - mpmath.mpf(10) ** -(n + 1) for n in range(80))
    assert rel(val, direct) <= P128.eps


def test_q_pochhammer_complex(oracle):
    rng = random.Random(5)
    for _ in range(20):
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        nome = complex(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
        ours = q_pochhammer(a, nome, P128)
        assert rel(ours, oracle.qp(a, nome)) <= P128.eps


def test_q_pochhammer_domain():
    with pytest.raises(DomainError):
        q_pochhammer(0.5, 1.0, P128)
    with pytest.raises(DomainError):
        q_pochhammer(0.5, complex(0.8, 0.8), P128)


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_product_matches_series(j, param):
    for z in random_points(10 + j, 12):
        assert rel(theta_product(j, z, param, P128), theta_series(j, z, param, P128)) <= P128.eps


def test_product_examples():
    ctx = P128.ctx
    p = from_real_nome("0.1", P128)
    q = p.q
    expected = 2 * q ** (ctx.mpf(1) / 4) * q_pochhammer(q * q, q * q, P128) * q_pochhammer(-q * q, q * q, P128) ** 2
    assert rel(theta_product(1, ctx.pi / 2, p, P128), expected) <= P128.eps
    assert abs(theta_product(2, ctx.pi / 2, make_param("0.3+1.1i"), P128)) < 1e-37
    p15 = from_real_nome("0.15", P128)
    z = ctx.mpc("0.3", "0.2")
    assert rel(theta_product(3, z, p15, P128), theta_series(3, z, p15, P128)) <= P128.eps


def test_shift_half_pi_pairs():
    p = from_real_nome("0.1", P128)
    lhs, rhs = shift_half_pi(0, p, P128)
    assert rel(lhs, rhs) <= P128.eps and rel(rhs, theta_null(2, p, P128)) <= P128.eps
    for z, tau in [(0.3, None), (complex(0.2, 0.1), "0.1+0.6i")]:
        pp = p if tau is None else make_param(tau, P128)
        a, b = shift_half_pi(z, pp, P128)
        assert rel(a, b) <= P128.eps


def test_shift_half_period_pairs():
    for z, tau in [(0, None), (0.4, "i"), (complex(0.1, -0.05), "0.2+0.8i")]:
        pp = from_real_nome("0.1", P128) if tau is None else make_param(tau, P128)
        a, b = shift_half_period(z, pp, P128)
        assert rel(a, b) <= P128.eps


def test_theta1_quarter_pi_pairs():
    for p in (from_real_nome("0.1", P128), make_param("0.3+1.1i", P128)):
        a, b = theta1_quarter_pi(p, P128)
        assert rel(a, b) <= P128.eps
    # small-q limit: both sides ~ sqrt(2) q^(1/4)
    p = from_real_nome("1e-12", P128)
    a, _ = theta1_quarter_pi(p, P128)
    ctx = P128.ctx
    assert abs(a / (ctx.sqrt(2) * ctx.mpf("1e-12") ** (ctx.mpf(1) / 4)) - 1) < 1e-11


def test_doubling_pairs():
    for z, tau in [(0, "1.2i"), (0.5, None), (complex(1.1, 0.3), "0.15+0.9i")]:
        pp = from_real_nome("0.2", P128) if tau is None else make_param(tau, P128)
        (a, b), (c, d) = doubling_identities(z, pp, P128)
        assert rel(a, b) <= P128.eps and rel(c, d) <= P128.eps
        if z == 0:
            assert rel(a, c) <= P128.eps


def test_triple_product_pairs():
    for z, nome in [(2, 0.1), (-1, 0.3), (complex(0.4, 0.7), complex(0.2, -0.3))]:
        a, b = triple_product_check(z, nome, P128)
        assert rel(a, b) <= P128.eps
    a, b = triple_product_check(0.25, 0.25, P128)
    assert abs(a) < 1e-37 and b == 0
    with pytest.raises(DomainError):
        triple_product_check(0, 0.1, P128)
    with pytest.raises(DomainError):
        triple_product_check(1, 1.0, P128)
