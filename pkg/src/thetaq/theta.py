"""Numerical Jacobi theta functions.

Two independent routes are provided: the bilateral series (``theta_series``)
and the infinite products (``theta_product``).  Identity-shaped helpers return
both sides of a relation as a pair and leave the tolerance decision to the
caller.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import mpmath

from .errors import ConvergenceError, DomainError
from .params import ModularParam, Precision, _qpow, to_mp

LN2 = math.log(2.0)


@dataclass(frozen=True)
class SeriesControl:
    max_terms: int = 10000

    def __post_init__(self):
        if self.max_terms < 1:
            raise DomainError("max_terms must be >= 1")


DEFAULT_CONTROL = SeriesControl()


def _check_index(j):
    if j not in (1, 2, 3, 4):
        raise DomainError(f"theta index must be 1..4, got {j!r}")


def _log_abs(x) -> float:
    """Natural log of |x| as a float, -inf for zero, safe for huge exponents."""
    if not x:
        return -math.inf
    return float(mpmath.log(abs(x)))


def _log_mag(ctx, x) -> float:
    """Cheap upper estimate of max(0, log|x|)."""
    if not x:
        return 0.0
    return max(0.0, (ctx.mag(x) + 1) * LN2)


def _series_sum(j, z, tau, prec, ctl):
    ctx = prec.ctx
    q = ctx.expj(ctx.pi * tau)
    log_q = -math.pi * float(tau.imag)  # log|q|
    y = abs(float(z.imag))
    log_target = math.log(prec.target)

    if j in (3, 4):
        sign = 1 if j == 3 else -1
        e_plus = ctx.expj(2 * z)
        e_minus = 1 / e_plus
        q2 = q * q
        total = ctx.mpc(1)
        log_big = 0.0
        qk = ctx.mpc(1)  # q**(k*k)
        step = q  # q**(2k-1)
        ep = em = ctx.mpc(1)
        s = 1
        for k in range(1, ctl.max_terms + 1):
            qk *= step
            step *= q2
            ep *= e_plus
            em *= e_minus
            s *= sign
            total += s * qk * (ep + em)
            log_big = max(log_big, _log_mag(ctx, total))
            nxt = k + 1
            log_bound = nxt * nxt * log_q + 2 * nxt * y + LN2
            ratio = (2 * nxt + 1) * log_q + 2 * y
            if ratio < -LN2 and log_bound + LN2 < log_target + log_big:
                return total
        raise ConvergenceError(
            f"theta{j} series did not converge in {ctl.max_terms} terms (|Im z|={y:.3g}, Im tau={float(tau.imag):.3g})"
        )

    # j = 1, 2: pair k with -k-1, both carry q**(k(k+1)).
    e1 = ctx.expj(z)
    e_plus = e1 * e1
    e_minus = 1 / e_plus
    q2 = q * q
    ep = e1
    em = 1 / e1
    qk = ctx.mpc(1)  # q**(k(k+1))
    step = q2  # q**(2k+2)
    total = ep - em if j == 1 else ep + em
    log_big = _log_mag(ctx, total)
    s = 1
    for k in range(1, ctl.max_terms + 1):
        qk *= step
        step *= q2
        ep *= e_plus
        em *= e_minus
        if j == 1:
            s = -s
            total += s * qk * (ep - em)
        else:
            total += qk * (ep + em)
        log_big = max(log_big, _log_mag(ctx, total))
        nxt = k + 1
        log_bound = nxt * (nxt + 1) * log_q + (2 * nxt + 1) * y + LN2
        ratio = (2 * nxt + 2) * log_q + 2 * y
        if ratio < -LN2 and log_bound + LN2 < log_target + log_big:
            break
    else:
        raise ConvergenceError(
            f"theta{j} series did not converge in {ctl.max_terms} terms (|Im z|={y:.3g}, Im tau={float(tau.imag):.3g})"
        )
    pref = _qpow(ctx, tau, ctx.mpf(0.25))
    if j == 1:
        return ctx.mpc(0, -1) * pref * total
    return pref * total


def theta_series(j: int, z, p: ModularParam, prec: Precision, ctl: SeriesControl = DEFAULT_CONTROL):
    """theta_j(z | tau) summed from the bilateral Fourier series."""
    _check_index(j)
    ctx = prec.ctx
    return _series_sum(j, ctx.mpc(to_mp(z, ctx)), ctx.mpc(p.tau), prec, ctl)


@functools.lru_cache(maxsize=4096)
def _cached_null(j, tau, bits, max_terms):
    prec = Precision(bits)
    return _series_sum(j, prec.ctx.mpc(0), tau, prec, SeriesControl(max_terms))


def theta_null(j: int, p: ModularParam, prec: Precision, ctl: SeriesControl = DEFAULT_CONTROL):
    """theta_j(0 | tau); memoised per (j, tau, bits)."""
    _check_index(j)
    if j == 1:
        return prec.ctx.mpc(0)
    return _cached_null(j, prec.ctx.mpc(p.tau), prec.bits, ctl.max_terms)


def q_pochhammer(a, nome, prec: Precision, ctl: SeriesControl = DEFAULT_CONTROL):
    """(a; nome)_inf = prod_{n>=0} (1 - a nome**n).

    Stops at the first n with |a| |nome|**n / (1 - |nome|) below the
    truncation target (a bound on the log of the omitted factors).
    """
    ctx = prec.ctx
    a = ctx.convert(to_mp(a, ctx))
    nome = ctx.convert(to_mp(nome, ctx))
    mod = float(abs(nome))
    if not mod < 1:
        raise DomainError(f"|nome| must be < 1, got {mod}")
    if not a:
        return ctx.mpc(1)
    log_nome = _log_abs(nome)
    log_a = _log_abs(a)
    log_tail_den = math.log1p(-mod)
    log_target = math.log(prec.target)
    result = ctx.mpc(1)
    term = a
    for n in range(ctl.max_terms):
        result *= 1 - term
        if not result:
            return result
        term *= nome
        # factor 2 covers |log(1-x)| <= 2|x| once the terms are small
        if log_a + (n + 1) * log_nome - log_tail_den + LN2 < log_target:
            return result
    raise ConvergenceError(f"q-Pochhammer product did not converge in {ctl.max_terms} factors")


def theta_product(j: int, z, p: ModularParam, prec: Precision, ctl: SeriesControl = DEFAULT_CONTROL):
    """theta_j(z | tau) from the Jacobi product expansions.

    theta_4 has no displayed product; it is evaluated as theta_3(z + pi/2).
    """
    _check_index(j)
    ctx = prec.ctx
    z = ctx.mpc(to_mp(z, ctx))
    tau = ctx.mpc(p.tau)
    if j == 4:
        return theta_product(3, z + ctx.pi / 2, p, prec, ctl)
    q = ctx.expj(ctx.pi * tau)
    q2 = q * q
    e2 = ctx.expj(2 * z)
    base = q_pochhammer(q2, q2, prec, ctl)
    if j == 3:
        return base * q_pochhammer(-q * e2, q2, prec, ctl) * q_pochhammer(-q / e2, q2, prec, ctl)
    pref = 2 * _qpow(ctx, tau, ctx.mpf(0.25))
    if j == 1:
        return (
            pref * ctx.sin(z) * base
            * q_pochhammer(q2 * e2, q2, prec, ctl)
            * q_pochhammer(q2 / e2, q2, prec, ctl)
        )
    return (
        pref * ctx.cos(z) * base
        * q_pochhammer(-q2 * e2, q2, prec, ctl)
        * q_pochhammer(-q2 / e2, q2, prec, ctl)
    )


def shift_half_pi(z, p: ModularParam, prec: Precision):
    """(theta_1(z + pi/2), theta_2(z))."""
    ctx = prec.ctx
    z = ctx.mpc(to_mp(z, ctx))
    return theta_series(1, z + ctx.pi / 2, p, prec), theta_series(2, z, p, prec)


def shift_half_period(z, p: ModularParam, prec: Precision):
    """(theta_1(z + (pi + pi tau)/2), q**(-1/4) e**(-iz) theta_3(z)).

    Compare the two relative to the larger magnitude: q**(-1/4) amplifies
    absolute error.
    """
    ctx = prec.ctx
    z = ctx.mpc(to_mp(z, ctx))
    tau = ctx.mpc(p.tau)
    lhs = theta_series(1, z + (ctx.pi + ctx.pi * tau) / 2, p, prec)
    rhs = _qpow(ctx, tau, ctx.mpf(-0.25)) * ctx.expj(-z) * theta_series(3, z, p, prec)
    return lhs, rhs


def theta1_quarter_pi(p: ModularParam, prec: Precision):
    """(theta_1(pi/4) by series, sqrt(2) q**(1/4) (q^2;q^2)_inf (-q^4;q^4)_inf)."""
    ctx = prec.ctx
    tau = ctx.mpc(p.tau)
    q = ctx.expj(ctx.pi * tau)
    q2 = q * q
    q4 = q2 * q2
    lhs = theta_series(1, ctx.pi / 4, p, prec)
    rhs = ctx.sqrt(2) * _qpow(ctx, tau, ctx.mpf(0.25)) * q_pochhammer(q2, q2, prec) * q_pochhammer(-q4, q4, prec)
    return lhs, rhs


def doubling_identities(z, p: ModularParam, prec: Precision):
    """((2 th2(z|2t) th3(z|2t), th2(0|t) th2(z|t)), (th2(0|t)**2, 2 th2(0|2t) th3(0|2t)))."""
    from .params import Transform, at_precision, transform

    p = at_precision(p, prec)
    p2 = transform(p, Transform.DOUBLE)
    null2 = theta_null(2, p, prec)
    first = (
        2 * theta_series(2, z, p2, prec) * theta_series(3, z, p2, prec),
        null2 * theta_series(2, z, p, prec),
    )
    second = (null2 * null2, 2 * theta_null(2, p2, prec) * theta_null(3, p2, prec))
    return first, second


def triple_product_check(z, nome, prec: Precision):
    """(sum (-1)^n nome^(n(n-1)/2) z^n, (nome;nome)(z;nome)(nome/z;nome))."""
    ctx = prec.ctx
    z = ctx.mpc(to_mp(z, ctx))
    nome = ctx.mpc(to_mp(nome, ctx))
    if not z:
        raise DomainError("triple product requires z != 0")
    mod = float(abs(nome))
    if not mod < 1:
        raise DomainError(f"|nome| must be < 1, got {mod}")
    log_nome = _log_abs(nome)
    log_z = _log_abs(z)
    log_target = math.log(prec.target)

    def one_side(first, factor_of_n, log_base):
        # terms t_0 = first, t_{n+1} = t_n * factor_of_n(n); |t_{n+1}/t_n| = exp(log_base + n log|nome|)
        total = ctx.mpc(0)
        log_big = 0.0
        t = first
        for n in range(DEFAULT_CONTROL.max_terms):
            total += t
            log_big = max(log_big, _log_mag(ctx, total))
            t *= factor_of_n(n)
            log_ratio = log_base + (n + 1) * log_nome
            if t == 0 or (log_ratio < -LN2 and _log_abs(t) + LN2 < log_target + log_big):
                return total
        raise ConvergenceError("triple product bilateral sum did not converge")

    npow = [ctx.mpc(1)]

    def pw(n):
        while len(npow) <= n:
            npow.append(npow[-1] * nome)
        return npow[n]

    # n >= 0: t_{n+1} = t_n * (-z nome^n); n = -m, m >= 1: t_{-(m+1)} = t_{-m} * (-nome^(m+1)/z)
    forward = one_side(ctx.mpc(1), lambda n: -z * pw(n), log_z)
    backward = one_side(-nome / z, lambda m: -pw(m + 2) / z, log_nome - log_z + log_nome)
    lhs = forward + backward
    rhs = q_pochhammer(nome, nome, prec) * q_pochhammer(z, nome, prec) * q_pochhammer(nome / z, nome, prec)
    return lhs, rhs
