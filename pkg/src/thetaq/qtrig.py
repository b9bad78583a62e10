"""Gosper's q-sine and q-cosine, the quotients ccs_q and ssn_q, and Pi_q.

Every function takes the angle ``w`` (so ``sin_q(pi/2) == 1``) and can be
evaluated two ways: from Gosper's Pochhammer quotient (``PRODUCT``) or as a
theta quotient at the S-transformed parameter (``THETA``).
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

from .errors import DomainError, PoleError
from .params import ModularParam, Precision, Transform, _qpow, at_precision, to_mp, transform, with_base
from .theta import q_pochhammer, theta_null, theta_series


class EvalForm(enum.Enum):
    PRODUCT = "product"
    THETA = "theta"


@dataclass(frozen=True)
class QTrigBase:
    """The nome ``q**base_exp`` built on ``param``; base_exp=2 means sin_{q^2} etc."""

    param: ModularParam
    base_exp: int = 1

    def __post_init__(self):
        if not isinstance(self.base_exp, int) or self.base_exp < 1:
            raise DomainError(f"base exponent must be a positive integer, got {self.base_exp!r}")

    def raised(self, k: int) -> "QTrigBase":
        return QTrigBase(self.param, self.base_exp * k)


def _scaled(b: QTrigBase, prec: Precision) -> ModularParam:
    return with_base(at_precision(b.param, prec), b.base_exp)


@functools.lru_cache(maxsize=1024)
def _dual_cached(tau, m, bits):
    prec = Precision(bits)
    p = with_base(ModularParam(tau, prec.ctx.expj(prec.ctx.pi * tau), prec), m)
    return transform(p, Transform.S)


def dual_param(b: QTrigBase, prec: Precision) -> ModularParam:
    """tau' = -1/(m tau) for the nome q**m."""
    return _dual_cached(prec.ctx.mpc(b.param.tau), b.base_exp, prec.bits)


def _gosper_product(w, b, prec, shift):
    # shift = 0 for sin_q, 1 for cos_q; z = w/pi
    ctx = prec.ctx
    tau = _scaled(b, prec).tau
    z = ctx.mpc(to_mp(w, ctx)) / ctx.pi
    nome = _qpow(ctx, tau, 2)
    den = q_pochhammer(_qpow(ctx, tau, 1), nome, prec)
    if shift == 0:
        num = q_pochhammer(_qpow(ctx, tau, 2 - 2 * z), nome, prec) * q_pochhammer(_qpow(ctx, tau, 2 * z), nome, prec)
        expo = (z - ctx.mpf(0.5)) ** 2
    else:
        num = q_pochhammer(_qpow(ctx, tau, 1 - 2 * z), nome, prec) * q_pochhammer(_qpow(ctx, tau, 1 + 2 * z), nome, prec)
        expo = z * z
    return num / (den * den) * _qpow(ctx, tau, expo)


def _theta_quotient(j, null_j, w, b, prec):
    tp = dual_param(b, prec)
    return theta_series(j, w, tp, prec) / theta_null(null_j, tp, prec)


def sin_q(w, b: QTrigBase, form: EvalForm = EvalForm.PRODUCT, prec: Precision = Precision()):
    if EvalForm(form) is EvalForm.PRODUCT:
        return _gosper_product(w, b, prec, 0)
    return _theta_quotient(1, 2, w, b, prec)


def cos_q(w, b: QTrigBase, form: EvalForm = EvalForm.PRODUCT, prec: Precision = Precision()):
    if EvalForm(form) is EvalForm.PRODUCT:
        return _gosper_product(w, b, prec, 1)
    return _theta_quotient(2, 2, w, b, prec)


def _pole_guard(den, prec, what):
    if abs(den) < math.sqrt(prec.eps):
        raise PoleError(f"{what}: denominator {float(abs(den)):.3g} below sqrt(eps); use the theta form")


def ccs_q(w, b: QTrigBase, form: EvalForm = EvalForm.THETA, prec: Precision = Precision()):
    """cos_{q^2}(w) / cos_q(w); the theta form theta_3(w|tau')/theta_3(0|tau') is entire."""
    if EvalForm(form) is EvalForm.PRODUCT:
        den = cos_q(w, b, EvalForm.PRODUCT, prec)
        _pole_guard(den, prec, "ccs_q")
        return cos_q(w, b.raised(2), EvalForm.PRODUCT, prec) / den
    return _theta_quotient(3, 3, w, b, prec)


def ssn_q(w, b: QTrigBase, form: EvalForm = EvalForm.THETA, prec: Precision = Precision()):
    """sin_{q^2}(w) / sin_q(w); the theta form theta_4(w|tau')/theta_3(0|tau') is entire."""
    if EvalForm(form) is EvalForm.PRODUCT:
        den = sin_q(w, b, EvalForm.PRODUCT, prec)
        _pole_guard(den, prec, "ssn_q")
        return sin_q(w, b.raised(2), EvalForm.PRODUCT, prec) / den
    return _theta_quotient(4, 3, w, b, prec)


def pi_q(b: QTrigBase, prec: Precision = Precision()):
    """q**(1/4) (q^2;q^2)^2 / (q;q^2)^2 at the nome q**m."""
    ctx = prec.ctx
    tau = _scaled(b, prec).tau
    q = _qpow(ctx, tau, 1)
    q2 = q * q
    ratio = q_pochhammer(q2, q2, prec) / q_pochhammer(q, q2, prec)
    return _qpow(ctx, tau, ctx.mpf(0.25)) * ratio * ratio
