"""Numerical evaluation of DSL expressions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

from ..errors import ThetaqError, UnboundVariable
from ..params import ModularParam, Precision, Transform, _qpow, at_precision, to_mp, transform
from ..qtrig import EvalForm, QTrigBase, ccs_q, cos_q, pi_q, sin_q, ssn_q
from ..theta import q_pochhammer, theta_null, theta_series
from . import ast as A

_TRANSFORMS = {"2": Transform.DOUBLE, "1/2": Transform.HALF, "S": Transform.S}


@dataclass(frozen=True)
class EvalOptions:
    """How q-trig calls are evaluated.

    ``product_quotients`` forces ccsq/ssnq through their Pochhammer quotient
    definition instead of the (entire) theta quotient.
    """

    sincos_form: EvalForm = EvalForm.PRODUCT
    product_quotients: bool = False


class Evaluator:
    def __init__(self, p: ModularParam, prec: Precision, options: EvalOptions = EvalOptions()):
        self.prec = prec
        self.ctx = prec.ctx
        self.p = at_precision(p, prec)
        self.options = options
        self._params: Dict[str, ModularParam] = {"1": self.p}

    def param(self, scale) -> ModularParam:
        key = scale or "1"
        if key not in self._params:
            self._params[key] = transform(self.p, _TRANSFORMS[key])
        return self._params[key]

    def __call__(self, e: A.Expr, env: Mapping[str, object]):
        return self.eval(e, env)

    def eval(self, e: A.Expr, env):
        ctx = self.ctx
        if isinstance(e, A.Num):
            return ctx.mpf(e.value.numerator) / e.value.denominator
        if isinstance(e, A.Var):
            try:
                return env[e.name]
            except KeyError:
                err = UnboundVariable(f"unbound variable {e.name!r}")
                err.span = e.span
                raise err from None
        if isinstance(e, A.PiConst):
            return ctx.pi
        if isinstance(e, A.TauConst):
            return self.p.tau
        if isinstance(e, A.ImagUnit):
            return ctx.mpc(0, 1)
        if isinstance(e, A.Neg):
            return -self.eval(e.operand, env)
        if isinstance(e, A.Add):
            return self.eval(e.left, env) + self.eval(e.right, env)
        if isinstance(e, A.Sub):
            return self.eval(e.left, env) - self.eval(e.right, env)
        if isinstance(e, A.Mul):
            return self.eval(e.left, env) * self.eval(e.right, env)
        if isinstance(e, A.Div):
            return self.eval(e.left, env) / self.eval(e.right, env)
        if isinstance(e, A.Pow):
            return self.eval(e.base, env) ** e.exponent
        if isinstance(e, A.Call):
            try:
                return self._call(e, env)
            except ThetaqError as err:
                if err.span is None:
                    err.span = e.span
                raise
        raise TypeError(f"cannot evaluate {type(e).__name__}")

    def _call(self, e: A.Call, env):
        ctx, prec, f = self.ctx, self.prec, e.func
        args = [self.eval(a, env) for a in e.args]
        if f in A.Q_FUNCS:
            b = QTrigBase(self.p, e.base_exp)
            if f == "sinq":
                return sin_q(args[0], b, self.options.sincos_form, prec)
            if f == "cosq":
                return cos_q(args[0], b, self.options.sincos_form, prec)
            form = EvalForm.PRODUCT if self.options.product_quotients else EvalForm.THETA
            if f == "ccsq":
                return ccs_q(args[0], b, form, prec)
            return ssn_q(args[0], b, form, prec)
        if f == "sin":
            return ctx.sin(args[0])
        if f == "cos":
            return ctx.cos(args[0])
        if f == "exp":
            return ctx.exp(args[0])
        if f in A.THETA_FUNCS:
            return theta_series(int(f[-1]), args[0], self.param(e.tau_scale), prec)
        if f in A.NULL_FUNCS:
            return theta_null(int(f[-1]), self.param(e.tau_scale), prec)
        if f == "piq":
            return pi_q(QTrigBase(self.p, e.base_exp), prec)
        if f == "qpow":
            return _qpow(ctx, self.p.tau, args[0])
        if f == "poch":
            return q_pochhammer(args[0], args[1], prec)
        raise TypeError(f"unknown function {f}")

    def bind(self, decl: A.IdentityDecl, free: Mapping[str, object]) -> Dict[str, object]:
        """Environment with free variables converted and where-bindings computed in order."""
        env = {}
        for v in decl.vars:
            if v not in free:
                raise UnboundVariable(f"free variable {v!r} of {decl.name!r} not supplied")
            env[v] = self.ctx.convert(to_mp(free[v], self.ctx))
        for name, expr in decl.where:
            env[name] = self.eval(expr, env)
        return env

    def sides(self, decl: A.IdentityDecl, free: Mapping[str, object]) -> Tuple[object, object]:
        env = self.bind(decl, free)
        return self.eval(decl.lhs, env), self.eval(decl.rhs, env)


def eval_expr(e: A.Expr, env: Mapping[str, object], p: ModularParam, prec: Precision,
              options: EvalOptions = EvalOptions()):
    ctx = prec.ctx
    env = {k: ctx.convert(to_mp(v, ctx)) for k, v in env.items()}
    return Evaluator(p, prec, options).eval(e, env)
