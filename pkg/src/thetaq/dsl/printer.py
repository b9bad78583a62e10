"""Pretty-printer whose output reparses to a structurally equal tree."""

from __future__ import annotations

from typing import Iterable

from . import ast as A

_TAU_TEXT = {"1": "tau", "2": "2*tau", "1/2": "tau/2", "S": "-1/tau"}

# binding strength: sums < products < unary minus < power < atoms
_SUM, _PRODUCT, _UNARY, _POSTFIX, _ATOM = range(1, 6)


def _level(e: A.Expr) -> int:
    if isinstance(e, (A.Add, A.Sub)):
        return _SUM
    if isinstance(e, (A.Mul, A.Div)):
        return _PRODUCT
    if isinstance(e, A.Neg):
        return _UNARY
    if isinstance(e, A.Pow):
        return _POSTFIX
    return _ATOM


def _wrap(e: A.Expr, needed: int) -> str:
    text = pretty(e)
    return f"({text})" if _level(e) < needed else text


def pretty(e: A.Expr) -> str:
    if isinstance(e, A.Num):
        if e.value < 0:
            raise ValueError("negative literals are written as Neg(Num(...))")
        v = e.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(e, A.Var):
        return e.name
    if isinstance(e, A.PiConst):
        return "pi"
    if isinstance(e, A.TauConst):
        return "tau"
    if isinstance(e, A.ImagUnit):
        return A.IMAG_UNIT
    if isinstance(e, A.Neg):
        return "-" + _wrap(e.operand, _POSTFIX)
    if isinstance(e, (A.Add, A.Sub)):
        return f"{_wrap(e.left, _SUM)} {e.symbol} {_wrap(e.right, _PRODUCT)}"
    if isinstance(e, (A.Mul, A.Div)):
        return f"{_wrap(e.left, _PRODUCT)} {e.symbol} {_wrap(e.right, _UNARY)}"
    if isinstance(e, A.Pow):
        return f"{_wrap(e.base, _ATOM)}^{e.exponent}"
    if isinstance(e, A.Call):
        head = e.func + (f"[{e.base_exp}]" if e.base_exp != 1 else "")
        args = [pretty(a) for a in e.args]
        if e.tau_scale is not None:
            args.append(_TAU_TEXT[e.tau_scale])
        return f"{head}({', '.join(args)})"
    raise TypeError(f"cannot print {type(e).__name__}")


def pretty_decl(d: A.IdentityDecl) -> str:
    lines = [f'identity "{d.name}" {{', f"  vars: {', '.join(d.vars)};"]
    if d.where:
        lines.append("  where:")
        lines.extend(f"    {name} = {pretty(e)};" for name, e in d.where)
    lines.append(f"  lhs: {pretty(d.lhs)};")
    lines.append(f"  rhs: {pretty(d.rhs)};")
    if d.tags:
        lines.append(f"  tags: {', '.join(d.tags)};")
    lines.append("}")
    return "\n".join(lines)


def pretty_file(decls: Iterable[A.IdentityDecl], header: str = "") -> str:
    body = "\n\n".join(pretty_decl(d) for d in decls)
    return (header + "\n" if header else "") + body + "\n"
