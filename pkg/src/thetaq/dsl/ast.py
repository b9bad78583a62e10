"""Expression tree for identity declarations.

Spans are carried for error reporting but excluded from equality, so two
trees compare equal iff they have the same structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .lexer import SourceSpan

# functions taking one argument, optionally with a [m] base exponent
Q_FUNCS = ("sinq", "cosq", "ccsq", "ssnq")
CLASSICAL_FUNCS = ("sin", "cos", "exp")
THETA_FUNCS = ("theta1", "theta2", "theta3", "theta4")
NULL_FUNCS = ("thetanull1", "thetanull2", "thetanull3", "thetanull4")
FUNC_NAMES = Q_FUNCS + CLASSICAL_FUNCS + THETA_FUNCS + NULL_FUNCS + ("piq", "qpow", "poch")
BASE_FUNCS = Q_FUNCS + ("piq",)
# tau arguments accepted by theta/thetanull calls
TAU_SCALES = ("1", "2", "1/2", "S")
IMAG_UNIT = "I"


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Num(Expr):
    value: Fraction
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Var(Expr):
    name: str
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class PiConst(Expr):
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class TauConst(Expr):
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ImagUnit(Expr):
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class BinOp(Expr):
    left: Expr
    right: Expr
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)
    symbol = "?"


@dataclass(frozen=True)
class Add(BinOp):
    symbol = "+"


@dataclass(frozen=True)
class Sub(BinOp):
    symbol = "-"


@dataclass(frozen=True)
class Mul(BinOp):
    symbol = "*"


@dataclass(frozen=True)
class Div(BinOp):
    symbol = "/"


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent == 0:
            raise ValueError("power exponent must be a nonzero integer")


@dataclass(frozen=True)
class Call(Expr):
    func: str
    args: Tuple[Expr, ...] = ()
    base_exp: int = 1
    tau_scale: Optional[str] = None
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.func not in FUNC_NAMES:
            raise ValueError(f"unknown function {self.func!r}")
        if self.tau_scale is not None and self.tau_scale not in TAU_SCALES:
            raise ValueError(f"tau scale must be one of {TAU_SCALES}")


@dataclass(frozen=True)
class IdentityDecl:
    name: str
    vars: Tuple[str, ...]
    where: Tuple[Tuple[str, Expr], ...]
    lhs: Expr
    rhs: Expr
    tags: Tuple[str, ...] = ()
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def with_sides(self, lhs: Expr, rhs: Expr) -> "IdentityDecl":
        return IdentityDecl(self.name, self.vars, self.where, lhs, rhs, self.tags, self.span)


def walk(e: Expr):
    """Pre-order traversal."""
    yield e
    if isinstance(e, Neg):
        yield from walk(e.operand)
    elif isinstance(e, BinOp):
        yield from walk(e.left)
        yield from walk(e.right)
    elif isinstance(e, Pow):
        yield from walk(e.base)
    elif isinstance(e, Call):
        for a in e.args:
            yield from walk(a)


def free_names(e: Expr):
    return {n.name for n in walk(e) if isinstance(n, Var)}


def functions_used(e: Expr):
    return {n.func for n in walk(e) if isinstance(n, Call)}
