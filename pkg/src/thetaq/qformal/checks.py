"""Exact, coefficient-by-coefficient verification of theta-level identities.

An identity is a list of signed terms, each a product of factors, whose sum
must be the zero series.  Keeping the terms as data makes mutation testing
(flip one sign, swap one index) a one-liner.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import DomainError, GridError
from .expand import qpoch_series, theta1_quarter_pi_squared, theta_qseries, triple_sum_series
from .gaussian import GaussianRational
from .series import QSeries


@dataclass(frozen=True)
class ThetaFactor:
    j: int
    arg: Tuple[int, ...]
    shift: int = 0
    tau_scale: Fraction = Fraction(1)
    half_tau: int = 0

    def expand(self, symbols, order):
        return theta_qseries(self.j, self.arg, self.shift, self.tau_scale, order, symbols, self.half_tau)

    def describe(self, symbols):
        arg = _fmt_arg(symbols, self.arg)
        extra = []
        if self.shift:
            extra.append(f"{self.shift}*pi/2")
        if self.half_tau:
            extra.append(f"{self.half_tau}*pi*tau/2")
        if extra:
            arg = " + ".join([arg] + extra)
        tau = "tau" if self.tau_scale == 1 else f"{self.tau_scale}*tau"
        return f"theta{self.j}({arg}|{tau})"


@dataclass(frozen=True)
class PochFactor:
    """prod_n (1 - coeff Q**(start + n step) e^{i mono})."""

    coeff: int
    start: int
    step: int
    mono: Optional[Tuple[int, ...]] = None

    def expand(self, symbols, order):
        return qpoch_series(symbols, order, self.coeff, self.start, self.step, self.mono)

    def describe(self, symbols):
        m = "" if not self.mono or not any(self.mono) else "*" + _fmt_mono(symbols, self.mono)
        sign = "-" if self.coeff == -1 else "" if self.coeff == 1 else f"{self.coeff}*"
        return f"({sign}Q^{self.start}{m}; Q^{self.step})"


@dataclass(frozen=True)
class MonomialFactor:
    qexp: int
    mono: Optional[Tuple[int, ...]] = None

    def expand(self, symbols, order):
        mono = self.mono if self.mono is not None else (0,) * len(symbols)
        return QSeries.term(symbols, order, self.qexp, mono)

    def describe(self, symbols):
        m = "" if not self.mono or not any(self.mono) else "*" + _fmt_mono(symbols, self.mono)
        return f"Q^{self.qexp}{m}"


@dataclass(frozen=True)
class QuarterPiSquaredFactor:
    def expand(self, symbols, order):
        return theta1_quarter_pi_squared(order, symbols)

    def describe(self, symbols):
        return "theta1(pi/4|tau)^2"


@dataclass(frozen=True)
class TripleSumFactor:
    def expand(self, symbols, order):
        return triple_sum_series(order, symbols[0])

    def describe(self, symbols):
        return f"sum (-1)^n nome^(n(n-1)/2) {symbols[0]}^n"


def _fmt_mono(symbols, mono):
    return "*".join(f"{s}^{k}" for s, k in zip(symbols, mono) if k) or "1"


def _fmt_arg(symbols, arg):
    parts = []
    for s, c in zip(symbols, arg):
        if not c:
            continue
        coef = "" if abs(c) == 1 else f"{abs(c)}*"
        parts.append(("-" if c < 0 else "+") + coef + s)
    if not parts:
        return "0"
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


@dataclass(frozen=True)
class Term:
    coeff: int
    factors: Tuple[object, ...]


@dataclass(frozen=True)
class ExactIdentity:
    name: str
    symbols: Tuple[str, ...]
    terms: Tuple[Term, ...]
    variable: str = "Q"
    min_order: int = 1
    even_order: bool = False

    def flip(self, index: int) -> "ExactIdentity":
        """Copy with the sign of term ``index`` negated (mutation testing)."""
        terms = list(self.terms)
        terms[index] = replace(terms[index], coeff=-terms[index].coeff)
        return replace(self, terms=tuple(terms))

    def replace_factor(self, term: int, position: int, factor) -> "ExactIdentity":
        terms = list(self.terms)
        fs = list(terms[term].factors)
        fs[position] = factor
        terms[term] = replace(terms[term], factors=tuple(fs))
        return replace(self, terms=tuple(terms))

    def residual(self, order: int) -> QSeries:
        total = QSeries.zero(self.symbols, order)
        cache: Dict[object, QSeries] = {}
        for term in self.terms:
            prod = QSeries.one(self.symbols, order).scale(term.coeff)
            for f in term.factors:
                if f not in cache:
                    cache[f] = f.expand(self.symbols, order)
                prod = prod * cache[f]
            total = total + prod
        return total

    def describe(self) -> str:
        out = []
        for t in self.terms:
            sign = "+" if t.coeff > 0 else "-"
            mag = "" if abs(t.coeff) == 1 else f"{abs(t.coeff)}*"
            out.append(f"{sign} {mag}" + " * ".join(f.describe(self.symbols) for f in t.factors))
        return " ".join(out) + " == 0"


@dataclass(frozen=True)
class Witness:
    part: str
    qexp: int
    monomial: Dict[str, int]
    value: str

    def to_dict(self):
        return {"part": self.part, "qexp": self.qexp, "monomial": dict(self.monomial), "value": self.value}


@dataclass(frozen=True)
class ExactReport:
    name: str
    passed: bool
    order: int
    variable: str
    parts: Tuple[str, ...]
    witness: Optional[Witness] = None
    terms_checked: int = 0
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self, timing: bool = False):
        d = {
            "name": self.name,
            "passed": self.passed,
            "order": self.order,
            "variable": self.variable,
            "parts": list(self.parts),
            "terms_checked": self.terms_checked,
            "witness": self.witness.to_dict() if self.witness else None,
        }
        if timing:
            d["elapsed"] = round(self.elapsed, 6)
        return d

    @classmethod
    def from_dict(cls, d):
        w = d.get("witness")
        return cls(
            name=d["name"],
            passed=d["passed"],
            order=d["order"],
            variable=d["variable"],
            parts=tuple(d["parts"]),
            witness=Witness(w["part"], w["qexp"], dict(w["monomial"]), w["value"]) if w else None,
            terms_checked=d.get("terms_checked", 0),
            elapsed=d.get("elapsed", 0.0),
        )


def check_identities(name: str, identities: Sequence[ExactIdentity], order: int) -> ExactReport:
    """Expand every identity to ``order`` and report the first nonzero coefficient, if any."""
    start = time.perf_counter()
    witness = None
    checked = 0
    for ident in identities:
        if order < ident.min_order:
            raise DomainError(f"{ident.name}: order must be >= {ident.min_order}, got {order}")
        if ident.even_order and order % 2:
            raise GridError(f"{ident.name}: order must be even on the doubled grid, got {order}")
    for ident in identities:
        res = ident.residual(order)
        checked += len(ident.terms)
        if witness is None and not res.is_zero():
            e, mono, c = res.first_nonzero()
            witness = Witness(ident.name, e, dict(zip(ident.symbols, mono)), str(c))
    return ExactReport(
        name=name,
        passed=witness is None,
        order=order,
        variable=identities[0].variable,
        parts=tuple(i.name for i in identities),
        witness=witness,
        terms_checked=checked,
        elapsed=time.perf_counter() - start,
    )


# --- identity definitions -------------------------------------------------

def _th(j, *arg, **kw):
    return ThetaFactor(j, tuple(arg), **kw)


def riemann_L() -> ExactIdentity:
    # symbols u, u1, u2, u3
    return ExactIdentity(
        "riemann_L",
        ("u", "u1", "u2", "u3"),
        (
            Term(1, (_th(1, 1, 1, 0, 0), _th(1, 1, -1, 0, 0), _th(1, 0, 0, 1, 1), _th(1, 0, 0, 1, -1))),
            Term(1, (_th(1, 1, 0, 1, 0), _th(1, 1, 0, -1, 0), _th(1, 0, 1, 0, 1), _th(1, 0, -1, 0, 1))),
            Term(1, (_th(1, 1, 0, 0, 1), _th(1, 1, 0, 0, -1), _th(1, 0, 1, 1, 0), _th(1, 0, 1, -1, 0))),
        ),
        min_order=4,
    )


def _four_term(name, jj, null_j) -> ExactIdentity:
    """null * th_jj(x-y) th1(a+b+x+y) th1(a-b)
       - th1(a+x) th1(a+y) th_jj(b+x) th_jj(b+y) + th1(b+x) th1(b+y) th_jj(a+x) th_jj(a+y)."""
    # symbols a, b, x, y
    return ExactIdentity(
        name,
        ("a", "b", "x", "y"),
        (
            Term(1, (_th(null_j, 0, 0, 0, 0), _th(jj, 0, 0, 1, -1), _th(1, 1, 1, 1, 1), _th(1, 1, -1, 0, 0))),
            Term(-1, (_th(1, 1, 0, 1, 0), _th(1, 1, 0, 0, 1), _th(jj, 0, 1, 1, 0), _th(jj, 0, 1, 0, 1))),
            Term(1, (_th(1, 0, 1, 1, 0), _th(1, 0, 1, 0, 1), _th(jj, 1, 0, 1, 0), _th(jj, 1, 0, 0, 1))),
        ),
        min_order=1,
    )


def prop_t3() -> ExactIdentity:
    return _four_term("t3", 3, 3)


def prop_t2() -> ExactIdentity:
    return _four_term("t2", 2, 2)


def prop_t4_ssn() -> ExactIdentity:
    """theta_4 companion of t3; its nome-S image is the corrected ssn_q identity."""
    return _four_term("t4_ssn", 4, 4)


def doubling_6_4() -> ExactIdentity:
    two = Fraction(2)
    return ExactIdentity(
        "doubling_6_4",
        ("z",),
        (
            Term(2, (_th(2, 1, tau_scale=two), _th(3, 1, tau_scale=two))),
            Term(-1, (_th(2, 0), _th(2, 1))),
        ),
        even_order=True,
        min_order=2,
    )


def doubling_6_5() -> ExactIdentity:
    two = Fraction(2)
    return ExactIdentity(
        "doubling_6_5",
        (),
        (
            Term(1, (ThetaFactor(2, ()), ThetaFactor(2, ()))),
            Term(-2, (ThetaFactor(2, (), tau_scale=two), ThetaFactor(3, (), tau_scale=two))),
        ),
        even_order=True,
        min_order=2,
    )


def quarter_pi_squared() -> ExactIdentity:
    q2 = PochFactor(1, 8, 8)
    neg_q4 = PochFactor(-1, 16, 16)
    return ExactIdentity(
        "quarter_pi_squared",
        (),
        (
            Term(1, (QuarterPiSquaredFactor(),)),
            Term(-2, (MonomialFactor(2), q2, q2, neg_q4, neg_q4)),
        ),
        min_order=2,
    )


def triple_product() -> ExactIdentity:
    return ExactIdentity(
        "triple_product",
        ("z",),
        (
            Term(1, (TripleSumFactor(),)),
            Term(-1, (PochFactor(1, 1, 1), PochFactor(1, 0, 1, (1,)), PochFactor(1, 1, 1, (-1,)))),
        ),
        variable="nome",
        min_order=1,
    )


def shift_half_pi() -> ExactIdentity:
    return ExactIdentity(
        "shift_half_pi",
        ("z",),
        (Term(1, (_th(1, 1, shift=1),)), Term(-1, (_th(2, 1),))),
    )


def shift_half_period() -> ExactIdentity:
    # theta1(z + pi/2 + pi tau/2) = Q^-1 e^{-iz} theta3(z)
    return ExactIdentity(
        "shift_half_period",
        ("z",),
        (Term(1, (_th(1, 1, shift=1, half_tau=1),)), Term(-1, (MonomialFactor(-1, (-1,)), _th(3, 1)))),
    )


def _single(name, ident, order, flip):
    if flip is not None:
        ident = ident.flip(flip)
    return check_identities(name, [ident], order)


def verify_riemann_L(order: int = 40, flip: Optional[int] = None) -> ExactReport:
    return _single("riemann_L", riemann_L(), order, flip)


def verify_prop_t3(order: int = 40, flip: Optional[int] = None) -> ExactReport:
    return _single("t3", prop_t3(), order, flip)


def verify_prop_t2(order: int = 40, flip: Optional[int] = None) -> ExactReport:
    return _single("t2", prop_t2(), order, flip)


def verify_prop_t4_ssn(order: int = 40, flip: Optional[int] = None) -> ExactReport:
    return _single("t4_ssn", prop_t4_ssn(), order, flip)


def verify_doubling(order: int = 60, flip: Optional[Tuple[str, int]] = None) -> ExactReport:
    """Both doubling relations; ``flip=("doubling_6_5", 1)`` mutates one term of one part."""
    parts = [doubling_6_4(), doubling_6_5()]
    if flip is not None:
        parts = [p.flip(flip[1]) if p.name == flip[0] else p for p in parts]
    return check_identities("doubling", parts, order)


def verify_triple_product(order: int = 25, flip: Optional[int] = None) -> ExactReport:
    return _single("triple", triple_product(), order, flip)


def verify_quarter_pi_squared(order: int = 80, flip: Optional[int] = None) -> ExactReport:
    return _single("quarter_pi_squared", quarter_pi_squared(), order, flip)


def verify_shift_half_pi(order: int = 40, flip: Optional[int] = None) -> ExactReport:
    return _single("shift_half_pi", shift_half_pi(), order, flip)


def verify_shift_half_period(order: int = 40, flip: Optional[int] = None) -> ExactReport:
    return _single("shift_half_period", shift_half_period(), order, flip)


EXACT_CHECKS = {
    "riemann_L": verify_riemann_L,
    "t3": verify_prop_t3,
    "t2": verify_prop_t2,
    "doubling": verify_doubling,
    "quarter_pi_squared": verify_quarter_pi_squared,
    "triple": verify_triple_product,
    "t4_ssn": verify_prop_t4_ssn,
    "shift_half_pi": verify_shift_half_pi,
    "shift_half_period": verify_shift_half_period,
}

DEFAULT_ORDERS = {
    "riemann_L": 40,
    "t3": 40,
    "t2": 40,
    "doubling": 60,
    "quarter_pi_squared": 80,
    "triple": 25,
    "t4_ssn": 40,
    "shift_half_pi": 40,
    "shift_half_period": 40,
}

IDENTITY_BUILDERS = {
    "riemann_L": riemann_L,
    "t3": prop_t3,
    "t2": prop_t2,
    "t4_ssn": prop_t4_ssn,
    "doubling_6_4": doubling_6_4,
    "doubling_6_5": doubling_6_5,
    "quarter_pi_squared": quarter_pi_squared,
    "triple": triple_product,
    "shift_half_pi": shift_half_pi,
    "shift_half_period": shift_half_period,
}


def exact_identities() -> List[ExactIdentity]:
    return [build() for build in IDENTITY_BUILDERS.values()]

