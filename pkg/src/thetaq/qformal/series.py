"""Laurent polynomials in ``e^{i s}`` (one slot per angle symbol) and
truncated series in a single expansion variable ``Q`` with such coefficients.

Exact zeros are dropped eagerly, so multiplication cost tracks true support.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from ..errors import SymbolMismatch
from .gaussian import ONE, ZERO, GaussianRational

Mono = Tuple[int, ...]


def _exact(x, ctx):
    return ctx.mpf(x) if isinstance(x, int) else ctx.mpf(x.numerator) / x.denominator


def _mono_add(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


class LaurentPoly:
    """Map from integer exponent vectors to nonzero Gaussian rationals."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Mono, object]] = None):
        self.nvars = nvars
        clean: Dict[Mono, GaussianRational] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != nvars:
                raise SymbolMismatch(f"monomial {mono} has {len(mono)} slots, expected {nvars}")
            g = GaussianRational.of(c)
            if g:
                clean[tuple(mono)] = g
        self.terms = clean

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, nvars: int, c=1) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): c})

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.nvars != other.nvars:
            raise SymbolMismatch(f"{self.nvars} vs {other.nvars} symbols")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return LaurentPoly._raw(self.nvars, out)

    def __neg__(self):
        return LaurentPoly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            g = GaussianRational.of(other)
            if not g:
                return LaurentPoly(self.nvars)
            return LaurentPoly._raw(self.nvars, {m: c * g for m, c in self.terms.items()})
        self._check(other)
        acc: Dict[Mono, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_add(m1, m2)
                acc[m] = acc.get(m, ZERO) + c1 * c2
        return LaurentPoly._raw(self.nvars, {m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items())

    def evaluate(self, values: Sequence, ctx):
        """Numeric value with each symbol s replaced by the angle ``values[k]``."""
        exps = [ctx.expj(ctx.convert(v)) for v in values]
        total = ctx.mpc(0)
        for mono, c in self.terms.items():
            t = ctx.mpc(_exact(c.re, ctx), _exact(c.im, ctx))
            for e, k in zip(exps, mono):
                if k:
                    t *= e ** k
            total += t
        return total

    def format(self, symbols: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            factors = [f"e^({k}i{s})" if k != 1 else f"e^(i{s})" for s, k in zip(symbols, mono) if k]
            parts.append(f"({c})" + ("*" + "*".join(factors) if factors else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self.terms!r})"


class QSeries:
    """Truncated series sum_{e <= order} coeffs[e] * Q**e.

    ``order`` is the highest exponent known exactly; exponents may be
    negative (Laurent behaviour after half-period shifts).
    """

    __slots__ = ("symbols", "order", "coeffs")

    def __init__(self, symbols: Sequence[str], order: int, coeffs: Optional[Mapping[int, LaurentPoly]] = None):
        self.symbols = tuple(symbols)
        if len(set(self.symbols)) != len(self.symbols):
            raise SymbolMismatch(f"duplicate symbols in {self.symbols}")
        self.order = order
        n = len(self.symbols)
        clean = {}
        for e, p in (coeffs or {}).items():
            if e > order or not p:
                continue
            if p.nvars != n:
                raise SymbolMismatch(f"coefficient has {p.nvars} slots, expected {n}")
            clean[e] = p
        self.coeffs: Dict[int, LaurentPoly] = clean

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, symbols, order):
        return cls(symbols, order)

    @classmethod
    def one(cls, symbols, order):
        return cls.term(symbols, order, 0, (0,) * len(tuple(symbols)), ONE)

    @classmethod
    def term(cls, symbols, order, qexp: int, mono: Sequence[int], c=1):
        symbols = tuple(symbols)
        return cls(symbols, order, {qexp: LaurentPoly.monomial(tuple(mono), c)})

    # structure --------------------------------------------------------------
    @property
    def nvars(self):
        return len(self.symbols)

    @property
    def min_exp(self) -> int:
        """Lowest Q-exponent present (order + 1 for the zero series)."""
        return min(self.coeffs) if self.coeffs else self.order + 1

    def coeff(self, e: int) -> LaurentPoly:
        return self.coeffs.get(e, LaurentPoly(self.nvars))

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self.symbols, min(order, self.order), self.coeffs)

    def _check(self, other: "QSeries"):
        if self.symbols != other.symbols:
            raise SymbolMismatch(f"symbol tables differ: {self.symbols} vs {other.symbols}")

    # ring operations --------------------------------------------------------
    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        order = min(self.order, other.order)
        out = {e: p for e, p in self.coeffs.items() if e <= order}
        for e, p in other.coeffs.items():
            if e > order:
                continue
            s = out[e] + p if e in out else p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return QSeries(self.symbols, order, out)

    def __neg__(self):
        return QSeries(self.symbols, self.order, {e: -p for e, p in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "QSeries":
        g = GaussianRational.of(c)
        return QSeries(self.symbols, self.order, {e: p * g for e, p in self.coeffs.items()})

    def shift(self, qexp: int, mono: Optional[Sequence[int]] = None) -> "QSeries":
        """Multiply by the single term Q**qexp * e^{i mono}."""
        mono = tuple(mono) if mono is not None else (0,) * self.nvars
        out = {}
        for e, p in self.coeffs.items():
            out[e + qexp] = LaurentPoly._raw(self.nvars, {_mono_add(m, mono): c for m, c in p.terms.items()})
        return QSeries(self.symbols, self.order + qexp, out)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        self._check(other)
        v1 = min(self.min_exp, 0) if self.coeffs else 0
        v2 = min(other.min_exp, 0) if other.coeffs else 0
        order = min(self.order + v2, other.order + v1)
        # accumulate real and imaginary parts separately to avoid object churn
        acc: Dict[int, Dict[Mono, list]] = {}
        right = sorted(other.coeffs.items())
        for e1, p1 in self.coeffs.items():
            for e2, p2 in right:
                e = e1 + e2
                if e > order:
                    break
                bucket = acc.setdefault(e, {})
                for m1, c1 in p1.terms.items():
                    r1, i1 = c1.re, c1.im
                    for m2, c2 in p2.terms.items():
                        m = _mono_add(m1, m2)
                        r2, i2 = c2.re, c2.im
                        slot = bucket.get(m)
                        if slot is None:
                            bucket[m] = [r1 * r2 - i1 * i2, r1 * i2 + i1 * r2]
                        else:
                            slot[0] += r1 * r2 - i1 * i2
                            slot[1] += r1 * i2 + i1 * r2
        out = {}
        for e, bucket in acc.items():
            terms = {m: GaussianRational(r, i) for m, (r, i) in bucket.items() if r or i}
            if terms:
                out[e] = LaurentPoly._raw(self.nvars, terms)
        return QSeries(self.symbols, order, out)

    __rmul__ = scale

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            raise ValueError("negative powers of a QSeries are not supported")
        result = QSeries.one(self.symbols, self.order)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.symbols == other.symbols and self.order == other.order and self.coeffs == other.coeffs

    def same_coefficients(self, other: "QSeries", upto: Optional[int] = None) -> bool:
        """Coefficient equality on exponents <= upto (default: the smaller order)."""
        self._check(other)
        n = min(self.order, other.order) if upto is None else upto
        keys = {e for e in self.coeffs if e <= n} | {e for e in other.coeffs if e <= n}
        return all(self.coeff(e) == other.coeff(e) for e in keys)

    def first_nonzero(self):
        """(Q-exponent, monomial, coefficient) of the lowest term, monomials ordered lexicographically."""
        if not self.coeffs:
            return None
        e = min(self.coeffs)
        mono, c = self.coeff(e).sorted_terms()[0]
        return e, mono, c

    def items(self) -> Iterable[Tuple[int, Mono, GaussianRational]]:
        for e in sorted(self.coeffs):
            for mono, c in self.coeffs[e].sorted_terms():
                yield e, mono, c

    def term_count(self) -> int:
        return sum(len(p.terms) for p in self.coeffs.values())

    def evaluate(self, Q, values: Sequence, ctx):
        """Numeric value at Q (a number) and the given angle values."""
        Q = ctx.convert(Q)
        total = ctx.mpc(0)
        for e, p in self.coeffs.items():
            total += p.evaluate(values, ctx) * Q ** e
        return total

    def format(self, var: str = "Q") -> str:
        if not self.coeffs:
            return f"O({var}^{self.order + 1})"
        parts = [f"[{self.coeffs[e].format(self.symbols)}]*{var}^{e}" for e in sorted(self.coeffs)]
        return " + ".join(parts) + f" + O({var}^{self.order + 1})"

    def __repr__(self):
        return f"QSeries(symbols={self.symbols}, order={self.order}, terms={self.term_count()})"


def qs_add(s1: QSeries, s2: QSeries) -> QSeries:
    return s1 + s2


def qs_sub(s1: QSeries, s2: QSeries) -> QSeries:
    return s1 - s2


def qs_mul(s1: QSeries, s2: QSeries) -> QSeries:
    return s1 * s2


def qs_neg(s: QSeries) -> QSeries:
    return -s


def qs_scale(s: QSeries, c) -> QSeries:
    return s.scale(c)
