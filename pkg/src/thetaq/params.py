"""Modular parameter, precision policy and the one definition of q**w."""

from __future__ import annotations

import enum
import functools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath.ctx_mp import MPContext

from .errors import DomainError


@functools.lru_cache(maxsize=None)
def _context(bits: int) -> MPContext:
    ctx = MPContext()
    ctx.prec = bits
    return ctx


# eps = 2**(16 - bits) is held as a double, which bounds the precision
MIN_BITS, MAX_BITS = 53, 1024


@dataclass(frozen=True)
class Precision:
    """Binary working precision plus the acceptance tolerance that goes with it.

    Every numerical routine takes a ``Precision`` explicitly; there is no
    module-level precision state.
    """

    bits: int = 128
    eps: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if not isinstance(self.bits, int) or not MIN_BITS <= self.bits <= MAX_BITS:
            raise DomainError(f"precision bits must be an integer in [{MIN_BITS}, {MAX_BITS}], got {self.bits!r}")
        if self.eps is None:
            object.__setattr__(self, "eps", math.ldexp(1.0, 16 - self.bits))
        if not 0.0 < self.eps < 1.0:
            raise DomainError(f"eps must lie in (0, 1), got {self.eps!r}")

    @property
    def ctx(self) -> MPContext:
        return _context(self.bits)

    @property
    def target(self) -> float:
        """Truncation target for series and products (full working precision)."""
        return math.ldexp(1.0, -self.bits)

    @property
    def digits(self) -> int:
        return self.ctx.dps


DEFAULT_PRECISION = Precision(128)


_COMPLEX_RE = re.compile(
    r"""^\s*(?:
        (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
        (?:\s*(?P<sign>[+-])\s*(?P<im>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij])?
      | (?P<imonly>[+-]?(?:\d+\.?\d*|\.\d+)?(?:[eE][+-]?\d+)?)[ij]
    )\s*$""",
    re.VERBOSE,
)


def parse_complex(text: str, prec: Precision = DEFAULT_PRECISION):
    """Parse ``'0.3+1.1i'``, ``'1.2i'``, ``'-i'``, ``'2'`` into an mpc at ``prec``.

    Decimal digits are converted at the working precision, never via float.
    """
    ctx = prec.ctx
    m = _COMPLEX_RE.match(text)
    if not m:
        raise DomainError(f"cannot parse complex number {text!r}")
    if m.group("re") is not None:
        re_part = ctx.mpf(m.group("re"))
        if m.group("sign") is None:
            return ctx.mpc(re_part, 0)
        im_txt = m.group("im") or "1"
        im_part = ctx.mpf(im_txt)
        if m.group("sign") == "-":
            im_part = -im_part
        return ctx.mpc(re_part, im_part)
    im_txt = m.group("imonly")
    if im_txt in ("", "+"):
        im_txt = "1"
    elif im_txt == "-":
        im_txt = "-1"
    return ctx.mpc(0, ctx.mpf(im_txt))


def to_mp(value, ctx: MPContext):
    """Convert numbers (including Fraction and decimal strings) into ``ctx``."""
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / value.denominator
    if isinstance(value, str):
        return parse_complex(value, Precision(ctx.prec))
    return ctx.convert(value)


@dataclass(frozen=True)
class ModularParam:
    """Half-period ratio ``tau`` (Im tau > 0) and its nome ``q = exp(i*pi*tau)``."""

    tau: object
    q: object
    prec: Precision

    def __repr__(self):
        return f"ModularParam(tau={self.tau}, bits={self.prec.bits})"


def make_param(tau, prec: Precision = DEFAULT_PRECISION) -> ModularParam:
    ctx = prec.ctx
    t = ctx.mpc(to_mp(tau, ctx))
    if not t.imag > 0:
        raise DomainError(f"Im(tau) must be positive, got tau={t}")
    return ModularParam(t, ctx.expj(ctx.pi * t), prec)


def from_real_nome(q, prec: Precision = DEFAULT_PRECISION) -> ModularParam:
    """Parameter with purely imaginary tau whose nome is the real ``q`` in (0, 1)."""
    ctx = prec.ctx
    qv = to_mp(q, ctx)
    if isinstance(qv, type(ctx.mpc(0))):
        if qv.imag != 0:
            raise DomainError(f"real nome required, got {q!r}")
        qv = qv.real
    if not 0 < qv < 1:
        raise DomainError(f"real nome must lie in (0, 1), got {q!r}")
    return make_param(ctx.mpc(0, -ctx.ln(qv) / ctx.pi), prec)


def _qpow(ctx, tau, w):
    return ctx.expj(ctx.pi * tau * w)


def q_pow(p: ModularParam, w):
    """``q**w`` defined as ``exp(i*pi*tau*w)``; never a principal-branch power."""
    ctx = p.prec.ctx
    return _qpow(ctx, p.tau, to_mp(w, ctx))


class Transform(enum.Enum):
    S = "S"
    DOUBLE = "Double"
    HALF = "Half"


def transform(p: ModularParam, kind) -> ModularParam:
    kind = Transform(kind) if not isinstance(kind, Transform) else kind
    if kind is Transform.S:
        tau = -1 / p.tau
    elif kind is Transform.DOUBLE:
        tau = 2 * p.tau
    else:
        tau = p.tau / 2
    return make_param(tau, p.prec)


def with_base(p: ModularParam, m: int) -> ModularParam:
    """Parameter of the nome ``q**m`` (tau scaled by the positive integer m)."""
    if m < 1:
        raise DomainError(f"base exponent must be >= 1, got {m}")
    if m == 1:
        return p
    return make_param(m * p.tau, p.prec)


def at_precision(p: ModularParam, prec: Precision) -> ModularParam:
    if p.prec == prec:
        return p
    return make_param(p.tau, prec)
