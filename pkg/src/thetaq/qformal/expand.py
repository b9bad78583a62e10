"""Formal expansions of theta functions and Pochhammer products on the Q-grid.

``Q = q**(1/4)``, so theta_1 and theta_2 carry ``Q**(4k(k+1)+1)`` and theta_3,
theta_4 carry ``Q**(4k**2)``.  Arguments are integer combinations of the angle
symbols plus ``t`` quarter turns (``t*pi/2``) plus ``h`` half periods
(``h*pi*tau/2``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence, Union

from ..errors import DomainError, GridError
from .gaussian import GaussianRational, i_power
from .series import LaurentPoly, QSeries

TauScale = Union[int, Fraction]
_SCALES = {Fraction(1), Fraction(2), Fraction(1, 2)}


def _arg_vector(symbols: Sequence[str], arg) -> tuple:
    if isinstance(arg, Mapping):
        unknown = set(arg) - set(symbols)
        if unknown:
            raise DomainError(f"unknown symbols {sorted(unknown)}")
        return tuple(int(arg.get(s, 0)) for s in symbols)
    vec = tuple(int(c) for c in arg)
    if len(vec) != len(symbols):
        raise DomainError(f"argument vector {vec} does not match symbols {tuple(symbols)}")
    return vec


def _k_range(exponent, order):
    """All integers k with exponent(k) <= order, for an upward quadratic in k."""
    # walk out from the minimiser in both directions
    ks = range(-4 * abs(order) - 64, 4 * abs(order) + 65)
    best = min(ks, key=exponent)
    out = []
    k = best
    while exponent(k) <= order:
        out.append(k)
        k += 1
    k = best - 1
    while exponent(k) <= order:
        out.append(k)
        k -= 1
    return sorted(out)


def theta_qseries(
    j: int,
    arg,
    shift: int = 0,
    tau_scale: TauScale = 1,
    order: int = 20,
    symbols: Sequence[str] = ("z",),
    half_tau: int = 0,
) -> QSeries:
    """theta_j(arg + shift*pi/2 + half_tau*pi*tau'/2 | tau') with tau' = tau_scale*tau.

    ``arg`` is an integer vector (or symbol -> int mapping) over ``symbols``.
    Raises GridError when tau_scale = 1/2 would produce an odd Q-exponent.
    """
    if j not in (1, 2, 3, 4):
        raise DomainError(f"theta index must be 1..4, got {j!r}")
    scale = Fraction(tau_scale)
    if scale not in _SCALES:
        raise DomainError(f"tau_scale must be 1, 2 or 1/2, got {tau_scale}")
    symbols = tuple(symbols)
    c = _arg_vector(symbols, arg)
    h = half_tau

    if j in (1, 2):
        # exponent of Q at scale 1: 4k(k+1)+1 plus the half-period factor q**((2k+1)h/2)
        base = lambda k: 4 * k * (k + 1) + 1 + 2 * (2 * k + 1) * h  # noqa: E731
        freq = lambda k: 2 * k + 1  # noqa: E731
    else:
        base = lambda k: 4 * k * k + 4 * k * h  # noqa: E731
        freq = lambda k: 2 * k  # noqa: E731

    def scaled(k):
        e = base(k) * scale
        if e.denominator != 1:
            raise GridError(f"theta{j} at tau_scale {scale}: exponent {e} leaves the integer Q-grid")
        return int(e)

    coeffs = {}
    ks = _k_range(lambda k: base(k) * scale, order)
    for k in ks:
        e = scaled(k)
        f = freq(k)
        coef = i_power(f * shift)
        if j == 1:
            coef = coef * GaussianRational(0, -1) * (-1) ** (k % 2)
        elif j == 4:
            coef = coef * (-1) ** (k % 2)
        mono = tuple(f * ci for ci in c)
        poly = LaurentPoly.monomial(mono, coef)
        coeffs[e] = coeffs[e] + poly if e in coeffs else poly
    return QSeries(symbols, order, coeffs)


def qpoch_series(symbols: Sequence[str], order: int, coeff, start: int, step: int, mono=None) -> QSeries:
    """prod_{n>=0} (1 - coeff * Q**(start + n*step) * e^{i mono}) truncated at ``order``.

    Requires step > 0 and start >= 0 so omitted factors are 1 modulo Q**(order+1).
    """
    if step <= 0 or start < 0:
        raise DomainError("Pochhammer expansion needs step > 0 and start >= 0")
    symbols = tuple(symbols)
    mono = tuple(mono) if mono is not None else (0,) * len(symbols)
    result = QSeries.one(symbols, order)
    n = 0
    while start + n * step <= order:
        factor = QSeries.one(symbols, order) - QSeries.term(symbols, order, start + n * step, mono, coeff)
        result = result * factor
        n += 1
    return result


# named kinds, exponents in Q = q**(1/4)
POCHHAMMER_KINDS = {
    "q2_q2": (1, 8, 8),  # (q^2; q^2)
    "neg_q4_q4": (-1, 16, 16),  # (-q^4; q^4)
    "q_q2": (1, 4, 8),  # (q; q^2)
    "neg_q_q2": (-1, 4, 8),  # (-q; q^2)
    "neg_q2_q2": (-1, 8, 8),  # (-q^2; q^2)
    "q4_q4": (1, 16, 16),  # (q^4; q^4)
}


def pochhammer_qseries(kind: str, order: int, symbols: Sequence[str] = ()) -> QSeries:
    try:
        coeff, start, step = POCHHAMMER_KINDS[kind]
    except KeyError:
        raise DomainError(f"unknown Pochhammer kind {kind!r}; known: {sorted(POCHHAMMER_KINDS)}") from None
    return qpoch_series(symbols, order, coeff, start, step)


def theta1_quarter_pi_squared(order: int, symbols: Sequence[str] = ()) -> QSeries:
    """theta_1(pi/4 | tau)**2 from the doubled Definition-1 sum.

    e^{(2k+1)i pi/4} e^{(2m+1)i pi/4} = i^(k+m+1), so every coefficient is a
    Gaussian integer.
    """
    symbols = tuple(symbols)
    zero = (0,) * len(symbols)
    ks = _k_range(lambda k: 4 * k * (k + 1) + 1, order)
    coeffs = {}
    for k in ks:
        for m in ks:
            e = 4 * k * (k + 1) + 4 * m * (m + 1) + 2
            if e > order:
                continue
            # (-i)^2 (-1)^(k+m) i^(k+m+1)
            c = -1 * (-1) ** ((k + m) % 2) * i_power(k + m + 1)
            poly = LaurentPoly.monomial(zero, c)
            coeffs[e] = coeffs[e] + poly if e in coeffs else poly
    return QSeries(symbols, order, coeffs)


def triple_sum_series(order: int, symbol: str = "z") -> QSeries:
    """sum_n (-1)^n nome^(n(n-1)/2) z^n with the nome as expansion variable.

    z is encoded as e^{i z}: the monomial exponent is n.
    """
    coeffs = {}
    for n in _k_range(lambda n: n * (n - 1) // 2, order):
        e = n * (n - 1) // 2
        poly = LaurentPoly.monomial((n,), (-1) ** (n % 2))
        coeffs[e] = coeffs[e] + poly if e in coeffs else poly
    return QSeries((symbol,), order, coeffs)
