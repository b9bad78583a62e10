"""Randomized numerical verification of identity declarations.

Sampling is reproducible: every (identity, tau) pair gets its own
``random.Random`` seeded from a hash of the global seed, the identity name
and the tau index, so results do not depend on execution order or on which
other identities are in the run.
"""

from __future__ import annotations

import hashlib
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import __version__
from .dsl.ast import IdentityDecl
from .dsl.corpus import builtin_corpus
from .dsl.evaluator import EvalOptions, Evaluator
from .errors import ConvergenceError, DomainError, GridError, PoleError, ThetaqError
from .params import Precision, from_real_nome, make_param, parse_complex, to_mp
from .qformal.checks import DEFAULT_ORDERS, EXACT_CHECKS, ExactReport
from .qtrig import EvalForm, QTrigBase, ccs_q, cos_q, sin_q, ssn_q

DEFAULT_TAUS = ("1.2i", "0.3+1.1i")
MAX_ATTEMPTS = 10


@dataclass(frozen=True)
class SampleStrategy:
    count: int = 20
    real_box: Tuple[float, float] = (-2.0, 2.0)
    imag_box: Tuple[float, float] = (-0.2, 0.2)
    seed: int = 42
    tau_set: Tuple[str, ...] = DEFAULT_TAUS
    real_only: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tau_set", tuple(self.tau_set))
        object.__setattr__(self, "real_box", tuple(self.real_box))
        object.__setattr__(self, "imag_box", tuple(self.imag_box))
        if not isinstance(self.count, int) or self.count < 1:
            raise DomainError(f"sample count must be a positive integer, got {self.count!r}")
        for label, (lo, hi) in (("real", self.real_box), ("imaginary", self.imag_box)):
            if not lo < hi:
                raise DomainError(f"{label} sampling box needs lo < hi, got ({lo}, {hi})")
        if not -(2**63) <= self.seed < 2**64:
            raise DomainError("seed must fit in 64 bits")
        if not self.tau_set:
            raise DomainError("tau_set is empty")
        for t in self.tau_set:
            make_param(t)  # raises DomainError when Im(tau) <= 0

    def rng(self, name: str, tau_index: int) -> random.Random:
        digest = hashlib.sha256(f"{self.seed}\x00{name}\x00{tau_index}".encode()).digest()
        return random.Random(int.from_bytes(digest[:8], "big"))

    def draw(self, rng: random.Random) -> complex:
        re = rng.uniform(*self.real_box)
        im = 0.0 if self.real_only else rng.uniform(*self.imag_box)
        return complex(re, im)


def format_sample(z: complex) -> str:
    """Exact decimal form of a drawn double-precision sample, parseable by parse_complex."""
    if z.imag == 0:
        return repr(z.real)
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def format_value(ctx, x, digits) -> str:
    def real(v):
        return ctx.nstr(v, digits, strip_zeros=False, min_fixed=-4, max_fixed=4)

    if isinstance(x, ctx.mpc):
        if x.imag == 0:
            return real(x.real)
        im = x.imag
        return f"{real(x.real)}{'-' if im < 0 else '+'}{real(abs(im))}i"
    return real(x)


@dataclass(frozen=True)
class ResidualRecord:
    """One evaluated sample.  Magnitudes are decimal strings at working precision."""

    name: str
    tau: str
    index: int
    env: Tuple[Tuple[str, str], ...]
    abs_lhs: str
    abs_rhs: str
    abs_residual: str
    rel_residual: str


@dataclass(frozen=True)
class Skip:
    index: int
    kind: str
    reason: str


@dataclass(frozen=True)
class IdentityResult:
    """Summary of one identity at one tau."""

    name: str
    tau: str
    passed: bool
    requested: int
    evaluated: int
    max_rel: str
    max_abs: str
    worst_index: Optional[int]
    worst_env: Tuple[Tuple[str, str], ...]
    skipped: Tuple[Skip, ...] = ()
    diagnosis: str = ""
    records: Tuple[ResidualRecord, ...] = field(default=(), compare=False, repr=False)
    elapsed: float = field(default=0.0, compare=False)


def _relative(ctx, lhs, rhs):
    a, b = abs(lhs), abs(rhs)
    d = abs(lhs - rhs)
    return a, b, d, d / max(ctx.one, a, b)


def run_identity(
    d: IdentityDecl,
    s: SampleStrategy = SampleStrategy(),
    prec: Precision = Precision(),
    tol: float = 1e-25,
    tau: Union[int, str] = 0,
    options: EvalOptions = EvalOptions(),
) -> IdentityResult:
    """Sample ``d`` at the ``tau`` entry of ``s.tau_set`` (index or literal value)."""
    start = time.perf_counter()
    if isinstance(tau, int):
        tau_index, tau_text = tau, s.tau_set[tau]
    else:
        tau_text = tau
        tau_index = s.tau_set.index(tau) if tau in s.tau_set else len(s.tau_set)
    ctx = prec.ctx
    ev = Evaluator(make_param(parse_complex(tau_text, prec), prec), prec, options)
    rng = s.rng(d.name, tau_index)
    digits = prec.digits

    records: List[ResidualRecord] = []
    skips: List[Skip] = []
    worst = None
    max_abs = ctx.zero
    diagnosis = ""
    for i in range(s.count):
        last_error = None
        for _attempt in range(MAX_ATTEMPTS):
            sample = {v: s.draw(rng) for v in d.vars}
            try:
                lhs, rhs = ev.sides(d, sample)
            except (PoleError, ConvergenceError) as err:
                last_error = err
                continue
            except ThetaqError as err:
                diagnosis = f"sample {i}: {type(err).__name__}: {err}"
                last_error = None
                break
            a, b, dd, rel = _relative(ctx, lhs, rhs)
            env = tuple((v, format_sample(sample[v])) for v in d.vars)
            records.append(
                ResidualRecord(d.name, tau_text, i, env, format_value(ctx, a, digits), format_value(ctx, b, digits),
                               format_value(ctx, dd, digits), format_value(ctx, rel, digits))
            )
            if worst is None or rel > worst[0]:
                worst = (rel, i, env)
            max_abs = max(max_abs, dd)
            break
        else:
            skips.append(Skip(i, type(last_error).__name__, str(last_error)))
        if diagnosis:
            break

    if not diagnosis and len(skips) * 2 > s.count:
        diagnosis = f"{len(skips)} of {s.count} samples skipped (most recent: {skips[-1].kind})"
    max_rel = worst[0] if worst else ctx.zero
    passed = not diagnosis and worst is not None and max_rel <= tol
    if not diagnosis and worst is not None and not passed:
        diagnosis = f"max relative residual exceeds tolerance {tol!r} at sample {worst[1]}"
    return IdentityResult(
        name=d.name,
        tau=tau_text,
        passed=passed,
        requested=s.count,
        evaluated=len(records),
        max_rel=format_value(ctx, max_rel, digits),
        max_abs=format_value(ctx, max_abs, digits),
        worst_index=worst[1] if worst else None,
        worst_env=worst[2] if worst else (),
        skipped=tuple(skips),
        diagnosis=diagnosis,
        records=tuple(records),
        elapsed=time.perf_counter() - start,
    )


@dataclass(frozen=True)
class VerificationReport:
    seed: int
    bits: int
    tol: float
    version: str
    samples: int
    tau_set: Tuple[str, ...]
    real_box: Tuple[float, float]
    imag_box: Tuple[float, float]
    numeric: Tuple[IdentityResult, ...]
    exact: Tuple[ExactReport, ...] = ()

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.numeric) and all(e.passed for e in self.exact)

    @property
    def failures(self) -> List[str]:
        out = [f"{r.name} @ tau={r.tau}" for r in self.numeric if not r.passed]
        out += [e.name for e in self.exact if not e.passed]
        return out


def _identity_task(args):
    d, s, prec, tol, tau_index, options = args
    return run_identity(d, s, prec, tol, tau_index, options)


def run_corpus(
    s: SampleStrategy = SampleStrategy(),
    prec: Precision = Precision(),
    tol: float = 1e-25,
    extra: Iterable[Sequence[IdentityDecl]] = (),
    options: EvalOptions = EvalOptions(),
    jobs: int = 1,
    exact_orders: Optional[Mapping[str, int]] = None,
    include_builtin: bool = True,
    only: Optional[Iterable[str]] = None,
) -> VerificationReport:
    """Verify the built-in corpus plus any extra declaration lists.

    ``extra`` holds already-parsed files (reading them is the caller's job).
    Results are ordered by (corpus position, tau index) whatever ``jobs`` is.
    ``exact_orders=None`` skips the exact section; pass ``DEFAULT_ORDERS`` to
    run every exact check.
    """
    decls: List[IdentityDecl] = list(builtin_corpus()) if include_builtin else []
    for group in extra:
        decls.extend(group)
    if only is not None:
        wanted = set(only)
        unknown = wanted - {d.name for d in decls}
        if unknown:
            raise DomainError(f"unknown identity name(s): {', '.join(sorted(unknown))}")
        decls = [d for d in decls if d.name in wanted]
    tasks = [(d, s, prec, tol, k, options) for d in decls for k in range(len(s.tau_set))]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            numeric = list(pool.map(_identity_task, tasks))
    else:
        numeric = [_identity_task(t) for t in tasks]
    exact = tuple(run_exact(exact_orders)) if exact_orders is not None else ()
    return VerificationReport(
        seed=s.seed,
        bits=prec.bits,
        tol=tol,
        version=__version__,
        samples=s.count,
        tau_set=s.tau_set,
        real_box=s.real_box,
        imag_box=s.imag_box,
        numeric=tuple(numeric),
        exact=exact,
    )


def run_exact(orders: Optional[Mapping[str, int]] = None) -> List[ExactReport]:
    """Run the named exact checks (all of them at default orders when ``orders`` is None)."""
    orders = dict(DEFAULT_ORDERS if orders is None else orders)
    unknown = set(orders) - set(EXACT_CHECKS)
    if unknown:
        raise DomainError(f"unknown exact check(s): {', '.join(sorted(unknown))}; known: {', '.join(EXACT_CHECKS)}")
    reports = []
    for name in EXACT_CHECKS:
        if name not in orders:
            continue
        try:
            reports.append(EXACT_CHECKS[name](orders[name]))
        except GridError as err:
            raise GridError(f"exact check {name!r}: {err}") from err
    return reports


# --- q -> 1 limits ------------------------------------------------------------

_LIMIT_FUNCS: Dict[str, Tuple[Callable, Callable]] = {
    "sin": (sin_q, lambda ctx, w: ctx.sin(w)),
    "cos": (cos_q, lambda ctx, w: ctx.cos(w)),
    "ccs": (ccs_q, lambda ctx, w: ctx.one),
    "ssn": (ssn_q, lambda ctx, w: ctx.one),
}


@dataclass(frozen=True)
class LimitRow:
    q: str
    value: str
    reference: str
    deviation: str
    bits: int
    resolved: bool = True


@dataclass(frozen=True)
class LimitTable:
    target: str
    angle: str
    bits: int
    rows: Tuple[LimitRow, ...]
    strictly_decreasing: bool
    non_increasing: bool
    all_zero: bool
    tol: Optional[float] = None

    @property
    def passed(self) -> bool:
        """Identity targets must hold to ``tol`` at every q; functions must converge."""
        if self.tol is not None:
            return all(float(r.deviation) <= self.tol for r in self.rows)
        return self.converging

    @property
    def resolved(self) -> bool:
        return all(r.resolved for r in self.rows)

    @property
    def converging(self) -> bool:
        """Resolved deviations shrink strictly, or all vanish (e.g. sin at w = 0)."""
        return (self.strictly_decreasing and self.resolved) or self.all_zero


def _real(x, ctx):
    v = to_mp(x, ctx)
    if isinstance(v, ctx.mpc):
        if v.imag != 0:
            raise DomainError(f"expected a real number, got {x!r}")
        v = v.real
    return v


def _function_deviation(name, q, w, prec, form, max_bits):
    """|f_q(w) - f(w)|, raising the precision until the deviation is resolved.

    Near q = 1 the deviation shrinks like exp(-pi^2 / ln(1/q)), far below the
    rounding level of a modest working precision, so a value within a few
    ulps of the reference is recomputed with twice as many bits.
    """
    qfunc, classical = _LIMIT_FUNCS[name]
    bits = prec.bits
    while True:
        cur = Precision(bits)
        ctx = cur.ctx
        wv = to_mp(w, ctx)
        value = qfunc(wv, QTrigBase(from_real_nome(_real(q, ctx), cur)), form, cur)
        ref = classical(ctx, wv)
        dev = abs(value - ref)
        noise = max(ctx.one, abs(ref)) * ctx.ldexp(1, 12 - bits)
        if dev > noise or bits * 2 > max_bits:
            return value, ref, dev, cur, dev > noise
        bits *= 2


def limit_sweep(
    target: Union[str, IdentityDecl],
    qs: Sequence = (0.5, 0.8, 0.9),
    w="0.37",
    prec: Precision = Precision(),
    form: EvalForm = EvalForm.THETA,
    env: Optional[Mapping[str, object]] = None,
    max_bits: int = 1024,
    tol: float = 1e-25,
) -> LimitTable:
    """Deviation from the classical value at each real nome in ``qs``.

    For a function name (sin, cos, ccs, ssn) the deviation is
    ``|f_q(w) - f(w)|`` with f(w) = 1 for ccs and ssn; precision is raised per
    row (up to ``max_bits``) until the deviation stands above rounding noise.
    A deviation still at noise level after that is marked unresolved.
    For an identity the deviation is the relative residual of lhs against
    rhs at ``prec``, with every free variable set from ``env`` (default: the
    k-th variable gets ``(k + 1) * w``).
    """
    ctx = prec.ctx
    qvals = [_real(q, ctx) for q in qs]
    for a, b in zip(qvals, qvals[1:]):
        if not a < b:
            raise DomainError("limit sweep nomes must be strictly increasing")
    rows = []
    devs = []
    for q, qv in zip(qs, qvals):
        if isinstance(target, IdentityDecl):
            wv = to_mp(w, ctx)
            values = env or {v: (k + 1) * wv for k, v in enumerate(target.vars)}
            ev = Evaluator(from_real_nome(qv, prec), prec, EvalOptions(sincos_form=form))
            value, ref = ev.sides(target, values)
            dev = _relative(ctx, value, ref)[3]
            used, resolved = prec, True
        else:
            if target not in _LIMIT_FUNCS:
                raise DomainError(f"unknown limit target {target!r}; expected one of {', '.join(_LIMIT_FUNCS)}")
            value, ref, dev, used, resolved = _function_deviation(target, q if isinstance(q, str) else str(q), w,
                                                        prec, form, max_bits)
        devs.append(dev)
        uctx, digits = used.ctx, prec.digits
        rows.append(LimitRow(str(q), format_value(uctx, value, digits), format_value(uctx, ref, digits),
                             format_value(uctx, dev, digits), used.bits, resolved))
    pairs = list(zip(devs, devs[1:]))
    return LimitTable(
        target=target.name if isinstance(target, IdentityDecl) else target,
        angle=str(w),
        bits=prec.bits,
        rows=tuple(rows),
        strictly_decreasing=all(b < a for a, b in pairs),
        non_increasing=all(b <= a for a, b in pairs),
        all_zero=all(d == 0 for d in devs),
        tol=tol if isinstance(target, IdentityDecl) else None,
    )


LIMIT_FUNCTIONS = tuple(_LIMIT_FUNCS)
