"""Command-line interface.

Exit status: 0 when every check passed, 1 when any check failed and 2 for
usage errors, unreadable files and malformed input.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from . import __version__
from .dsl.corpus import builtin_corpus, corpus_by_name, load_qid, render_qid, write_shipped_qid
from .dsl.evaluator import EvalOptions, eval_expr
from .dsl.parser import parse_expr
from .errors import ThetaqError
from .harness import DEFAULT_TAUS, LIMIT_FUNCTIONS, SampleStrategy, format_value, limit_sweep, run_corpus, run_exact
from .params import Precision, from_real_nome, make_param, parse_complex
from .qformal.checks import DEFAULT_ORDERS
from .qtrig import EvalForm
from .report import render_exact, render_limits, render_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _order_pair(text: str):
    name, sep, value = text.partition("=")
    if not sep or not value.strip().isdigit():
        raise argparse.ArgumentTypeError(f"expected NAME=ORDER, got {text!r}")
    return name.strip(), int(value)


def _env_pairs(text: str):
    out = {}
    for item in filter(None, (p.strip() for p in text.split(","))):
        name, sep, value = item.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected name=value, got {item!r}")
        out[name.strip()] = value.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thetaq", description="Verify theta-function and q-trigonometric identities.")
    p.add_argument("--version", action="version", version=f"thetaq {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate one expression")
    e.add_argument("--expr", required=True)
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--tau", help="half-period ratio, e.g. 1.2i or 0.3+1.1i")
    g.add_argument("--q", help="real nome in (0, 1)")
    e.add_argument("--env", type=_env_pairs, default={}, help="x=0.3,y=1+0.2i")
    e.add_argument("--bits", type=int, default=128)
    e.add_argument("--form", choices=[f.value for f in EvalForm], default=EvalForm.PRODUCT.value,
                   help="evaluation of sinq/cosq")

    v = sub.add_parser("verify", help="sample every corpus identity numerically")
    v.add_argument("--corpus", action="append", default=[], metavar="FILE.qid")
    v.add_argument("--no-builtin", action="store_true", help="check only the --corpus files")
    v.add_argument("--only", action="append", metavar="NAME", help="restrict to these identities")
    v.add_argument("--bits", type=int, default=128)
    v.add_argument("--tol", type=float, default=1e-25)
    v.add_argument("--samples", type=int, default=20)
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--tau", action="append", metavar="TAU")
    v.add_argument("--real-only", action="store_true", help="sample real points only")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--out", metavar="PATH")
    v.add_argument("--sincos-form", choices=[f.value for f in EvalForm], default=EvalForm.PRODUCT.value)
    v.add_argument("--product-quotients", action="store_true",
                   help="evaluate ccsq/ssnq through their product quotients")
    v.add_argument("--no-exact", action="store_true", help="skip the exact q-series checks")
    v.add_argument("--timing", action="store_true", help="include wall-clock times (breaks byte-identity)")
    v.add_argument("--jobs", type=int, default=1)

    x = sub.add_parser("exact", help="run the exact truncated q-series checks")
    x.add_argument("--order", action="append", type=_order_pair, default=[], metavar="NAME=N")
    x.add_argument("--only", action="store_true", help="run just the checks named by --order")
    x.add_argument("--format", choices=("json", "text"), default="text")
    x.add_argument("--out", metavar="PATH")
    x.add_argument("--timing", action="store_true")

    lim = sub.add_parser("limits", help="q -> 1 sweeps against the classical functions")
    lim.add_argument("--q", action="append", metavar="Q")
    lim.add_argument("--angle", default="0.37")
    lim.add_argument("--bits", type=int, default=128)
    lim.add_argument("--function", action="append", choices=LIMIT_FUNCTIONS)
    lim.add_argument("--identity", action="append", metavar="NAME")
    lim.add_argument("--tol", type=float, default=1e-25)
    lim.add_argument("--format", choices=("json", "text"), default="text")

    c = sub.add_parser("corpus", help="inspect the identity corpus")
    csub = c.add_subparsers(dest="corpus_command", required=True)
    cl = csub.add_parser("list", help="names, variables and tags")
    cl.add_argument("--corpus", action="append", default=[], metavar="FILE.qid")
    cd = csub.add_parser("dump", help="print the corpus in .qid syntax")
    cd.add_argument("--write-shipped", action="store_true", help="regenerate the packaged corpus.qid")
    return p


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_files(paths: Sequence[str]):
    groups = []
    for path in paths:
        try:
            groups.append(load_qid(path))
        except ThetaqError as err:
            raise UsageError(f"{path}: {err}") from err
    return groups


def _cmd_eval(a) -> int:
    prec = Precision(a.bits)
    p = from_real_nome(a.q, prec) if a.q is not None else make_param(parse_complex(a.tau, prec), prec)
    try:
        expr = parse_expr(a.expr)
    except ThetaqError as err:
        raise UsageError(f"--expr: {err}") from err
    env = {k: parse_complex(val, prec) for k, val in a.env.items()}
    value = eval_expr(expr, env, p, prec, EvalOptions(sincos_form=EvalForm(a.form)))
    print(format_value(prec.ctx, value, prec.digits))
    return EXIT_OK


def _cmd_verify(a) -> int:
    strategy = SampleStrategy(
        count=a.samples,
        seed=a.seed,
        tau_set=tuple(a.tau) if a.tau else DEFAULT_TAUS,
        real_only=a.real_only,
    )
    report = run_corpus(
        strategy,
        Precision(a.bits),
        a.tol,
        extra=_load_files(a.corpus),
        options=EvalOptions(EvalForm(a.sincos_form), a.product_quotients),
        jobs=a.jobs,
        exact_orders=None if a.no_exact else DEFAULT_ORDERS,
        include_builtin=not a.no_builtin,
        only=a.only,
    )
    _write(render_report(report, a.format, a.timing), a.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_exact(a) -> int:
    orders = {} if a.only else dict(DEFAULT_ORDERS)
    orders.update(dict(a.order))
    reports = run_exact(orders)
    _write(render_exact(reports, a.format, a.timing), a.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_limits(a) -> int:
    prec = Precision(a.bits)
    qs = a.q or ["0.5", "0.8", "0.9"]
    targets: List = list(a.function or ([] if a.identity else ["sin", "cos"]))
    if a.identity:
        known = corpus_by_name()
        for name in a.identity:
            if name not in known:
                raise UsageError(f"unknown identity {name!r}")
            targets.append(known[name])
    tables = [limit_sweep(t, qs, a.angle, prec, tol=a.tol) for t in targets]
    sys.stdout.write(render_limits(tables, a.format))
    return EXIT_OK if all(t.passed for t in tables) else EXIT_FAIL


def _cmd_corpus(a) -> int:
    if a.corpus_command == "dump":
        if a.write_shipped:
            print(write_shipped_qid())
        else:
            sys.stdout.write(render_qid())
        return EXIT_OK
    decls = list(builtin_corpus())
    for group in _load_files(a.corpus):
        decls.extend(group)
    width = max(len(d.name) for d in decls)
    for d in decls:
        print(f"{d.name:<{width}}  vars: {', '.join(d.vars) or '-':<22}  tags: {', '.join(d.tags)}")
    return EXIT_OK


_COMMANDS = {"eval": _cmd_eval, "verify": _cmd_verify, "exact": _cmd_exact, "limits": _cmd_limits,
             "corpus": _cmd_corpus}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for usage errors
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ThetaqError, OSError) as err:
        print(f"thetaq {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
