"""JSON and text rendering of verification reports.

Rendering is pure (string in, string out); ``emit_report`` only writes to a
stream it is handed, so opening files stays with the caller.
"""

from __future__ import annotations

import json
import sys
from typing import IO, Optional

from .harness import IdentityResult, LimitTable, Skip, VerificationReport
from .qformal.checks import ExactReport

FORMATS = ("json", "text")


def _num(value: str) -> dict:
    return {"value": value, "float": float(value)}


def _identity_to_dict(r: IdentityResult, timing: bool) -> dict:
    d = {
        "name": r.name,
        "tau": r.tau,
        "passed": r.passed,
        "requested": r.requested,
        "evaluated": r.evaluated,
        "max_rel": _num(r.max_rel),
        "max_abs": _num(r.max_abs),
        "worst": None if r.worst_index is None else {"index": r.worst_index, "env": dict(r.worst_env)},
        "skipped": [{"index": s.index, "kind": s.kind, "reason": s.reason} for s in r.skipped],
        "diagnosis": r.diagnosis,
    }
    if timing:
        d["elapsed"] = round(r.elapsed, 6)
    return d


def _identity_from_dict(d: dict) -> IdentityResult:
    worst = d["worst"]
    return IdentityResult(
        name=d["name"],
        tau=d["tau"],
        passed=d["passed"],
        requested=d["requested"],
        evaluated=d["evaluated"],
        max_rel=d["max_rel"]["value"],
        max_abs=d["max_abs"]["value"],
        worst_index=None if worst is None else worst["index"],
        worst_env=() if worst is None else tuple(worst["env"].items()),
        skipped=tuple(Skip(s["index"], s["kind"], s["reason"]) for s in d["skipped"]),
        diagnosis=d["diagnosis"],
        elapsed=d.get("elapsed", 0.0),
    )


def report_to_dict(r: VerificationReport, timing: bool = False) -> dict:
    return {
        "meta": {
            "seed": r.seed,
            "bits": r.bits,
            "tol": repr(r.tol),
            "version": r.version,
            "samples": r.samples,
            "tau_set": list(r.tau_set),
            "real_box": list(r.real_box),
            "imag_box": list(r.imag_box),
            "passed": r.passed,
        },
        "numeric": [_identity_to_dict(x, timing) for x in r.numeric],
        "exact": [e.to_dict(timing) for e in r.exact],
    }


def report_from_dict(d: dict) -> VerificationReport:
    m = d["meta"]
    return VerificationReport(
        seed=m["seed"],
        bits=m["bits"],
        tol=float(m["tol"]),
        version=m["version"],
        samples=m["samples"],
        tau_set=tuple(m["tau_set"]),
        real_box=tuple(m["real_box"]),
        imag_box=tuple(m["imag_box"]),
        numeric=tuple(_identity_from_dict(x) for x in d["numeric"]),
        exact=tuple(ExactReport.from_dict(e) for e in d["exact"]),
    )


def report_from_json(text: str) -> VerificationReport:
    return report_from_dict(json.loads(text))


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _witness_text(e: ExactReport) -> str:
    w = e.witness
    if w is None:
        return ""
    mono = "*".join(f"{k}^{v}" for k, v in w.monomial.items() if v) or "1"
    return f"first nonzero in {w.part}: {e.variable}^{w.qexp} {mono} coeff {w.value}"


def render_text(r: VerificationReport, timing: bool = False) -> str:
    lines = [
        f"thetaq {r.version}  seed={r.seed}  bits={r.bits}  tol={r.tol!r}  samples={r.samples}",
        f"tau set: {', '.join(r.tau_set)}",
        "",
    ]
    if r.numeric:
        name_w = max(len(x.name) for x in r.numeric)
        tau_w = max(len(x.tau) for x in r.numeric)
        head = f"{'':4}  {'identity':<{name_w}}  {'tau':<{tau_w}}  {'max rel residual':>16}  {'n':>3}  {'skip':>4}"
        lines.append(head + ("  seconds" if timing else ""))
        for x in r.numeric:
            row = (f"{_status(x.passed)}  {x.name:<{name_w}}  {x.tau:<{tau_w}}  "
                   f"{float(x.max_rel):>16.3e}  {x.evaluated:>3}  {len(x.skipped):>4}")
            if timing:
                row += f"  {x.elapsed:7.3f}"
            if x.diagnosis:
                row += f"  ({x.diagnosis})"
            lines.append(row)
    if r.exact:
        lines.append("")
        name_w = max(len(e.name) for e in r.exact)
        for e in r.exact:
            row = f"{_status(e.passed)}  exact {e.name:<{name_w}}  order {e.order:>3}  terms {e.terms_checked:>2}"
            if timing:
                row += f"  {e.elapsed:7.3f}s"
            if e.witness:
                row += "  " + _witness_text(e)
            lines.append(row)
    failures = r.failures
    lines.append("")
    total = len(r.numeric) + len(r.exact)
    lines.append(f"{_status(r.passed)}: {total - len(failures)}/{total} checks passed")
    return "\n".join(lines) + "\n"


def render_report(r: VerificationReport, format: str = "json", timing: bool = False) -> str:
    if format == "json":
        return json.dumps(report_to_dict(r, timing), indent=2) + "\n"
    if format == "text":
        return render_text(r, timing)
    raise ValueError(f"unknown report format {format!r}; expected one of {FORMATS}")


def emit_report(r: VerificationReport, format: str = "json", dest: Optional[IO[str]] = None,
                timing: bool = False) -> None:
    (dest or sys.stdout).write(render_report(r, format, timing))


def render_exact(reports, format: str = "text", timing: bool = False) -> str:
    if format == "json":
        return json.dumps({"exact": [e.to_dict(timing) for e in reports]}, indent=2) + "\n"
    lines = []
    for e in reports:
        row = f"{_status(e.passed)}  {e.name}  order {e.order}  ({', '.join(e.parts)})"
        if timing:
            row += f"  {e.elapsed:.3f}s"
        if e.witness:
            row += "\n      " + _witness_text(e)
        lines.append(row)
    return "\n".join(lines) + "\n"


def limit_to_dict(t: LimitTable) -> dict:
    return {
        "target": t.target,
        "angle": t.angle,
        "bits": t.bits,
        "passed": t.passed,
        "converging": t.converging,
        "rows": [
            {"q": row.q, "value": row.value, "reference": row.reference,
             "deviation": _num(row.deviation), "bits": row.bits, "resolved": row.resolved}
            for row in t.rows
        ],
    }


def render_limits(tables, format: str = "text") -> str:
    if format == "json":
        return json.dumps({"limits": [limit_to_dict(t) for t in tables]}, indent=2) + "\n"
    lines = []
    for t in tables:
        lines.append(f"{_status(t.passed)}  {t.target} at w={t.angle}")
        for row in t.rows:
            flag = "" if row.resolved else "  (below resolution)"
            lines.append(f"      q={row.q:<6} deviation {float(row.deviation):.6e}  [{row.bits} bits]{flag}")
    return "\n".join(lines) + "\n"
