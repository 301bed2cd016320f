"""Deterministic JSON / CSV / text rendering of classification reports."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence

from .classify import ClassificationReport

CSV_FIELDS = ["p", "d", "n", "line", "i", "j", "l", "m", "outcome", "k", "witnesses",
              "quotient_orders", "table3_matches", "checks_ok", "runtime_ms"]


def failed_checks(rep: ClassificationReport) -> list[str]:
    """Names of checks that came out False; orbit-type table inputs and the excluded-line log are not checks."""
    inputs = {k for k, _ in rep.table3.conditions} if rep.table3 else set()
    return [k for k, v in rep.conditions
            if v is False and k not in inputs and not k.startswith("excluded ")]


def to_json(reports: ClassificationReport | Sequence[ClassificationReport], timing: bool = False,
            extra: dict | None = None) -> str:
    if isinstance(reports, ClassificationReport):
        doc = reports.to_dict(timing)
    else:
        doc = {"reports": [r.to_dict(timing) for r in reports]}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def csv_row(rep: ClassificationReport, timing: bool = False) -> dict:
    d = rep.to_dict(timing)
    return {
        **{k: ("" if d[k] is None else d[k]) for k in ("p", "d", "n", "line", "i", "j", "l", "m", "outcome", "k")},
        "witnesses": ";".join(w["label"] for w in d["witnesses"]),
        "quotient_orders": ";".join(str(o) for o in d["quotient_orders"]),
        "table3_matches": rep.condition("table3 matches orbits"),
        "checks_ok": not failed_checks(rep),
        "runtime_ms": "" if d["runtime_ms"] is None else d["runtime_ms"],
    }


def to_csv(reports: Iterable[ClassificationReport], timing: bool = False, verdict: str | None = None) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(csv_row(r, timing))
    if verdict is not None:
        buf.write(f"# k-range property: {verdict}\n")
    return buf.getvalue()


def to_text(rep: ClassificationReport, timing: bool = False) -> str:
    d = rep.to_dict(timing)
    head = f"p={rep.p} d={rep.d} n={rep.n} line={rep.line}"
    for key in ("i", "j", "l", "m"):
        if d[key] is not None:
            head += f" {key}={d[key]}"
    lines = [head, f"  outcome: {rep.outcome}", f"  k = {rep.k}"]
    if rep.g0_order is not None:
        lines.append(f"  |G_0| = {rep.g0_order}")
    for w, o in zip(rep.witnesses, rep.quotient_orders):
        lines.append(f"  witness {w.label}: quotient K_{o}")
    for lab, comp in rep.excluded_log:
        lines.append(f"  excluded {lab}: {'complete' if comp else 'not complete'}")
    bad = failed_checks(rep)
    lines.append("  checks: " + ("all passed" if not bad else "FAILED " + ", ".join(bad)))
    if timing and rep.runtime_ms is not None:
        lines.append(f"  runtime: {rep.runtime_ms:.1f} ms")
    return "\n".join(lines) + "\n"
