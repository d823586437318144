"""Report assembly and serialization: aligned text tables and stable JSON.

Output is deterministic byte for byte: fixed key order, no timestamps, the
tool version pinned in a header line. Confusion-matrix metrics carry both a
decimal rendering and the exact rational they were computed from, so reports
diff cleanly and exact values survive a round-trip. Undefined metrics are
rendered as an explicit token, never as 0 or an empty cell.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, IO

from .metrics import (
    METRIC_ORDER,
    EvaluationReport,
    MetricValue,
    Numeric,
    PerClassBreakdown,
    UndefinedReason,
)

SCHEMA_VERSION = 1
PER_CLASS_METRICS = ("precision", "recall", "f1")
_ANSI_HIGHLIGHT = "\x1b[33m"
_ANSI_RESET = "\x1b[0m"


def fraction_decimal(value: Fraction, digits: int = 18) -> str:
    """Exact decimal expansion of a rational, truncated after `digits` places.

    Terminating expansions stop early, so 3/4 renders as "0.75". Truncation
    keeps the function exact and deterministic; the rational itself is always
    serialized alongside as the lossless form.
    """
    sign = "-" if value < 0 else ""
    n, d = abs(value.numerator), value.denominator
    whole, rem = divmod(n, d)
    if rem == 0:
        return f"{sign}{whole}"
    out = [f"{sign}{whole}."]
    for _ in range(digits):
        rem *= 10
        q, rem = divmod(rem, d)
        out.append(str(q))
        if rem == 0:
            break
    return "".join(out)


def color_enabled(stream: IO[str] | None = None) -> bool:
    """ANSI styling is on only for a terminal, and CLFMETRICS_NO_COLOR kills it."""
    if os.environ.get("CLFMETRICS_NO_COLOR"):
        return False
    stream = stream if stream is not None else sys.stdout
    return bool(getattr(stream, "isatty", lambda: False)())


def _text_value(v: MetricValue) -> str:
    if not v.is_defined:
        return f"undef({v.reason.value})"
    return f"{float(v.unwrap()):.4f}"


def _text_exact(v: MetricValue) -> str:
    if v.is_defined and isinstance(v.unwrap(), Fraction):
        return str(v.unwrap())
    return ""


def _json_value(v: MetricValue) -> dict[str, str]:
    if not v.is_defined:
        return {"undefined": v.reason.value}
    value = v.unwrap()
    if isinstance(value, Fraction):
        return {"value": fraction_decimal(value), "rational": str(value)}
    return {"value": repr(value)}


def _parse_json_value(obj: dict[str, str]) -> MetricValue:
    if "undefined" in obj:
        return MetricValue.undefined(UndefinedReason(obj["undefined"]))
    if "rational" in obj:
        return MetricValue.defined(Fraction(obj["rational"]))
    return MetricValue.defined(float(obj["value"]))


def render_text(report: EvaluationReport) -> str:
    """Aligned table at 4 decimal places, with exact rationals in a side column."""
    lines = [
        f"clfmetrics {report.tool_version}",
        f"dataset: {report.dataset}",
        f"classes ({report.k}): {', '.join(report.labels)}",
        f"units: {report.total_units}",
        f"options: mode={report.mode} weights={report.weights_source} "
        f"epsilon={report.epsilon!r} reduce={report.reduce}",
        "",
    ]

    rows = [(name, _text_value(report.metrics[name]), _text_exact(report.metrics[name]))
            for name in report.metrics]
    if report.cross_entropy is not None:
        rows.append(("cross_entropy", f"{report.cross_entropy:.4f}", ""))
    name_w = max(len("metric"), max(len(r[0]) for r in rows))
    value_w = max(len("value"), max(len(r[1]) for r in rows))
    lines.append(f"{'metric':<{name_w}}  {'value':<{value_w}}  exact")
    for name, value, exact in rows:
        lines.append(f"{name:<{name_w}}  {value:<{value_w}}  {exact}".rstrip())

    lines.append("")
    pc = report.per_class
    cells = [
        (label, _text_value(pc.precision[i]), _text_value(pc.recall[i]), _text_value(pc.f1[i]))
        for i, label in enumerate(report.labels)
    ]
    label_w = max(len("class"), max(len(c[0]) for c in cells))
    col_ws = [
        max(len(header), max(len(c[j + 1]) for c in cells))
        for j, header in enumerate(PER_CLASS_METRICS)
    ]
    header = f"{'class':<{label_w}}  " + "  ".join(
        f"{name:<{w}}" for name, w in zip(PER_CLASS_METRICS, col_ws)
    )
    lines.append(header.rstrip())
    for label, prec, rec, f1 in cells:
        row = f"{label:<{label_w}}  " + "  ".join(
            f"{v:<{w}}" for v, w in zip((prec, rec, f1), col_ws)
        )
        lines.append(row.rstrip())
    if report.skipped_classes is not None:
        lines.append("")
        skipped = " ".join(f"{k}={v}" for k, v in report.skipped_classes.items())
        lines.append(f"lenient averaging skipped undefined classes: {skipped}")
    return "\n".join(lines) + "\n"


def _report_to_obj(report: EvaluationReport) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool": "clfmetrics",
        "tool_version": report.tool_version,
        "report": "evaluation",
        "dataset": report.dataset,
        "classes": list(report.labels),
        "num_classes": report.k,
        "units": report.total_units,
        "options": {
            "mode": report.mode,
            "weights": report.weights_source,
            "epsilon": repr(report.epsilon),
            "reduce": report.reduce,
        },
        "metrics": {name: _json_value(v) for name, v in report.metrics.items()},
        "per_class": {
            label: {
                "precision": _json_value(report.per_class.precision[i]),
                "recall": _json_value(report.per_class.recall[i]),
                "f1": _json_value(report.per_class.f1[i]),
            }
            for i, label in enumerate(report.labels)
        },
    }
    if report.cross_entropy is not None:
        obj["cross_entropy"] = {"value": repr(report.cross_entropy)}
    if report.skipped_classes is not None:
        obj["skipped_classes"] = dict(report.skipped_classes)
    return obj


def render_json(report: EvaluationReport) -> str:
    return json.dumps(_report_to_obj(report), indent=2, ensure_ascii=True) + "\n"


def parse_json(text: str) -> EvaluationReport:
    """Rebuild an evaluation report from its JSON form, losslessly."""
    obj = json.loads(text)
    if obj.get("report") != "evaluation":
        raise ValueError(f"not an evaluation report: {obj.get('report')!r}")
    labels = tuple(obj["classes"])
    per_class = obj["per_class"]
    breakdown = PerClassBreakdown(
        precision=tuple(_parse_json_value(per_class[lab]["precision"]) for lab in labels),
        recall=tuple(_parse_json_value(per_class[lab]["recall"]) for lab in labels),
        f1=tuple(_parse_json_value(per_class[lab]["f1"]) for lab in labels),
    )
    xent = obj.get("cross_entropy")
    skipped = obj.get("skipped_classes")
    return EvaluationReport(
        dataset=obj["dataset"],
        labels=labels,
        total_units=obj["units"],
        metrics={name: _parse_json_value(v) for name, v in obj["metrics"].items()},
        per_class=breakdown,
        mode=obj["options"]["mode"],
        weights_source=obj["options"]["weights"],
        epsilon=float(obj["options"]["epsilon"]),
        reduce=obj["options"]["reduce"],
        cross_entropy=float(xent["value"]) if xent is not None else None,
        skipped_classes=dict(skipped) if skipped is not None else None,
        tool_version=obj["tool_version"],
    )


def format_report(report: EvaluationReport, fmt: str = "text") -> bytes:
    """Serialize a report to UTF-8 bytes in the requested format."""
    if fmt == "text":
        return render_text(report).encode("utf-8")
    if fmt == "json":
        return render_json(report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


@dataclass(frozen=True)
class ComparisonReport:
    """Two evaluation reports side by side with per-metric deltas.

    Deltas are side B minus side A and exist only where both sides are
    defined. Class registries need not match; when they differ the per-class
    deltas are suppressed and the chance-corrected agreement score (kappa) is
    the row to compare, since removing the accuracy expected from the
    marginals alone is what makes two different datasets commensurable.
    """

    a: EvaluationReport
    b: EvaluationReport
    registries_match: bool
    deltas: dict[str, Numeric | None]
    per_class_deltas: dict[str, dict[str, Numeric | None]] | None
    notes: tuple[str, ...]
    flagged: tuple[str, ...] = ()


def _delta(a: MetricValue, b: MetricValue) -> Numeric | None:
    if not (a.is_defined and b.is_defined):
        return None
    return b.unwrap() - a.unwrap()


def compare_reports(a: EvaluationReport, b: EvaluationReport) -> ComparisonReport:
    """Build the side-by-side comparison of two evaluation reports."""
    match = a.labels == b.labels
    deltas: dict[str, Numeric | None] = {}
    for name in METRIC_ORDER:
        if name in a.metrics and name in b.metrics:
            deltas[name] = _delta(a.metrics[name], b.metrics[name])
    if a.cross_entropy is not None and b.cross_entropy is not None:
        deltas["cross_entropy"] = b.cross_entropy - a.cross_entropy

    per_class_deltas: dict[str, dict[str, Numeric | None]] | None = None
    if match:
        per_class_deltas = {}
        for i, label in enumerate(a.labels):
            per_class_deltas[label] = {
                "precision": _delta(a.per_class.precision[i], b.per_class.precision[i]),
                "recall": _delta(a.per_class.recall[i], b.per_class.recall[i]),
                "f1": _delta(a.per_class.f1[i], b.per_class.f1[i]),
            }

    notes: list[str] = []
    flagged: list[str] = []
    acc_a, acc_b = a.metrics["accuracy"], b.metrics["accuracy"]
    kap_a, kap_b = a.metrics["kappa"], b.metrics["kappa"]
    if (
        match
        and acc_a.is_defined
        and acc_b.is_defined
        and acc_a.unwrap() == acc_b.unwrap()
        and kap_a.is_defined
        and kap_b.is_defined
        and kap_a.unwrap() != kap_b.unwrap()
    ):
        flagged.append("kappa")
        better = "B" if kap_b.unwrap() > kap_a.unwrap() else "A"
        notes.append(
            "equal accuracy but different kappa: the two models distribute their "
            f"errors differently across classes; side {better} agrees more beyond chance."
        )
    if not match:
        notes.append(
            "class registries differ; per-class deltas are suppressed. kappa subtracts "
            "the agreement expected from the marginals alone, so it remains comparable "
            "across different datasets."
        )
    return ComparisonReport(
        a=a,
        b=b,
        registries_match=match,
        deltas=deltas,
        per_class_deltas=per_class_deltas,
        notes=tuple(notes),
        flagged=tuple(flagged),
    )


def _text_delta(value: Numeric | None) -> str:
    if value is None:
        return "undef(operand_undefined)"
    return f"{float(value):+.4f}"


def render_comparison_text(comparison: ComparisonReport, color: bool = False) -> str:
    a, b = comparison.a, comparison.b
    lines = [
        f"clfmetrics {a.tool_version}",
        f"compare: A={a.dataset}  B={b.dataset}",
        f"class registries match: {'yes' if comparison.registries_match else 'no'}",
        "",
    ]
    rows = []
    for name, delta in comparison.deltas.items():
        if name == "cross_entropy":
            va = f"{a.cross_entropy:.4f}"
            vb = f"{b.cross_entropy:.4f}"
        else:
            va = _text_value(a.metrics[name])
            vb = _text_value(b.metrics[name])
        marker = "  << differs at equal accuracy" if name in comparison.flagged else ""
        rows.append((name, va, vb, _text_delta(delta), marker))
    name_w = max(len("metric"), max(len(r[0]) for r in rows))
    a_w = max(len("A"), max(len(r[1]) for r in rows))
    b_w = max(len("B"), max(len(r[2]) for r in rows))
    d_w = max(len("delta"), max(len(r[3]) for r in rows))
    lines.append(f"{'metric':<{name_w}}  {'A':<{a_w}}  {'B':<{b_w}}  delta")
    for name, va, vb, delta, marker in rows:
        row = f"{name:<{name_w}}  {va:<{a_w}}  {vb:<{b_w}}  {delta:<{d_w}}{marker}".rstrip()
        if marker and color:
            row = f"{_ANSI_HIGHLIGHT}{row}{_ANSI_RESET}"
        lines.append(row)
    if comparison.per_class_deltas is not None:
        lines.append("")
        lines.append("per-class deltas (B - A):")
        label_w = max(len("class"), max(len(lab) for lab in comparison.per_class_deltas))
        cells = {
            lab: [_text_delta(d[m]) for m in PER_CLASS_METRICS]
            for lab, d in comparison.per_class_deltas.items()
        }
        col_ws = [
            max(len(m), max(len(cells[lab][j]) for lab in cells))
            for j, m in enumerate(PER_CLASS_METRICS)
        ]
        lines.append(
            (
                f"{'class':<{label_w}}  "
                + "  ".join(f"{m:<{w}}" for m, w in zip(PER_CLASS_METRICS, col_ws))
            ).rstrip()
        )
        for lab in comparison.per_class_deltas:
            lines.append(
                (
                    f"{lab:<{label_w}}  "
                    + "  ".join(f"{v:<{w}}" for v, w in zip(cells[lab], col_ws))
                ).rstrip()
            )
    if comparison.notes:
        lines.append("")
        lines.append("notes:")
        for note in comparison.notes:
            lines.append(f"  - {note}")
    return "\n".join(lines) + "\n"


def _json_delta(value: Numeric | None) -> dict[str, str]:
    if value is None:
        return {"undefined": "operand_undefined"}
    if isinstance(value, Fraction):
        return {"value": fraction_decimal(value), "rational": str(value)}
    return {"value": repr(value)}


def render_comparison_json(comparison: ComparisonReport) -> str:
    obj: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool": "clfmetrics",
        "tool_version": comparison.a.tool_version,
        "report": "comparison",
        "a": _report_to_obj(comparison.a),
        "b": _report_to_obj(comparison.b),
        "registries_match": comparison.registries_match,
        "deltas": {name: _json_delta(d) for name, d in comparison.deltas.items()},
        "flagged": list(comparison.flagged),
        "notes": list(comparison.notes),
    }
    if comparison.per_class_deltas is not None:
        obj["per_class_deltas"] = {
            label: {m: _json_delta(d[m]) for m in PER_CLASS_METRICS}
            for label, d in comparison.per_class_deltas.items()
        }
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def format_comparison(comparison: ComparisonReport, fmt: str = "text", color: bool = False) -> bytes:
    if fmt == "text":
        return render_comparison_text(comparison, color=color).encode("utf-8")
    if fmt == "json":
        return render_comparison_json(comparison).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")
