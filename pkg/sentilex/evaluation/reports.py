from __future__ import annotations

import csv
import io
import json

from django.db import models

from sentilex.evaluation.scoring import EvalReport
from sentilex.evaluation.serializers import EvalReportSerializer
from sentilex.lexicon.exceptions import ValidationError

CSV_FIELDS = (
    "positive_f",
    "negative_f",
    "neutral_f",
    "macro_f",
    "micro_f",
    "lexicon_size",
)


class ReportFormat(models.TextChoices):
    TEXT = "text", "Text table"
    JSON = "json", "JSON document"
    CSV_ROW = "csv-row", "CSV header and row"


def _fmt(value: float) -> str:
    return f"{value:.3f}"


def report_row(report: EvalReport) -> dict[str, str]:
    return {
        "positive_f": _fmt(report.positive.f1),
        "negative_f": _fmt(report.negative.f1),
        "neutral_f": _fmt(report.neutral.f1),
        "macro_f": _fmt(report.macro_f),
        "micro_f": _fmt(report.micro_f),
        "lexicon_size": "" if report.lexicon_size is None else str(report.lexicon_size),
    }


def _text(report: EvalReport) -> str:
    lines = [f"{'class':<10} {'P':>6} {'R':>6} {'F':>6} {'TP':>7} {'FP':>7} {'FN':>7}"]
    for name in ("positive", "negative", "neutral"):
        scores = getattr(report, name)
        lines.append(
            f"{name:<10} {_fmt(scores.precision):>6} {_fmt(scores.recall):>6} {_fmt(scores.f1):>6} "
            f"{scores.tp:>7} {scores.fp:>7} {scores.fn:>7}"
        )
    size = "-" if report.lexicon_size is None else str(report.lexicon_size)
    lines.append(f"macro-F {_fmt(report.macro_f)}  micro-F {_fmt(report.micro_f)}  terms {size}  tokens {report.n_tokens}")
    lines.append(f"({report.note})")
    return "\n".join(lines) + "\n"


def format_report(report: EvalReport, fmt: ReportFormat | str = ReportFormat.TEXT) -> str:
    fmt = ReportFormat(fmt)
    if fmt == ReportFormat.TEXT:
        return _text(report)
    if fmt == ReportFormat.JSON:
        return json.dumps(EvalReportSerializer(report).data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerow(report_row(report))
    return buffer.getvalue()


def parse_report(text: str) -> EvalReport:
    serializer = EvalReportSerializer(data=json.loads(text))
    if not serializer.is_valid():
        raise ValidationError(f"invalid report JSON: {serializer.errors}")
    return serializer.save()
