import csv
import io
from typing import List, Optional

from stableplace.schemas.bench import BenchReport, ReportRow

COLUMNS = ["Object", "Method", "Trials", "Rotation (°)", "Translation (cm)", "SR (%)"]


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.2f}"


def _cells(row: ReportRow) -> List[str]:
    return [
        row.object_id,
        row.method.value,
        str(row.trials),
        _fmt(row.rotation_deg),
        _fmt(row.translation_cm),
        f"{row.success_rate:.2f}",
    ]


def render_markdown(report: BenchReport) -> str:
    """Per-object rows followed by per-method totals."""
    lines = [
        f"# Placement benchmark ({report.regime.value} shape, {report.trials} trials, tilt {report.tilt_deg:g}°)",
        "",
        "| " + " | ".join(COLUMNS) + " |",
        "|" + "|".join(["---"] * len(COLUMNS)) + "|",
    ]
    lines += ["| " + " | ".join(_cells(row)) + " |" for row in report.rows]
    lines += ["| " + " | ".join(["**" + c + "**" if i == 0 else c for i, c in enumerate(_cells(row))]) + " |" for row in report.aggregate]
    lines += ["", "Drift means exclude trials where no plane was detected; those trials count as failures in SR.", ""]
    return "\n".join(lines)


def render_csv(report: BenchReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in list(report.rows) + list(report.aggregate):
        writer.writerow(_cells(row))
    return buffer.getvalue()
