"""Baseline-versus-variant comparison of cooling-system results.

All four metrics are lower-is-better, so a positive reduction and a positive
improvement percentage always mean the variant beats the baseline.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any, NamedTuple, Sequence

from .errors import DomainError, FileFormatError, ValidationError

DECIMALS = 3


class Metric(str, Enum):
    MAX_COOLING_TIME = "max_cooling_time_s"
    MOLD_TEMP_DIFFERENCE = "mold_temp_difference_C"
    TOTAL_WARPAGE = "total_warpage_mm"
    WARPAGE_STRESS = "warpage_stress_MPa"

    @property
    def unit(self) -> str:
        return {"max_cooling_time_s": "s", "mold_temp_difference_C": "degC",
                "total_warpage_mm": "mm", "warpage_stress_MPa": "MPa"}[self.value]


# Industrial acceptance limits, inclusive ("should not exceed", "equal to or less than").
COMPLIANCE_LIMITS = {
    Metric.TOTAL_WARPAGE: (1.0, "total warpage <= 1.0 mm"),
    Metric.MOLD_TEMP_DIFFERENCE: (10.0, "mold temperature difference <= 10.0 degC"),
}


@dataclass(frozen=True)
class MetricSample:
    metric: Metric
    variant_name: str
    value: float

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "metric", Metric(self.metric))
        except ValueError:
            raise ValidationError("metric", f"one of {[m.value for m in Metric]}", self.variant_name) from None
        if isinstance(self.value, bool) or not isinstance(self.value, (int, float)):
            raise ValidationError("value", "must be a number", self.variant_name)
        if not (math.isfinite(self.value) and self.value >= 0):
            raise ValidationError("value", "value >= 0", self.variant_name)


class ComparisonRow(NamedTuple):
    variant_name: str
    value: float
    reduction: float
    improvement_pct: float


class ComplianceVerdict(NamedTuple):
    variant_name: str
    rule: str
    passed: bool | None
    """None when no rule applies to the metric."""


def compliance_check(sample: MetricSample) -> ComplianceVerdict:
    """Apply the industrial limit for the sample's metric, if it has one."""
    if sample.metric not in COMPLIANCE_LIMITS:
        return ComplianceVerdict(sample.variant_name, "no rule", None)
    limit, text = COMPLIANCE_LIMITS[sample.metric]
    return ComplianceVerdict(sample.variant_name, text, sample.value <= limit)


@dataclass(frozen=True)
class ComparisonReport:
    metric: Metric
    baseline: MetricSample
    rows: tuple[ComparisonRow, ...]
    compliance: tuple[ComplianceVerdict, ...]

    def row(self, variant_name: str) -> ComparisonRow:
        for r in self.rows:
            if r.variant_name == variant_name:
                return r
        raise KeyError(variant_name)

    def to_dict(self) -> dict:
        def num(x: float) -> dict:
            return {"raw": x, "rounded": round(x, DECIMALS)}

        return {
            "metric": self.metric.value,
            "unit": self.metric.unit,
            "baseline": {"variant": self.baseline.variant_name, "value": num(self.baseline.value)},
            "rows": [
                {"variant": r.variant_name, "value": num(r.value), "reduction": num(r.reduction),
                 "improvement_pct": num(r.improvement_pct)}
                for r in self.rows
            ],
            "compliance": [
                {"variant": c.variant_name, "rule": c.rule, "result": "pass" if c.passed else "fail"}
                for c in self.compliance if c.passed is not None
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        unit = self.metric.unit
        header = ("Variant", f"{self.metric.value} [{unit}]", f"Reduction [{unit}]", "Improvement [%]", "Compliance")
        verdicts = {c.variant_name: c for c in self.compliance}
        body = []
        for r in self.rows:
            c = verdicts.get(r.variant_name)
            mark = "-" if c is None or c.passed is None else ("pass" if c.passed else "FAIL")
            if r.variant_name == self.baseline.variant_name:
                red, imp = "-", "-"
            else:
                red, imp = f"{r.reduction:.{DECIMALS}f}", f"{r.improvement_pct:.{DECIMALS}f}"
            body.append((r.variant_name, f"{r.value:.{DECIMALS}f}", red, imp, mark))
        widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]
        lines = ["  ".join(cell.ljust(w) if i == 0 else cell.rjust(w) for i, (cell, w) in enumerate(zip(row, widths)))
                 for row in [header, *body]]
        lines.insert(1, "  ".join("-" * w for w in widths))
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["metric", "variant", "value", "reduction", "improvement_pct"])
        for r in self.rows:
            writer.writerow([self.metric.value, r.variant_name, f"{r.value:.{DECIMALS}f}",
                             f"{r.reduction:.{DECIMALS}f}", f"{r.improvement_pct:.{DECIMALS}f}"])
        return buf.getvalue()


def compare(baseline: MetricSample, variants: Sequence[MetricSample]) -> ComparisonReport:
    """Reduction and improvement of each variant relative to the baseline.

    Rows keep input order and start with the baseline (reduction 0).

    Raises:
        ValidationError: Samples mix different metrics.
        DomainError: Baseline value is zero, so percentages are undefined.
    """
    for v in variants:
        if v.metric != baseline.metric:
            raise ValidationError("metric", f"all samples must share metric {baseline.metric.value}", v.variant_name)
    if baseline.value <= 0:
        raise DomainError("baseline value must be > 0 to define an improvement percentage")
    rows = [ComparisonRow(baseline.variant_name, baseline.value, 0.0, 0.0)]
    for v in variants:
        reduction = baseline.value - v.value
        rows.append(ComparisonRow(v.variant_name, v.value, reduction, 100.0 * reduction / baseline.value))
    compliance = tuple(compliance_check(s) for s in [baseline, *variants])
    return ComparisonReport(baseline.metric, baseline, tuple(rows), compliance)


@dataclass(frozen=True)
class ComparisonTable:
    """One results table: its samples plus the reduction/improvement values as printed."""

    title: str
    baseline: MetricSample
    variants: tuple[MetricSample, ...]
    printed: dict[str, tuple[float, float]]

    def report(self) -> ComparisonReport:
        return compare(self.baseline, self.variants)


def comparison_tables_from_dict(data: Any) -> list[ComparisonTable]:
    if not isinstance(data, dict) or not isinstance(data.get("tables"), list):
        raise FileFormatError("comparison file must be an object with a 'tables' list")
    tables = []
    for i, t in enumerate(data["tables"]):
        try:
            metric = t["metric"]
            base = MetricSample(metric, t["baseline"]["variant"], t["baseline"]["value"])
            variants = tuple(MetricSample(metric, v["variant"], v["value"]) for v in t["variants"])
            printed = {
                v["variant"]: (v["printed_reduction"], v["printed_improvement_pct"])
                for v in t["variants"] if "printed_reduction" in v
            }
        except (KeyError, TypeError) as exc:
            raise FileFormatError(f"table {i}: missing or malformed entry ({exc})") from exc
        tables.append(ComparisonTable(t.get("title", metric), base, variants, printed))
    return tables


def load_comparison_tables(path: str | Path) -> list[ComparisonTable]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise FileFormatError(f"cannot read comparison file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: malformed JSON ({exc})") from exc
    return comparison_tables_from_dict(data)


def bundled_comparison_path() -> Path:
    return Path(str(resources.files("moldcool") / "data" / "comparison_tables.json"))


def bundled_comparison_tables() -> list[ComparisonTable]:
    """Simulated results of the four cooling layouts (cooling time, mold dT, warpage, stress)."""
    return load_comparison_tables(bundled_comparison_path())
