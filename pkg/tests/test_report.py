import csv
import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from moldcool.errors import DomainError, FileFormatError, ValidationError
from moldcool.report import (
    Metric,
    MetricSample,
    bundled_comparison_tables,
    compare,
    comparison_tables_from_dict,
    compliance_check,
    load_comparison_tables,
)

TIME = Metric.MAX_COOLING_TIME


def _printed_pairs():
    for table in bundled_comparison_tables():
        for name, (red, imp) in table.printed.items():
            yield pytest.param(table, name, red, imp, id=f"{table.baseline.metric.value}|{name}")


def test_twelve_printed_pairs():
    assert sum(len(t.printed) for t in bundled_comparison_tables()) == 12


@pytest.mark.parametrize("table, name, red, imp", list(_printed_pairs()))
def test_recomputed_matches_printed(table, name, red, imp):
    row = table.report().row(name)
    assert row.reduction == pytest.approx(red, abs=0.01)
    assert row.improvement_pct == pytest.approx(imp, abs=0.01)


def test_cooling_time_example():
    rep = compare(MetricSample(TIME, "straight", 262.550), [MetricSample(TIME, "conformal", 87.427)])
    row = rep.row("conformal")
    assert round(row.reduction, 3) == 175.123
    assert round(row.improvement_pct, 3) == 66.701


def test_stress_example():
    m = Metric.WARPAGE_STRESS
    row = compare(MetricSample(m, "straight", 48.587), [MetricSample(m, "conformal", 8.803)]).row("conformal")
    assert round(row.reduction, 3) == 39.784
    assert round(row.improvement_pct, 3) == 81.882


def test_identity_and_baseline_row():
    b = MetricSample(TIME, "base", 10.0)
    rep = compare(b, [MetricSample(TIME, "same", 10.0)])
    assert rep.rows[0] == ("base", 10.0, 0.0, 0.0)
    assert rep.row("same").reduction == 0.0 and rep.row("same").improvement_pct == 0.0
    with pytest.raises(KeyError):
        rep.row("absent")


@pytest.mark.parametrize("metric, value, expected", [
    (Metric.TOTAL_WARPAGE, 0.725, True),
    (Metric.TOTAL_WARPAGE, 1.0, True),
    (Metric.TOTAL_WARPAGE, 1.067, False),
    (Metric.MOLD_TEMP_DIFFERENCE, 12.757, False),
    (Metric.MOLD_TEMP_DIFFERENCE, 4.972, True),
    (Metric.MOLD_TEMP_DIFFERENCE, 10.0, True),
    (Metric.MOLD_TEMP_DIFFERENCE, 10.668, False),
    (Metric.MAX_COOLING_TIME, 1e6, None),
    (Metric.WARPAGE_STRESS, 1e6, None),
])
def test_compliance(metric, value, expected):
    verdict = compliance_check(MetricSample(metric, "v", value))
    assert verdict.passed is expected
    if expected is None:
        assert verdict.rule == "no rule"


def test_mixed_metrics_rejected():
    with pytest.raises(ValidationError):
        compare(MetricSample(TIME, "a", 1.0), [MetricSample(Metric.TOTAL_WARPAGE, "b", 1.0)])


def test_zero_baseline_rejected():
    with pytest.raises(DomainError):
        compare(MetricSample(TIME, "a", 0.0), [MetricSample(TIME, "b", 1.0)])


@pytest.mark.parametrize("kwargs", [
    dict(metric="speed", variant_name="a", value=1.0),
    dict(metric=TIME, variant_name="a", value=-1.0),
    dict(metric=TIME, variant_name="a", value=float("inf")),
    dict(metric=TIME, variant_name="a", value="3"),
])
def test_sample_validation(kwargs):
    with pytest.raises(ValidationError):
        MetricSample(**kwargs)


values = st.floats(0.0, 1e4, allow_nan=False)


@given(b=st.floats(1e-3, 1e4), v=values, k=st.floats(1e-3, 1e3))
def test_improvement_scale_invariant(b, v, k):
    a = compare(MetricSample(TIME, "b", b), [MetricSample(TIME, "v", v)]).row("v").improvement_pct
    s = compare(MetricSample(TIME, "b", k * b), [MetricSample(TIME, "v", k * v)]).row("v").improvement_pct
    assert s == pytest.approx(a, rel=1e-12, abs=1e-9)


@given(st.lists(values, min_size=1, max_size=6, unique=True), st.randoms())
def test_order_preserved(vals, rnd):
    samples = [MetricSample(TIME, f"v{i}", x) for i, x in enumerate(vals)]
    shuffled = samples[:]
    rnd.shuffle(shuffled)
    base = MetricSample(TIME, "base", 100.0)
    a = compare(base, samples)
    b = compare(base, shuffled)
    assert [r.variant_name for r in b.rows[1:]] == [s.variant_name for s in shuffled]
    assert sorted(a.rows) == sorted(b.rows)


def test_output_formats():
    rep = bundled_comparison_tables()[0].report()
    d = json.loads(rep.to_json())
    assert d["rows"][3]["reduction"] == {"raw": pytest.approx(175.123), "rounded": 175.123}
    text = rep.to_text().splitlines()
    assert text[0].startswith("Variant") and set(text[1]) <= {"-", " "}
    assert len({len(line) for line in text}) == 1
    rows = list(csv.DictReader(io.StringIO(rep.to_csv())))
    assert rows[-1]["improvement_pct"] == "66.701"
    assert rep.to_json() == bundled_comparison_tables()[0].report().to_json()


def test_compliance_in_json():
    rep = bundled_comparison_tables()[1].report()
    results = {c["variant"]: c["result"] for c in rep.to_dict()["compliance"]}
    assert results["Conformal channels and dashed Fastcool bars"] == "fail"
    assert results["Conformal channels"] == "pass"


def test_fixture_file_errors(tmp_path):
    with pytest.raises(FileFormatError):
        comparison_tables_from_dict({"tables": [{"metric": "max_cooling_time_s"}]})
    with pytest.raises(FileFormatError):
        comparison_tables_from_dict([])
    bad = tmp_path / "bad.json"
    bad.write_text("[")
    with pytest.raises(FileFormatError):
        load_comparison_tables(bad)
