#tests/test_report.py

import csv
import io
import json

from app.common.report_writer import ReportWriter
from app.models.equicore import ExtTable
from app.models.report import CheckRecord, Report


def make_report() -> Report:
    report = Report({"m": 2, "n": 2, "d": 4, "cyclic": False, "label": "(2,2,4)"})
    table = ExtTable.from_dict(4, {0: {1: 1}})
    report.add(CheckRecord("semiorthogonal", "A->A", "O(0)chi^0", "O(-1)chi^0", table, True))
    report.add(CheckRecord("distinct_lines", "shared_q", "L1", "L2", ExtTable.from_dict(4, {1: {0: 1}}), False, binding=False))
    return report


def test_advisory_failures_do_not_fail_the_report():
    report = make_report()
    assert report.passed
    assert len(report.advisory_failures) == 1
    summary = report.summary()
    assert summary["checks"] == 2
    assert summary["pairs_checked"] == 1
    assert summary["failures"] == 0
    assert summary["advisory_failures"] == 1


def test_binding_failure_fails_the_report():
    report = make_report()
    report.add(CheckRecord("exceptional", "A", passed=False))
    assert not report.passed
    assert report.summary()["pass"] is False


def test_merge_keeps_order_and_extras():
    first = make_report()
    second = Report(first.config, extras={"inferred_twist": 0})
    second.add(CheckRecord("ideal_powers", "filtration_length"))
    first.merge(second)
    assert [r.check_id for r in first.records][-1] == "ideal_powers"
    assert first.summary()["inferred_twist"] == 0


def test_record_json_keys():
    data = make_report().records[0].to_dict()
    assert list(data) == ["id", "kind", "later", "earlier", "table", "pass", "binding"]
    assert data["table"] == {"0": {"1": 1}}


def test_json_has_no_timing_unless_asked():
    report = make_report()
    report.timing = {"seconds": 1.5, "rss_mb": 0.0}
    plain = json.loads(ReportWriter.render_report(report, "json"))
    assert "timing" not in plain
    assert set(plain) == {"config", "checks", "summary"}
    timed = json.loads(ReportWriter.render_report(report, "json", include_timing=True))
    assert timed["timing"]["seconds"] == 1.5


def test_json_is_deterministic():
    assert ReportWriter.render_report(make_report(), "json") == ReportWriter.render_report(make_report(), "json")


def test_text_report_hides_passing_checks_unless_verbose():
    text = ReportWriter.render_report(make_report(), "text")
    assert "[ok]" not in text
    assert "[advisory-fail] distinct_lines/shared_q" in text
    assert text.strip().endswith("(2,2,4): PASS - 2 checks, 0 failures, 1 advisory failures")
    assert "[ok] semiorthogonal/A->A" in ReportWriter.render_report(make_report(), "text", verbose=True)


def test_checks_csv():
    rows = list(csv.reader(io.StringIO(ReportWriter.render_report(make_report(), "csv"))))
    assert rows[0] == ["id", "kind", "later", "earlier", "table", "pass", "binding"]
    assert len(rows) == 3


def test_sweep_rendering():
    reports = [make_report(), make_report()]
    reports[1].add(CheckRecord("exceptional", "A", passed=False))
    data = json.loads(ReportWriter.render_sweep(reports, "json"))
    assert data["summary"] == {"configs": 2, "pass": False}
    assert data["configs"][0]["label"] == "(2,2,4)"

    rows = list(csv.DictReader(io.StringIO(ReportWriter.render_sweep(reports, "csv"))))
    assert [row["pass"] for row in rows] == ["True", "False"]
    assert list(rows[0]) == ReportWriter.SWEEP_COLUMNS

    text = ReportWriter.render_sweep(reports, "text")
    assert "(2,2,4): FAIL" in text


def test_table_rendering():
    table = ExtTable.from_dict(4, {0: {0: 1, 2: 3}})
    assert ReportWriter.render_table("query", table, "text") == "query\n  degree 0: chi^0 x 1, chi^2 x 3\n"
    data = json.loads(ReportWriter.render_table("query", table, "json"))
    assert data["invariants"] == {"0": 1}
    assert "  0\n" in ReportWriter.render_table("empty", ExtTable.zero(4), "text")
    rows = list(csv.reader(io.StringIO(ReportWriter.render_table("query", table, "csv"))))
    assert rows == [["degree", "character", "multiplicity"], ["0", "0", "1"], ["0", "2", "3"]]
