#app/common/report_writer.py

import io
import csv
import json
import logging
from typing import Any, Dict, Sequence

from app.models.equicore import ExtTable, mult_to_json
from app.models.report import Report

# Set up logging
logger = logging.getLogger(__name__)


class ReportWriter:
    """Render reports and tables as text, JSON or CSV."""

    FORMATS = ('text', 'json', 'csv')

    SWEEP_COLUMNS = [
        'label', 'm', 'n', 'd', 'cyclic', 'checks', 'pairs_checked',
        'failures', 'advisory_failures', 'inferred_twist', 'pass'
    ]

    @staticmethod
    def to_json(data: Any) -> str:
        # insertion order is deterministic, so no key sorting
        return json.dumps(data, indent=2) + "\n"

    @staticmethod
    def render_report(report: Report, fmt: str, verbose: bool = False, include_timing: bool = False) -> str:
        """Render a single-config report."""
        if fmt == 'json':
            return ReportWriter.to_json(report.to_dict(include_timing))
        if fmt == 'csv':
            return ReportWriter.render_checks_csv(report)
        return ReportWriter.render_report_text(report, verbose, include_timing)

    @staticmethod
    def render_report_text(report: Report, verbose: bool = False, include_timing: bool = False) -> str:
        lines = []
        for record in report.records:
            if record.passed and not verbose:
                continue
            status = "ok" if record.passed else ("FAIL" if record.binding else "advisory-fail")
            pair = f" {record.later} -> {record.earlier}" if record.later or record.earlier else ""
            table = f" {record.table.summary()}" if record.table is not None else ""
            detail = f" ({record.detail})" if record.detail else ""
            lines.append(f"[{status}] {record.check_id}/{record.kind}{pair}{table}{detail}")
        summary = report.summary()
        verdict = "PASS" if report.passed else "FAIL"
        lines.append(
            f"{report.label}: {verdict} - {summary['checks']} checks, "
            f"{summary['failures']} failures, {summary['advisory_failures']} advisory failures"
        )
        if include_timing and report.timing:
            lines.append(f"time {report.timing['seconds']:.2f}s, memory change {report.timing['rss_mb']:.1f} MB")
        return "\n".join(lines) + "\n"

    @staticmethod
    def render_checks_csv(report: Report) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(['id', 'kind', 'later', 'earlier', 'table', 'pass', 'binding'])
        for record in report.records:
            table = record.table.summary() if record.table is not None else ""
            writer.writerow([record.check_id, record.kind, record.later, record.earlier, table, record.passed, record.binding])
        return buffer.getvalue()

    @staticmethod
    def sweep_row(report: Report) -> Dict[str, Any]:
        """One summary row per config."""
        summary = report.summary()
        row = {
            'label': report.label,
            'm': report.config.get('m'),
            'n': report.config.get('n'),
            'd': report.config.get('d'),
            'cyclic': report.config.get('cyclic', False),
        }
        for column in ReportWriter.SWEEP_COLUMNS[5:]:
            row[column] = summary.get(column)
        return row

    @staticmethod
    def render_sweep(reports: Sequence[Report], fmt: str, include_timing: bool = False) -> str:
        """Render a sweep with one line, row or entry per config."""
        rows = [ReportWriter.sweep_row(report) for report in reports]
        if include_timing:
            for row, report in zip(rows, reports):
                row['seconds'] = report.timing['seconds'] if report.timing else None

        if fmt == 'json':
            passed = all(report.passed for report in reports)
            return ReportWriter.to_json({'configs': rows, 'summary': {'configs': len(rows), 'pass': passed}})
        if fmt == 'csv':
            buffer = io.StringIO()
            columns = ReportWriter.SWEEP_COLUMNS + (['seconds'] if include_timing else [])
            writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
            return buffer.getvalue()

        lines = []
        for row in rows:
            verdict = "PASS" if row['pass'] else "FAIL"
            line = f"{row['label']}: {verdict} ({row['checks']} checks, {row['pairs_checked']} pairs, {row['failures']} failures)"
            if row.get('inferred_twist') is not None:
                line += f" twist chi^{row['inferred_twist']}"
            if include_timing and row.get('seconds') is not None:
                line += f" {row['seconds']:.2f}s"
            lines.append(line)
        return "\n".join(lines) + "\n"

    @staticmethod
    def render_table(title: str, table: ExtTable, fmt: str) -> str:
        """Render an ad-hoc cohomology or Ext query."""
        if fmt == 'json':
            return ReportWriter.to_json({'query': title, 'table': table.to_dict(), 'invariants': {str(k): mult_to_json(v) for k, v in table.invariants().items()}})
        if fmt == 'csv':
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(['degree', 'character', 'multiplicity'])
            for degree, vector in table.rows:
                for char, value in vector.items():
                    writer.writerow([degree, char, value])
            return buffer.getvalue()

        lines = [title]
        if table.is_zero():
            lines.append("  0")
        for degree, vector in table.rows:
            entries = ", ".join(f"chi^{char} x {value}" for char, value in vector.items())
            lines.append(f"  degree {degree}: {entries}")
        return "\n".join(lines) + "\n"
