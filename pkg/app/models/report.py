#app/models/report.py

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from app.models.equicore import ExtTable

# Set up logging
logger = logging.getLogger(__name__)


@dataclass
class CheckRecord:
    """
    One verified claim.

    Advisory records (binding=False) cover computations derived by symmetry;
    they are reported but never change the verdict.
    """

    check_id: str
    kind: str
    later: str = ""
    earlier: str = ""
    table: Optional[ExtTable] = None
    passed: bool = True
    binding: bool = True
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "id": self.check_id,
            "kind": self.kind,
            "later": self.later,
            "earlier": self.earlier,
            "table": self.table.to_dict() if self.table is not None else None,
            "pass": self.passed,
            "binding": self.binding,
        }
        if self.detail:
            data["detail"] = self.detail
        return data


@dataclass
class Report:
    """Records of every check run for one config, in a canonical order."""

    config: Dict[str, Any]
    records: List[CheckRecord] = field(default_factory=list)
    extras: Dict[str, Any] = field(default_factory=dict)
    timing: Optional[Dict[str, float]] = None

    def add(self, record: CheckRecord) -> None:
        if not record.passed:
            level = logging.WARNING if record.binding else logging.INFO
            logger.log(level, f"Check {record.check_id} failed for {self.label}: {record.kind} {record.later} -> {record.earlier}")
        self.records.append(record)

    def merge(self, other: "Report") -> "Report":
        for record in other.records:
            self.records.append(record)
        self.extras.update(other.extras)
        return self

    @property
    def label(self) -> str:
        return self.config.get("label", str(self.config))

    @property
    def failures(self) -> List[CheckRecord]:
        return [record for record in self.records if record.binding and not record.passed]

    @property
    def advisory_failures(self) -> List[CheckRecord]:
        return [record for record in self.records if not record.binding and not record.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def count(self, check_id: str) -> int:
        return sum(1 for record in self.records if record.check_id == check_id)

    def summary(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "checks": len(self.records),
            "pairs_checked": self.count("semiorthogonal"),
            "failures": len(self.failures),
            "advisory_failures": len(self.advisory_failures),
            "pass": self.passed,
        }
        data.update(self.extras)
        return data

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "config": self.config,
            "checks": [record.to_dict() for record in self.records],
            "summary": self.summary(),
        }
        if include_timing and self.timing is not None:
            data["timing"] = self.timing
        return data
