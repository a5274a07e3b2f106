"""Machine-readable verification outcomes.

Reports serialize deterministically: fixed key order, rationals as
``"num/den"`` strings, floats only under keys ending in ``_approx``.
"""
from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .rational import ZERO, format_q

__all__ = ["VerifyReport", "CampaignReport", "jsonify", "dumps"]

_MPQ = type(ZERO)


def jsonify(obj: Any) -> Any:
    """Convert report payloads to plain JSON types."""
    if type(obj) is _MPQ:
        return format_q(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int, float)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonify(v) for v in obj]
    if hasattr(obj, "numerator") and hasattr(obj, "denominator"):
        return format_q(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


_SCALAR = r'(?:"(?:[^"\\\n]|\\.)*"|-?[0-9][0-9.eE+-]*|true|false|null)'
_FLAT_LIST = re.compile(r"\[\n\s*(" + _SCALAR + r"(?:,\n\s*" + _SCALAR + r")*)\n\s*\]")


def dumps(obj: Any) -> str:
    """Indented JSON with innermost scalar lists kept on one line."""
    text = json.dumps(jsonify(obj), indent=2, ensure_ascii=False)
    text = _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\n\s*", ", ", m.group(1)) + "]", text)
    return text + "\n"


@dataclass
class VerifyReport:
    claim: str
    passed: bool
    values: dict[str, Any] = field(default_factory=dict)
    instance: dict[str, Any] = field(default_factory=dict)
    equality: bool | None = None
    seed: int | None = None
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {
            "claim": self.claim,
            "seed": self.seed,
            "instance": jsonify(self.instance),
            "values": jsonify(self.values),
            "pass": self.passed,
            "equality": self.equality,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass
class CampaignReport:
    """Aggregate of many seeded instances of one claim."""

    claim: str
    seed: int
    trials: int
    passed_count: int = 0
    equality_count: int = 0
    failures: list[VerifyReport] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    rows: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures and self.passed_count == self.trials

    def add(self, report: VerifyReport, row: dict[str, Any] | None = None) -> None:
        if report.passed:
            self.passed_count += 1
        else:
            self.failures.append(report)
        if report.equality:
            self.equality_count += 1
        if row is not None:
            self.rows.append(row)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "seed": self.seed,
            "trials": self.trials,
            "pass": self.passed,
            "passed": self.passed_count,
            "equality_cases": self.equality_count,
            "summary": jsonify(self.summary),
            "failures": [f.to_json() for f in self.failures],
        }

    def to_csv(self) -> str:
        """Per-instance rows as CSV (header from the first row)."""
        buf = io.StringIO()
        if not self.rows:
            return ""
        fields = list(self.rows[0])
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: jsonify(v) for k, v in row.items()})
        return buf.getvalue()
