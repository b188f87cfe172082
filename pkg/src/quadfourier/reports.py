"""Suite reports: dataclasses, canonical JSON, and the report schema.

Serialization is deterministic: fixed key order, integer timing field,
newline-terminated.  Reruns with the same seed are byte-identical apart
from wall_time_ms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SUITE_SCHEMA_ID = "quadfourier.suite-report/1"
AGGREGATE_SCHEMA_ID = "quadfourier.report/1"

#: JSON-schema (draft 2020-12) for a single suite report.
SUITE_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": SUITE_SCHEMA_ID,
    "type": "object",
    "required": ["schema", "suite", "field", "parameters", "checks", "wall_time_ms"],
    "properties": {
        "schema": {"const": SUITE_SCHEMA_ID},
        "suite": {"type": "string"},
        "field": {
            "type": "object",
            "required": ["p", "m"],
            "properties": {
                "p": {"type": "integer"},
                "m": {"type": "integer"},
                "modulus": {"type": "array", "items": {"type": "integer"}},
            },
        },
        "parameters": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status"],
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": ["pass", "fail"]},
                    "details": {"type": "string"},
                },
            },
        },
        "status": {"enum": ["pass", "fail"]},
        "wall_time_ms": {"type": "integer"},
    },
}

AGGREGATE_REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": AGGREGATE_SCHEMA_ID,
    "type": "object",
    "required": ["schema", "seed", "reports"],
    "properties": {
        "schema": {"const": AGGREGATE_SCHEMA_ID},
        "seed": {"type": "integer"},
        "reports": {"type": "array", "items": SUITE_REPORT_SCHEMA},
    },
}


@dataclass
class CheckResult:
    name: str
    status: str
    details: str = ""

    @classmethod
    def from_bool(cls, name: str, ok: bool, details: str = "") -> "CheckResult":
        return cls(name, "pass" if ok else "fail", details)

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class SuiteReport:
    suite: str
    field: dict
    parameters: dict
    checks: list = field(default_factory=list)
    wall_time_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": SUITE_SCHEMA_ID,
            "suite": self.suite,
            "field": self.field,
            "parameters": self.parameters,
            "status": "pass" if self.passed else "fail",
            "checks": [c.to_dict() for c in self.checks],
            "wall_time_ms": int(self.wall_time_ms),
        }


def field_dict(spec) -> dict:
    out = {"p": spec.p, "m": spec.m}
    if spec.modulus is not None:
        out["modulus"] = list(spec.modulus)
    return out


def render_suite_json(report: SuiteReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def render_aggregate_json(reports, seed: int) -> str:
    doc = {
        "schema": AGGREGATE_SCHEMA_ID,
        "seed": seed,
        "reports": [r.to_dict() for r in reports],
    }
    return json.dumps(doc, indent=2) + "\n"
