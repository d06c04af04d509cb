"""Check reports: one JSON object per line, canonical key order."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = ["CheckReport", "jsonable", "summary_table", "STATUSES"]

STATUSES = ("pass", "fail", "report-only")


def jsonable(x):
    """Recursively convert to plain JSON types; exact values become strings."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        return x if x == x and abs(x) != float("inf") else str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(jsonable(v) for v in x)
    return repr(x)


@dataclass
class CheckReport:
    check: str
    params: dict
    status: str
    witness: object = None
    ms: float = 0.0
    extra: dict = field(default_factory=dict, repr=False)   # not serialized

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError("bad status %r" % self.status)

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return {"check": self.check, "params": jsonable(self.params), "status": self.status,
                "witness": jsonable(self.witness), "ms": round(float(self.ms), 1)}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))

    def sort_key(self) -> tuple:
        return (self.check, json.dumps(jsonable(self.params), sort_keys=True))

    @classmethod
    def from_json(cls, line: str) -> "CheckReport":
        d = json.loads(line)
        return cls(d["check"], d["params"], d["status"], d["witness"], d["ms"])


def summary_table(reports) -> str:
    """Counts per check name, then the parameters of every failure."""
    rows = {}
    for r in reports:
        c = rows.setdefault(r.check, {s: 0 for s in STATUSES})
        c[r.status] += 1
    width = max([len(k) for k in rows] + [5])
    lines = ["%-*s %6s %6s %12s" % (width, "check", "pass", "fail", "report-only")]
    for k in sorted(rows):
        c = rows[k]
        lines.append("%-*s %6d %6d %12d" % (width, k, c["pass"], c["fail"], c["report-only"]))
    fails = sorted((r for r in reports if r.status == "fail"), key=CheckReport.sort_key)
    if fails:
        lines.append("")
        lines.append("failures:")
        for r in fails:
            lines.append("  %s %s" % (r.check, json.dumps(jsonable(r.params), sort_keys=True)))
    total = len(reports)
    nf = len(fails)
    lines.append("")
    lines.append("%d checks, %d failed" % (total, nf))
    return "\n".join(lines)
