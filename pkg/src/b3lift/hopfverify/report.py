"""Check rows and their text / JSON rendering."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

from ..pbwalg.rewrite import BudgetExceeded

SCHEMA = "b3lift-report/1"


@dataclass
class CheckResult:
    id: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    tier: str = ""
    budget_exceeded: bool = False
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CHECK {self.id} {status} {self.detail}".rstrip()

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "status": "PASS" if self.passed else "FAIL",
            "detail": self.detail,
            "seconds": round(self.seconds, 4),
        }
        if self.tier:
            out["tier"] = self.tier
        if self.budget_exceeded:
            out["budget_exceeded"] = True
        if self.data:
            out["data"] = self.data
        return out


class Report:
    def __init__(self, rows=None):
        self.rows: list[CheckResult] = list(rows or [])

    def add(self, row: CheckResult) -> CheckResult:
        self.rows.append(row)
        return row

    def extend(self, other: "Report") -> "Report":
        self.rows.extend(other.rows)
        return self

    def check(self, id: str, passed: bool, detail: str = "", **kw) -> CheckResult:
        return self.add(CheckResult(id, bool(passed), detail, **kw))

    @property
    def failures(self) -> list:
        return [r for r in self.rows if not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def budget_exceeded(self) -> bool:
        return any(r.budget_exceeded for r in self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def names(self) -> list:
        return [r.id for r in self.rows]

    def failed_names(self) -> list:
        return [r.id for r in self.failures]

    def get(self, id: str) -> CheckResult:
        for r in self.rows:
            if r.id == id:
                return r
        raise KeyError(id)

    def text(self, timing: bool = False) -> str:
        lines = [r.line() + (f" ({r.seconds:.2f}s)" if timing else "") for r in self.rows]
        n = len(self.rows)
        bad = len(self.failures)
        lines.append(f"SUMMARY {n - bad}/{n} passed")
        return "\n".join(lines)

    def to_json(self, meta: dict | None = None, timing: bool = True) -> dict:
        rows = [r.to_json() for r in self.rows]
        if not timing:
            for r in rows:
                r.pop("seconds", None)
        return {
            "schema": SCHEMA,
            "meta": meta or {},
            "passed": sum(r.passed for r in self.rows),
            "failed": len(self.failures),
            "checks": rows,
        }

    def dumps(self, meta: dict | None = None, timing: bool = True) -> str:
        return json.dumps(self.to_json(meta, timing), indent=2, sort_keys=True)


@contextmanager
def timed(report: Report, id: str, tier: str = ""):
    """Run a block that sets ``box['passed']`` / ``box['detail']``; budget overruns become FAIL rows."""
    box = {"passed": False, "detail": "", "data": {}}
    t0 = time.perf_counter()
    try:
        yield box
    except BudgetExceeded as exc:
        report.add(CheckResult(id, False, f"budget exceeded: {exc}", time.perf_counter() - t0, tier, True))
        return
    report.add(CheckResult(id, box["passed"], box["detail"], time.perf_counter() - t0, tier, False, box["data"]))
