"""Pass/fail reports shared by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    error: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: {self.detail}"


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)
    values: Dict[str, float] = field(default_factory=dict)

    def add(self, name, passed, detail="", error=0.0) -> Check:
        c = Check(name, bool(passed), detail, float(error))
        self.checks.append(c)
        return c

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name) -> Check:
        return next(c for c in self.checks if c.name == name)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def __str__(self):
        return "\n".join([self.title] + ["  " + c.line() for c in self.checks])
