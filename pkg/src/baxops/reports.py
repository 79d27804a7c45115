"""Check reports shared by all verifiers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .linalg import format_rational

MAX_LISTED_FAILURES = 20


def format_vector(vec: Mapping, label) -> dict:
    """Render a sparse vector keyed by index tuples as {"a⊗b": "p/q"} with sorted keys."""
    out = {}
    for k in sorted(vec):
        out[label(k)] = format_rational(vec[k])
    return out


@dataclass
class Failure:
    where: tuple
    detail: dict = field(default_factory=dict)
    tag: str = ""

    def to_json(self) -> dict:
        d = {"at": list(self.where), "difference": self.detail}
        if self.tag:
            d["relation"] = self.tag
        return d


@dataclass
class Report:
    """Outcome of one identity check over a finite set of basis tuples."""

    id: str
    failures: list = field(default_factory=list)
    checked: int = 0
    skipped: int = 0
    n_failures: int = 0
    notes: list = field(default_factory=list)
    informational: bool = False

    @property
    def passed(self) -> bool:
        return self.n_failures == 0

    def __bool__(self):
        return self.passed

    def fail(self, where: tuple, detail: dict | None = None, tag: str = "") -> None:
        self.n_failures += 1
        if len(self.failures) < MAX_LISTED_FAILURES:
            self.failures.append(Failure(tuple(where), detail or {}, tag))

    def absorb(self, other: "Report", prefix: str = "") -> None:
        """Merge another report's counts and failures into this one."""
        self.checked += other.checked
        self.skipped += other.skipped
        self.n_failures += other.n_failures
        for f in other.failures:
            if len(self.failures) < MAX_LISTED_FAILURES:
                tag = f"{prefix}{f.tag}" if prefix or f.tag else ""
                self.failures.append(Failure(f.where, f.detail, tag or other.id))
        self.notes.extend(other.notes)

    @property
    def status(self) -> str:
        if self.informational:
            return "info"
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        d = {
            "id": self.id,
            "status": self.status,
            "checked": self.checked,
            "skipped": self.skipped,
            "failure_count": self.n_failures,
            "failures": [f.to_json() for f in self.failures],
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def summary(self) -> str:
        s = f"[{self.status.upper()}] {self.id}: {self.checked} checked"
        if self.skipped:
            s += f", {self.skipped} skipped (overflow)"
        if self.n_failures:
            s += f", {self.n_failures} failing"
            if self.failures:
                f = self.failures[0]
                s += f"; first at {', '.join(map(str, f.where))}"
                if f.tag:
                    s += f" ({f.tag})"
        return s


class HypothesisError(ValueError):
    """A constructor refused because one of its hypotheses does not hold."""

    def __init__(self, message: str, reports: list | None = None):
        super().__init__(message)
        self.reports = reports or []
