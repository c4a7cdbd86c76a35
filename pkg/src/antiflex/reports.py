"""Structured verdicts for identity checks.

Predicates in this package return a CheckReport rather than a bare bool so
that callers (and the CLI) can see the first violating basis tuple and the
residual witnessing the failure.  Iteration over basis tuples is always in
lexicographic order, so "first violation" is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class Violation:
    law: str
    where: tuple
    residual: Any

    def describe(self) -> str:
        return f"{self.law} fails at basis tuple {self.where}: residual {self.residual}"


@dataclass
class CheckReport:
    name: str
    ok: bool = True
    violations: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def fail(self, law: str, where: tuple, residual) -> None:
        self.ok = False
        self.violations.append(Violation(law, where, residual))

    def merge(self, other: "CheckReport") -> None:
        if not other.ok:
            self.ok = False
            self.violations.extend(other.violations)
        self.notes.update(other.notes)

    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None

    def describe(self) -> str:
        if self.ok:
            return f"{self.name}: ok"
        head = self.violations[0]
        more = f" (+{len(self.violations) - 1} more)" if len(self.violations) > 1 else ""
        return f"{self.name}: FAIL - {head.describe()}{more}"
