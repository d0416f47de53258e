"""Structured pass/fail reports used by the verification helpers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class ReportItem:
    node: str
    item: str
    passed: bool
    witness: Optional[str] = None

    def __str__(self) -> str:
        mark = "ok" if self.passed else "FAIL"
        tail = f" ({self.witness})" if self.witness else ""
        return f"[{mark}] {self.node}: {self.item}{tail}"


@dataclass
class Report:
    """A flat list of checked items; `passed` is the conjunction."""

    items: list[ReportItem] = field(default_factory=list)

    def add(self, node: str, item: str, passed: bool, witness: Optional[str] = None) -> None:
        self.items.append(ReportItem(node, item, bool(passed), witness))

    @property
    def passed(self) -> bool:
        return all(it.passed for it in self.items)

    @property
    def failures(self) -> list[ReportItem]:
        return [it for it in self.items if not it.passed]

    def __str__(self) -> str:
        ok = sum(1 for it in self.items if it.passed)
        head = f"{ok}/{len(self.items)} checks passed"
        if self.passed:
            return head
        lines = [head] + [str(it) for it in self.failures[:20]]
        if len(self.failures) > 20:
            lines.append(f"... and {len(self.failures) - 20} more failures")
        return "\n".join(lines)
