"""Structured pass/fail reports shared by the checkers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    status: str = "pass"  # pass | fail | truncated
    details: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def fail(self, **info) -> None:
        self.status = "fail"
        self.details.append(info)

    def note(self, **info) -> None:
        self.details.append(info)

    def merge(self, other: "Report") -> "Report":
        if other.status == "fail":
            self.status = "fail"
        elif other.status == "truncated" and self.status == "pass":
            self.status = "truncated"
        self.details.extend(other.details)
        self.tables.update(other.tables)
        self.checked += other.checked
        return self

    def to_json(self) -> dict:
        return {"status": self.status, "checked": self.checked,
                "details": self.details, "tables": self.tables}

    def to_text(self) -> str:
        lines = [f"status: {self.status}  (checked {self.checked} instances)"]
        for name, table in self.tables.items():
            lines.append(f"{name}:")
            if isinstance(table, dict):
                for k, v in table.items():
                    lines.append(f"  {k}: {v}")
            else:
                lines.append(f"  {table}")
        for d in self.details:
            lines.append("  - " + ", ".join(f"{k}={v}" for k, v in d.items()))
        return "\n".join(lines)
