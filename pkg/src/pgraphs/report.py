from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a checker: violations make it fail, flags are advisory.

    Flags record window-boundary skips and truncated searches; they never make
    a report fail on their own.
    """

    name: str
    violations: list[dict] = field(default_factory=list)
    flags: list[dict] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def violation(self, message: str, **witness) -> None:
        self.violations.append({"message": message, **{k: str(v) for k, v in witness.items()}})

    def flag(self, message: str, **witness) -> None:
        self.flags.append({"message": message, **{k: str(v) for k, v in witness.items()}})

    @property
    def witness(self) -> dict | None:
        return self.violations[0] if self.violations else None

    def merge(self, other: "Report") -> "Report":
        self.violations.extend(other.violations)
        self.flags.extend(other.flags)
        self.checked += other.checked
        return self

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name}: {self.checked} checks, {len(self.violations)} violations"
        if self.flags:
            line += f", {len(self.flags)} flags"
        if self.violations:
            line += f"; first: {self.violations[0]}"
        return line

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "checked": self.checked,
            "violations": self.violations,
            "flags": self.flags,
            "info": {k: v for k, v in self.info.items()},
        }
