from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    """Outcome of checking an identity on one or more instances.

    ``counterexample`` holds enough JSON-ready data to rerun the failing
    instance on its own.
    """

    check: str
    passed: bool
    checked: int = 1
    counterexample: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict[str, Any]:
        out = {"check": self.check, "verdict": "pass" if self.passed else "counterexample",
               "checked": self.checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out

    @classmethod
    def merge(cls, check: str, verdicts, **details) -> Verdict:
        total = 0
        for v in verdicts:
            total += v.checked
            if not v.passed:
                return cls(check, False, total, v.counterexample, {**details, **v.details})
        return cls(check, True, total, None, details)
