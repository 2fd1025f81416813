"""Small result container shared by the consistency checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    check: str
    subject: str
    failures: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        lines = [f"{self.check} {self.subject}: {status}"]
        lines += [f"  failure: {f}" for f in self.failures]
        lines += [f"  skipped: {s}" for s in self.skipped]
        return "\n".join(lines)
