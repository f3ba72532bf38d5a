from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive check: pass, or fail with the first witness.

    ``witness`` holds coordinate tuples of the offending elements in the
    order the identity quantifies them.
    """

    ok: bool
    identity: str
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, identity: str, detail: str = "") -> "Verdict":
        return cls(True, identity, None, detail)

    @classmethod
    def failed(cls, identity: str, witness: tuple, detail: str = "") -> "Verdict":
        return cls(False, identity, tuple(tuple(int(c) for c in w) for w in witness), detail)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"identity": self.identity, "passed": self.ok}
        if self.witness is not None:
            out["witness"] = [list(w) for w in self.witness]
        if self.detail:
            out["detail"] = self.detail
        return out


class AxiomViolation(ValueError):
    def __init__(self, verdict: Verdict):
        super().__init__(f"{verdict.identity} fails at {verdict.witness} {verdict.detail}".strip())
        self.verdict = verdict


@dataclass
class CheckLog:
    """Named verdicts accumulated by a multi-step procedure."""

    checks: list[tuple[str, Verdict]] = field(default_factory=list)

    def add(self, name: str, verdict: Verdict) -> Verdict:
        self.checks.append((name, verdict))
        return verdict

    @property
    def ok(self) -> bool:
        return all(v.ok for _, v in self.checks)

    def failures(self) -> list[tuple[str, Verdict]]:
        return [(n, v) for n, v in self.checks if not v.ok]

    def to_json(self) -> list[dict[str, Any]]:
        return [{"check": n, **v.to_json()} for n, v in self.checks]
