"""Diagnostic results returned by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check; ``violation`` names the first failed condition."""

    ok: bool
    violation: str | None = None
    detail: Any = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "violation": self.violation, "detail": _plain(self.detail)}


PASS = Verdict(True)


def fail(violation: str, detail: Any = None) -> Verdict:
    return Verdict(False, violation, detail)


def _plain(x: Any) -> Any:
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x
