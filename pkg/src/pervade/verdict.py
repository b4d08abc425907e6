from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Status(str, Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    NOT_FOUND_WITHIN_CAP = "not_found_within_cap"
    TIMEOUT = "timeout"


@dataclass(frozen=True)
class Verdict:
    """Accept, or Reject naming the first violated clause and the offending vertices."""

    accepted: bool
    clause: str | None = None
    detail: str = ""
    witness: tuple = ()
    info: dict[str, Any] = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.accepted

    @classmethod
    def accept(cls, **info) -> "Verdict":
        return cls(True, info=info)

    @classmethod
    def reject(cls, clause: str, detail: str = "", *witness) -> "Verdict":
        return cls(False, clause, detail, tuple(witness))

    @classmethod
    def timeout(cls, detail: str = "budget exhausted") -> "Verdict":
        return cls(False, "timeout", detail, info={"timeout": True})

    @property
    def timed_out(self) -> bool:
        return bool(self.info.get("timeout"))

    def __str__(self) -> str:
        if self.timed_out:
            return "Timeout"
        if self.accepted:
            return "Accept"
        return f"Reject({self.clause}: {self.detail})"
