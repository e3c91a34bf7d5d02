"""Pass/fail reports shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .exactalg import Poly

MAX_RECORDED = 5


@dataclass
class Failure:
    entry: Any
    residual: Any = None

    def to_json(self) -> dict:
        res = self.residual
        if isinstance(res, Poly):
            res = res.to_json()
        elif res is not None and not isinstance(res, (str, int, list, dict)):
            res = str(res)
        return {"entry": self.entry, "residual": res}


@dataclass
class Report:
    identity: str
    passed: bool = True
    failures: List[Failure] = field(default_factory=list)
    n_failures: int = 0
    details: Dict[str, Any] = field(default_factory=dict)
    conjectural: bool = False
    skipped: Optional[str] = None

    def fail(self, entry, residual=None) -> None:
        self.passed = False
        self.n_failures += 1
        if len(self.failures) < MAX_RECORDED:
            self.failures.append(Failure(entry, residual))

    def absorb(self, other: "Report", prefix: str = "") -> None:
        """Fold another report's failures into this one."""
        if not other.passed:
            self.passed = False
            self.n_failures += other.n_failures
            for f in other.failures:
                if len(self.failures) < MAX_RECORDED:
                    self.failures.append(Failure([prefix or other.identity, f.entry], f.residual))

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        out = {"identity": self.identity, "pass": self.passed,
               "failures": [f.to_json() for f in self.failures]}
        if self.n_failures > len(self.failures):
            out["n_failures"] = self.n_failures
        if self.conjectural:
            out["conjectural"] = True
        if self.skipped:
            out["skipped"] = self.skipped
        if self.details:
            out["details"] = _jsonable(self.details)
        return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Poly):
        return x.to_json()
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)
