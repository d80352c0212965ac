"""Verdict and report records shared by the predicate and harness modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decidable check, with a witness when it fails.

    For separation axioms `kind` is the axiom tag; for map predicates it names
    the predicate.  A false verdict always carries a checkable witness.
    """

    kind: str
    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {"kind": self.kind, "holds": self.holds, "witness": self.witness}


@dataclass
class PropertyReport:
    """Result of running a registered property over an instance stream.

    Either `counterexample` (a re-checkable serialized instance plus witness)
    or `exhausted` (exact enumeration bounds) is set on completion; a random
    run that found nothing reports trials/passed with neither field.
    """

    property_id: str
    mode: str  # "exhaustive" | "random" | "builtin"
    trials: int = 0
    passed: int = 0
    counterexample: Optional[dict] = None
    exhausted: Optional[dict] = None
    wall_time_s: float = 0.0
    notes: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        return {
            "property": self.property_id,
            "mode": self.mode,
            "trials": self.trials,
            "passed": self.passed,
            "counterexample": self.counterexample,
            "exhausted": self.exhausted,
            "wall_time_s": self.wall_time_s,
            "notes": list(self.notes),
        }
