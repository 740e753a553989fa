"""Structured results of identity and inequality checks."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

LOWER = "lower"  # pass iff lhs >= rhs (within tolerance)
UPPER = "upper"  # pass iff lhs <= rhs (within tolerance)
EQUALITY = "equality"  # pass iff slack below tolerance


@dataclass
class BoundReport:
    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def direction(self) -> str:
        return self.metadata.get("direction", EQUALITY)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "pass": bool(self.passed),
            "metadata": _jsonable(self.metadata),
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] {self.name}: lhs={self.lhs:.6g} rhs={self.rhs:.6g} slack={self.slack:.3g}"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if hasattr(obj, "to_dict"):
        return _jsonable(obj.to_dict())
    return obj


def dumps(obj) -> str:
    # json writes floats with repr, i.e. 17 significant digits round-trip
    return json.dumps(_jsonable(obj), indent=2, sort_keys=False)


def combine(name: str, reports: list[BoundReport]) -> BoundReport:
    """Aggregate a suite of reports: pass iff every member passed.

    The aggregate slack is the worst member slack: the largest discrepancy
    for equality checks, the smallest margin for one-sided bounds.  Members
    flagged ``trivial`` (their bound is vacuous) are left out of the worst
    slack but still count as cases.
    """
    failed = [r for r in reports if not r.passed]
    direction = reports[0].direction if reports else EQUALITY
    slacks = [r.slack for r in reports if not r.metadata.get("trivial")]
    trivial = len(reports) - len(slacks)
    if not slacks:
        worst = 0.0
    else:
        worst = max(slacks) if direction == EQUALITY else min(slacks)
    return BoundReport(
        name=name,
        lhs=float(len(reports) - len(failed)),
        rhs=float(len(reports)),
        slack=worst,
        passed=not failed,
        metadata={
            "direction": direction,
            "aggregate": True,
            "cases": len(reports),
            "failed": len(failed),
            "trivial_cases": trivial,
            "failures": [r.to_dict() for r in failed[:20]],
        },
    )
