"""Result records shared by every inequality evaluator."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = ["FAIL", "INAPPLICABLE", "DEGENERATE", "PASS", "RatioReport", "RelationReport", "relation_tolerance"]

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"
DEGENERATE = "degenerate"
STATUSES = (PASS, FAIL, INAPPLICABLE, DEGENERATE)


def relation_tolerance(rhs: float, rel: float = 1e-9) -> float:
    return rel * max(1.0, abs(rhs)) if math.isfinite(rhs) else rel


@dataclass(frozen=True)
class RelationReport:
    """One evaluation of an inequality ``lhs >= rhs``.

    ``passed`` is the bare numerical comparison ``slack >= -tolerance``.
    ``status`` additionally knows whether the inequality made a claim at all:
    cases outside a theorem's hypotheses are ``inapplicable`` and point-mass
    distributions are ``degenerate``; neither counts as a failure.
    """

    relation_id: str
    lhs: float
    rhs: float
    tolerance: float
    status: str = ""
    context: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.status:
            object.__setattr__(self, "status", PASS if self.passed else FAIL)
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.slack >= -self.tolerance

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_dict(self) -> dict[str, Any]:
        return {
            "relation_id": self.relation_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "status": self.status,
            "context": _plain(self.context),
        }


@dataclass(frozen=True)
class RatioReport:
    """``2 * std / width`` compared against ``sqrt(1 - sin 1)``."""

    delta_big: float
    delta_small: float
    bound: float
    degenerate: bool = False

    @property
    def ratio(self) -> float:
        if self.delta_small == 0:
            return math.inf
        return 2.0 * self.delta_big / self.delta_small

    def as_relation(self, tolerance: float = 1e-9, context: dict | None = None) -> RelationReport:
        ctx = {"delta_big": self.delta_big, "delta_small": self.delta_small}
        ctx.update(context or {})
        return RelationReport(
            "ratio_check",
            self.ratio,
            self.bound,
            tolerance,
            status=DEGENERATE if self.degenerate else "",
            context=ctx,
        )


def _plain(obj):
    """Convert numpy scalars/arrays in a context dict to JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj
