"""JSON verification reports shared by every check."""
import json
import math
from typing import Any, Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

Status = Literal["pass", "fail", "inconclusive"]


def jsonable(value: Any) -> Any:
    """numpy and non-finite floats into JSON-safe values (inf -> "inf")."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


class VerificationReport(BaseModel):
    """Outcome of one numeric check: {check, status, worst_violation, witness}."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    check: str
    status: Status
    worst_violation: float = 0.0
    tolerance: Optional[float] = None
    witness: Optional[Dict[str, Any]] = None
    samples: int = 0
    inconclusive: int = 0
    notes: List[str] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> Dict[str, Any]:
        return jsonable(self.model_dump())

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class ViolationTracker:
    """Accumulates per-sample violations and keeps the worst witness."""

    def __init__(self, check: str, tolerance: Optional[float]):
        self.check = check
        self.tolerance = tolerance
        self.worst = 0.0
        self.witness: Optional[Dict[str, Any]] = None
        self.samples = 0
        self.failures = 0
        self.inconclusive = 0
        self.notes: List[str] = []

    def record(self, violation: float, failed: bool, **witness: Any) -> None:
        self.samples += 1
        if failed:
            self.failures += 1
        if self.witness is None or violation > self.worst:
            self.worst = violation
            self.witness = witness

    def skip(self, reason: str) -> None:
        self.inconclusive += 1
        if reason not in self.notes and len(self.notes) < 10:
            self.notes.append(reason)

    def report(self, partial_ok: bool = False, **details: Any) -> VerificationReport:
        """Status: fail on any failure; inconclusive when nothing was decided,
        or when anything was skipped unless `partial_ok`."""
        if self.failures:
            status = "fail"
        elif self.samples == 0 or (self.inconclusive and not partial_ok):
            status = "inconclusive"
        else:
            status = "pass"
        return VerificationReport(
            check=self.check, status=status, worst_violation=self.worst,
            tolerance=self.tolerance, witness=jsonable(self.witness) if self.witness else None,
            samples=self.samples, inconclusive=self.inconclusive,
            notes=list(self.notes), details=jsonable(details),
        )


def combine(check: str, reports: List[VerificationReport]) -> VerificationReport:
    """Aggregate sub-reports: any fail fails, then any inconclusive."""
    statuses = {r.status for r in reports}
    if "fail" in statuses:
        status = "fail"
    elif "inconclusive" in statuses or not reports:
        status = "inconclusive"
    else:
        status = "pass"
    worst = max(reports, key=lambda r: r.worst_violation, default=None)
    return VerificationReport(
        check=check, status=status,
        worst_violation=worst.worst_violation if worst else 0.0,
        tolerance=worst.tolerance if worst else None,
        witness=worst.witness if worst else None,
        samples=sum(r.samples for r in reports),
        inconclusive=sum(r.inconclusive for r in reports),
        details={'parts': [r.to_dict() for r in reports]},
    )
