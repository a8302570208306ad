"""Structured results of verification runs.

Every check in the package (identity grids, bijection replays, series
comparisons, CLI counts) produces an EvalReport.  Reports serialize to JSON
with sorted keys so that a given configuration always produces byte-identical
output.  Exact scalar values appear as decimal strings ("30") or "p/q"
strings ("2/3"); structural tallies (class sizes, point counts) stay plain
integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

__all__ = ["EvalReport", "VERDICT_EQUAL", "VERDICT_MISMATCH", "VERDICT_PASS", "VERDICT_FAIL"]

VERDICT_EQUAL = "equal"
VERDICT_MISMATCH = "mismatch"
VERDICT_PASS = "pass"
VERDICT_FAIL = "fail"

_OK = {VERDICT_EQUAL, VERDICT_PASS}


@dataclass
class EvalReport:
    """Result of one check.

    check: what was verified (identity id, "shift-bijection", ...).
    params: the exact parameter values the check ran with.
    left/right: formatted side values for single-point evaluations.
    verdict: "equal"/"mismatch" for value comparisons, "pass"/"fail" for
        structural verifications.
    grid: grid metadata for degree-bounded checks (points per variable,
        degree bounds, pole skips).
    counterexample: full context of the first failure, enough to re-run it.
    details: check-specific extras (case tallies, class sizes, notes).
    """

    check: str
    params: dict[str, Any] = field(default_factory=dict)
    verdict: str = VERDICT_PASS
    left: Optional[str] = None
    right: Optional[str] = None
    grid: Optional[dict[str, Any]] = None
    counterexample: Optional[dict[str, Any]] = None
    details: Optional[dict[str, Any]] = None

    @property
    def ok(self) -> bool:
        return self.verdict in _OK

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "check": self.check,
            "params": self.params,
            "verdict": self.verdict,
        }
        if self.left is not None:
            out["left"] = self.left
        if self.right is not None:
            out["right"] = self.right
        if self.grid is not None:
            out["grid"] = self.grid
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details is not None:
            out["details"] = self.details
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    def summary(self) -> str:
        """One-line human rendering."""
        bits = [f"{self.check}: {self.verdict}"]
        if self.params:
            bits.append(" ".join(f"{k}={v}" for k, v in sorted(self.params.items())))
        if not self.ok and self.counterexample:
            bits.append(f"counterexample: {json.dumps(self.counterexample, sort_keys=True)}")
        return "  ".join(bits)
