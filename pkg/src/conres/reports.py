"""Small result records shared by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one numerical identity check.

    Attributes:
        name: short identifier of the identity.
        residual: max-norm discrepancy between the two sides.
        tolerance: threshold the residual is compared against.
        details: free-form extra numbers (margins, both sides, ...).
    """

    name: str
    residual: float
    tolerance: float
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34s} residual={self.residual:.3e}  tol={self.tolerance:.1e}"


def max_abs(a) -> float:
    import numpy as np

    a = np.asarray(a, dtype=float)
    return float(np.max(np.abs(a))) if a.size else 0.0
