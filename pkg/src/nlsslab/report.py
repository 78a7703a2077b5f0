"""Structured results for identity checks.

Every check in the library produces a :class:`CheckReport`.  A report
passes when its residual meets the tolerance on the declared domain,
or, for discretization-limited identities, when the estimated
convergence order reaches the declared order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    check: str
    params: dict = field(default_factory=dict)
    residual: float = 0.0
    tolerance: float = 0.0
    domain: str = ""
    order_estimate: float | None = None
    order_required: float | None = None
    runtime_ms: float = 0.0

    @property
    def passed(self) -> bool:
        if self.residual <= self.tolerance:
            return True
        return (self.order_estimate is not None
                and self.order_required is not None
                and self.order_estimate >= self.order_required)

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "domain": self.domain,
            "order_estimate": self.order_estimate,
            "order_required": self.order_required,
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def halving_order(residuals) -> float | None:
    """Worst pairwise convergence order across a grid-halving ladder.

    Residual pairs (r_i, r_{i+1}) at spacings (h, h/2) each give the
    estimate log2(r_i / r_{i+1}); the minimum is reported so a single
    non-decreasing step cannot be hidden by a good later one.  An exact
    zero anywhere means the ladder is better than any finite order.
    """
    rs = list(residuals)
    if len(rs) < 2:
        return None
    if any(r < 0 for r in rs):
        raise ValueError("residuals must be nonnegative")
    if any(r == 0 for r in rs):
        return math.inf
    return min(math.log2(rs[i] / rs[i + 1]) for i in range(len(rs) - 1))
