"""
Verification records: one inequality check with its provenance.
"""
from __future__ import annotations

import dataclasses
import math
import typing as t

from tlab_hardy import errors, utils

PASS_RTOL = 1e-9
"""Relative slack on the right-hand side of every inequality check."""

CSV_HEADER = (
    "function",
    "eta",
    "lhs",
    "rhs",
    "margin",
    "quad_err",
    "pass",
    "converged",
)


@dataclasses.dataclass(frozen=True)
class VerifyRecord:
    """
    The outcome of checking ``lhs <= rhs`` numerically.

    The check passes iff both sides converged and
    ``lhs <= rhs * (1 + rtol) + quad_err``.
    """

    function_id: str
    """Spec string of the function under test."""
    eta_angle: float | None
    """Angle of the rotation parameter, None when the check has none."""
    lhs: float
    rhs: float
    quad_err: float = 0.0
    """Combined quadrature error of both sides."""
    converged: bool = True
    rtol: float = PASS_RTOL

    @classmethod
    def failed(
        cls,
        function_id: str,
        eta_angle: float | None,
        error: errors.QuadratureError,
        rhs: float = float("nan"),
    ) -> VerifyRecord:
        """
        A record for a check whose quadrature did not converge.
        """
        return cls(
            function_id,
            eta_angle,
            float(error.result.value.real),
            rhs,
            float(error.result.err_est),
            converged=False,
        )

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.converged and self.lhs <= self.rhs * (1 + self.rtol) + self.quad_err

    @property
    def violation(self) -> float:
        """
        How far the left-hand side exceeds the tolerated bound, 0 if it does not.

        Infinite for a record that did not converge.
        """
        if not self.converged:
            return math.inf
        excess = self.lhs - self.rhs * (1 + self.rtol) - self.quad_err
        return excess if excess > 0 else 0.0

    def to_dict(self) -> dict[str, t.Any]:
        return {
            "function": self.function_id,
            "eta": (
                None if self.eta_angle is None else utils.finite_or_none(self.eta_angle)
            ),
            "lhs": utils.finite_or_none(self.lhs),
            "rhs": utils.finite_or_none(self.rhs),
            "margin": utils.finite_or_none(self.margin),
            "quad_err": utils.finite_or_none(self.quad_err),
            "pass": self.passed,
            "converged": self.converged,
        }
