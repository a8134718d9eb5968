from __future__ import annotations

import typing as t

if t.TYPE_CHECKING:
    from tlab_hardy import quadrature


class HardyError(Exception):
    """
    Base class for errors raised by tlab_hardy.
    """


class DomainError(HardyError, ValueError):
    """
    An argument lies outside the domain of an operation.
    """


class SpecError(HardyError, ValueError):
    """
    A function spec string does not match the mini-grammar.
    """

    def __init__(self, message: str, spec: str, position: int) -> None:
        super().__init__(f"{message} at position {position}: {spec!r}")
        self.spec = spec
        """The offending spec string."""
        self.position = position
        """Character offset of the offending token."""


class QuadratureError(HardyError, ArithmeticError):
    """
    A quadrature did not converge within its node budget.
    """

    def __init__(self, message: str, result: quadrature.QuadResult) -> None:
        super().__init__(message)
        self.result = result
        """The best estimate reached, with ``converged`` set to False."""
