"""Exception types raised by the numerical core."""

from __future__ import annotations

from typing import Optional

from ._constants import EXIT_DATA_ERROR, EXIT_DEGENERATE


class HyperlimError(Exception):
    """Base class for every hyperlim error."""

    exit_code: int = EXIT_DATA_ERROR


class InputError(HyperlimError, ValueError):
    """An argument violates a documented precondition."""


class CapacityError(HyperlimError):
    """An exact computation was requested above its enumeration cap."""


class DegeneracyError(HyperlimError, ArithmeticError):
    """A degree (or degree-like) quantity vanishes where it must not.

    Attributes:
        index: The vertex or part at which the degeneracy was detected.
    """

    exit_code = EXIT_DEGENERATE

    def __init__(self, message: str, *, index: Optional[int] = None) -> None:
        super().__init__(message)
        self.index = index
