"""Exception hierarchy shared by every pipeline stage."""

from __future__ import annotations

from typing import Optional


class HintError(Exception):
    """Base class for all mutual-hint failures."""


class ValidationError(HintError, ValueError):
    """Input data or an argument violates a documented invariant."""


class ParseError(ValidationError):
    def __init__(self, message: str, path: str = "", line_number: int = 0):
        self.path = path
        self.line_number = line_number
        location = f"{path}:{line_number}: " if path else f"line {line_number}: "
        super().__init__(f"{location}{message}")


class ConfigError(ValidationError):
    """Configuration is inconsistent (bad weights, penalty without anchors, ...)."""


class NumericalError(HintError, ArithmeticError):
    def __init__(self, message: str, iteration: Optional[int] = None):
        self.iteration = iteration
        if iteration is not None:
            message = f"{message} (iteration {iteration})"
        super().__init__(message)


class StepTooLargeError(NumericalError):
    """The Cayley system (I + tau/2 A) could not be solved; halve tau and retry."""


__all__ = [
    "HintError",
    "ValidationError",
    "ParseError",
    "ConfigError",
    "NumericalError",
    "StepTooLargeError",
]
