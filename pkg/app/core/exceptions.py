"""
Domain exceptions
Raised by services, mapped to exit codes by the CLI and to status codes by the API
"""
from typing import Optional


class KratzerError(Exception):
    """Base class for every error raised by the toolkit"""

    exit_code: int = 3


class UsageError(KratzerError, ValueError):
    """Invalid flags, mismatched grids, unknown suites"""

    exit_code = 2


class ParseError(KratzerError, ValueError):
    """Malformed molecule table row"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnitError(KratzerError, ValueError):
    """Unit tag outside the allowed set"""

    def __init__(self, tag: str, allowed: tuple, line: Optional[int] = None):
        self.tag = tag
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}unknown unit '{tag}' (allowed: {', '.join(allowed)})")


class DomainError(KratzerError, ValueError):
    """Argument outside the mathematical domain (r <= 0, alpha >= 0, ...)"""


class NumericError(KratzerError, ArithmeticError):
    """Non-finite result or non-converged numerical procedure"""

    def __init__(self, message: str, achieved: Optional[float] = None):
        self.achieved = achieved
        if achieved is not None:
            message = f"{message} (achieved error estimate {achieved:.3e})"
        super().__init__(message)


class RangeError(KratzerError, OverflowError):
    """Result not representable as a float"""

    def __init__(self, message: str, threshold: float):
        self.threshold = threshold
        super().__init__(f"{message} (threshold {threshold:g})")


class BoxTooSmallError(NumericError):
    """Solve box holds fewer bound states than requested"""

    def __init__(self, found: int, requested: int, suggested_r_max: float):
        self.found = found
        self.requested = requested
        self.suggested_r_max = suggested_r_max
        super().__init__(
            f"only {found} of {requested} bound states found in the box; "
            f"retry with r_max >= {suggested_r_max:.6g}"
        )


class ConsistencyError(KratzerError, AssertionError):
    """Internal invariant violated; indicates a bug, never user input"""
