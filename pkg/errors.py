"""
Errors Module - exception hierarchy shared by every computation module.

Library functions raise; kron_service turns these into report dicts with a
"status" and an "error" message, and the CLI maps them onto exit codes.
"""

from typing import Any, Optional


class KronError(Exception):
    """Base class for every error raised by the package."""

    status = "error"
    exit_code = 1


class InvalidInputError(KronError, ValueError):
    """Malformed data, shape or degree mismatch, or a violated precondition."""

    status = "invalid"
    exit_code = 2


class PropertyViolation(KronError):
    """An asserted invariant failed on concrete data."""

    status = "violation"
    exit_code = 1

    def __init__(self, message: str, criterion: Optional[str] = None, witness: Any = None):
        super().__init__(message)
        self.criterion = criterion
        self.witness = witness
