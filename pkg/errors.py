#!/usr/bin/env python3
"""
Error model for ritt-kit.

Every failure carries the CLI exit status it maps to, so the command layer
never has to guess: 2 for bad input, 3 for resource caps, 4 when an answer
needs a larger coefficient field.
"""

from typing import Any, Dict, List, Optional


class RittKitError(Exception):
    """Base class for every error raised by the library."""

    exit_status = 2

    def __init__(self, message: str, *, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details: Dict[str, Any] = dict(details or {})

    def to_document(self) -> Dict[str, Any]:
        doc = {"type": type(self).__name__, "message": str(self)}
        if self.details:
            doc["details"] = self.details
        return doc


class InputError(RittKitError):
    """Malformed or inconsistent input."""


class ParseError(InputError):
    """Polynomial text that does not follow the grammar."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}", details={"position": position, "text": text})
        self.position = position


class FieldMismatch(InputError):
    """Operands live over different coefficient fields."""


class DegreeMismatch(InputError):
    """Degrees that cannot divide each other as the operation requires."""


class HypothesisViolation(InputError):
    """A stated precondition of a construction does not hold."""


class BadReduction(InputError):
    """The input does not have good reduction at the requested prime."""

    def __init__(self, message: str, prime: int, condition: str):
        super().__init__(message, details={"prime": prime, "condition": condition})
        self.prime = prime
        self.condition = condition


class ResourceCapExceeded(RittKitError):
    """A configured degree, height or search cap was hit."""

    exit_status = 3

    def __init__(self, message: str, *, cap: str, limit: int, transcript: Optional[List[str]] = None):
        details = {"cap": cap, "limit": limit}
        if transcript:
            details["transcript"] = list(transcript)
        super().__init__(message, details=details)
        self.cap = cap
        self.limit = limit
        self.transcript = list(transcript or [])


class CurveCollapsed(RittKitError):
    """Elimination degenerated while pushing a curve forward."""


class FieldExtensionRequired(RittKitError):
    """The answer exists only after adjoining a root to the current field."""

    exit_status = 4

    def __init__(self, message: str, *, equation: str, hint: Optional[int] = None,
                 partial: Optional[Dict[str, Any]] = None):
        details: Dict[str, Any] = {"equation": equation}
        if hint is not None:
            details["hint"] = f"Q(zeta {hint})"
        if partial:
            details["partial"] = partial
        super().__init__(message, details=details)
        self.equation = equation
        self.hint = hint
        self.partial = dict(partial or {})


class ComputationAborted(RittKitError):
    """An unexpected failure inside a computation: arithmetic overflow, memory, or a failed self-check."""

    exit_status = 3

    def __init__(self, cause: BaseException):
        super().__init__(f"computation aborted: {type(cause).__name__}: {cause}",
                         details={"cause": type(cause).__name__})
        self.cause = cause
