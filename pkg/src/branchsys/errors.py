"""Exception types shared across the package."""

from __future__ import annotations


class BranchSysError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(BranchSysError, ValueError):
    """A JSON document does not conform to the expected schema.

    Messages carry a JSON-path-style location (for example ``f.e2[0].a``)
    plus the offending value, so callers can report precisely what is wrong
    with an input file.
    """


class SupportError(BranchSysError, ValueError):
    """A point or a function's support lies outside the allowed region.

    Carries the offending region (an IntervalSet) when one is known, so
    callers can report exactly which mass violates a hypothesis.
    """

    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending


class InvalidSystemError(BranchSysError, ValueError):
    """An operation required a valid branching system but got violations."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class DegreeLimitError(BranchSysError, ArithmeticError):
    """A polynomial product exceeded the supported maximum degree."""


class PieceLimitError(BranchSysError, RuntimeError):
    """A piecewise function grew past the configured piece budget."""
