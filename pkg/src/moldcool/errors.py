"""Exception types shared by the moldcool modules."""

from __future__ import annotations


class MoldcoolError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(MoldcoolError, ValueError):
    """A record or input violates one of its invariants.

    Attributes:
        field: Name of the offending field.
        rule: Short statement of the violated invariant.
        record: Name of the record being validated, if known.
    """

    def __init__(self, field: str, rule: str, record: str | None = None):
        self.field = field
        self.rule = rule
        self.record = record
        where = f"{record}: " if record else ""
        super().__init__(f"{where}field '{field}' violates: {rule}")


class DomainError(MoldcoolError, ValueError):
    """Inputs are individually valid but outside the model's domain."""


class AlreadyEjectableError(DomainError):
    """The one-term cooling model predicts the part is already below ejection temperature."""


class ConvergenceError(MoldcoolError, RuntimeError):
    """An iterative or time-marching computation failed to reach its target."""


class FileFormatError(MoldcoolError):
    """A data file is missing, unreadable, or not in the documented format."""
