"""
Errors - Exception hierarchy for the d-invariant toolkit.

Each error class carries the exit code the command-line interface uses when
the error escapes a subcommand.
"""


class HFSurgeryError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class InvalidInputError(HFSurgeryError, ValueError):
    """Malformed or invalid user input (bad syntax, gcd violation, ...)."""

    exit_code = 2


class MethodInapplicableError(HFSurgeryError):
    """The requested computation does not apply to this input."""

    exit_code = 3


class DegenerateFormError(MethodInapplicableError):
    """Singular intersection form: the boundary is not a QHS^3."""


class InternalError(HFSurgeryError):
    """A consistency check failed; signals a bug rather than bad input."""

    exit_code = 1
