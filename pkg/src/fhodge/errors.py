"""Exception hierarchy shared by every layer of the package.

Validators raise :class:`ValidationFailure` with a stable ``code`` string so
that callers (and the CLI) can report the failed axiom without parsing
messages.  ``InternalError`` marks conditions that are mathematically
guaranteed for valid inputs; seeing one means the library itself is wrong.
"""

from __future__ import annotations


class FHError(Exception):
    """Base class for all package errors."""

    code = "error"

    def __init__(self, message: str = "", details=None):
        super().__init__(message or self.code)
        self.message = message or self.code
        self.details = details

    def report(self) -> dict:
        rep = {"code": self.code, "message": self.message}
        if self.details is not None:
            rep["details"] = self.details
        return rep


class MalformedInput(FHError):
    """Input that does not even parse against the documented schema."""

    code = "malformed_input"


class ValidationFailure(FHError):
    """A well-formed object or morphism that violates a defining axiom."""

    code = "validation_failure"

    def __init__(self, code: str, message: str = "", details=None):
        self.code = code
        super().__init__(message or code, details)


class NotComposable(FHError):
    code = "not_composable"


class NotSpecial(FHError):
    code = "not_special"


class NotConnected(FHError):
    code = "not_connected"


class NotEtale(FHError):
    code = "not_etale"


class NotFree(FHError):
    code = "not_free"


class NotAlternatingError(FHError):
    code = "not_alternating"


class InternalError(FHError):
    """A theorem-backed postcondition failed; this is a library bug."""

    code = "internal_error"
