"""Exception types shared across the pipeline."""


class QuarticForgeError(Exception):
    """Base class for all errors raised by this package."""


class InputError(QuarticForgeError):
    """Rejected input polynomial; ``code`` is a stable machine-readable tag
    such as ``PARSE``, ``WRONG_DEGREE``, ``INSEPARABLE`` or ``REDUCIBLE``."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class NotUsableError(QuarticForgeError):
    """The prime divides lc(f) * disc(f); skip it."""


class ValidationError(QuarticForgeError):
    """Embedded data (e.g. a character table) failed a consistency check."""
