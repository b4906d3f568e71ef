class MstabError(Exception):
    """Base class for errors raised by this package."""


class InvariantViolation(MstabError, AssertionError):
    """An internal consistency check failed (corrupt tableau or state).

    This always indicates a bug or a tampered state file, never bad user input.
    """


class OperatorSyntaxError(MstabError, ValueError):
    """Malformed operator expression; ``offset`` is the 0-based column of the bad token."""

    def __init__(self, message, offset=0):
        super().__init__(message)
        self.offset = offset


class CircuitParseError(MstabError, ValueError):
    kind = "parse-error"

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.reason = message
        self.line = line
        self.column = column


class UnknownMnemonic(CircuitParseError):
    kind = "unknown-mnemonic"


class SiteOutOfRange(CircuitParseError):
    kind = "site-out-of-range"


class MalformedOperator(CircuitParseError):
    kind = "malformed-operator"


class InvalidRotation(CircuitParseError):
    kind = "invalid-rotation"


class StateFormatError(MstabError, ValueError):
    """State dump could not be decoded."""


class MalformedLine(CircuitParseError):
    """Missing or bad ``n`` header, wrong argument count, or a non-integer site."""
    kind = "malformed-line"
