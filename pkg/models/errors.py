"""
Error types shared by the services, the CLI and the HTTP API.

Every error carries a stable upper-case ``code`` and the process exit code
the command-line front end reports for it.
"""
from typing import Optional


class NumeransError(Exception):
    """Base class for all domain and input errors."""

    code = "NUMERANS_ERROR"
    exit_code = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InputError(NumeransError):
    """Malformed input: unknown letter, bad literal, bad option value."""

    code = "INPUT_ERROR"
    exit_code = 1


class DfaSyntaxError(InputError):
    """A DFA text file could not be parsed."""

    code = "DFA_SYNTAX_ERROR"

    def __init__(self, message: str, line_number: Optional[int] = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class NotInLanguageError(NumeransError):
    """A word that must belong to the numeration language does not."""

    code = "NOT_IN_LANGUAGE"


class PreconditionError(NumeransError):
    """An operation was called outside its domain (non-center word, x outside [s0, 1], ...)."""

    code = "PRECONDITION_FAILED"


class AmbiguousError(NumeransError):
    """Enclosures could not separate a value from an interval boundary."""

    code = "AMBIGUOUS"

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


class UnsupportedOperationError(NumeransError):
    """The operation is not available for this kind of automaton."""

    code = "UNSUPPORTED_OPERATION"


class GuardExceededError(NumeransError):
    """A brute-force enumeration would exceed its configured size guard."""

    code = "GUARD_EXCEEDED"


# Messages shown by the front ends when an error carries no detail of its own
ERROR_MESSAGES = {
    "INPUT_ERROR": "The input could not be understood.",
    "DFA_SYNTAX_ERROR": "The automaton file is malformed.",
    "NOT_IN_LANGUAGE": "The word is not in the numeration language.",
    "PRECONDITION_FAILED": "The operation is not defined for this input.",
    "AMBIGUOUS": "The value lies too close to an interval boundary to decide.",
    "UNSUPPORTED_OPERATION": "The operation is not supported for this automaton.",
    "GUARD_EXCEEDED": "The enumeration is too large.",
}


def describe_error(error: NumeransError) -> str:
    """
    Build the one-line diagnostic printed for an error.

    Args:
        error: The raised error

    Returns:
        Text of the form ``error[CODE]: message``
    """
    message = error.message or ERROR_MESSAGES.get(error.code, "Unknown error.")
    return f"error[{error.code}]: {message}"
