"""Exception hierarchy shared by all modules."""


class TypeBError(Exception):
    """Base class for library errors."""


class UsageError(TypeBError, ValueError):
    """Caller violated a precondition (wrong registry, bad move, unsolved parameters)."""


class ParseError(UsageError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at token {position})"
        super().__init__(message)


class DomainError(TypeBError, ArithmeticError):
    """Division by an identically vanishing quantity, non-invertible element, pole."""


class DegeneracyError(DomainError):
    """A parameter specialization makes the construction degenerate."""


class NonConfluenceError(TypeBError):
    """Closure of a presentation did not stabilise within its dimension bound."""

    def __init__(self, message: str, word=None):
        self.word = word
        if word is not None:
            message = f"{message}; offending word {word}"
        super().__init__(message)


class CapabilityError(TypeBError):
    """Input is outside what a routine can handle (size bounds, unsupported shape)."""


class InconsistentSystemError(TypeBError):
    """A linear system over the coefficient field has no solution."""
