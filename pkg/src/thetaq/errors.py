"""Exception hierarchy shared by every module."""


class ThetaqError(Exception):
    """Base class. ``span`` is filled in by the DSL evaluator when known."""

    span = None


class DomainError(ThetaqError, ValueError):
    pass


class ConvergenceError(ThetaqError, ArithmeticError):
    pass


class PoleError(ThetaqError, ZeroDivisionError):
    """Raised when a quotient form is evaluated too close to a removable point."""


class GridError(ThetaqError, ValueError):
    """A formal expansion would leave the integer Q-exponent grid."""


class SymbolMismatch(ThetaqError, ValueError):
    pass


class LexError(ThetaqError):
    def __init__(self, span, message):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.message = message


class ParseError(ThetaqError):
    def __init__(self, span, expected, message=""):
        exp = ", ".join(sorted(expected)) if expected else ""
        text = message or f"expected one of: {exp}"
        super().__init__(f"{span}: {text}")
        self.span = span
        self.expected = frozenset(expected)
        self.message = text


class UnboundVariable(ThetaqError, KeyError):
    def __str__(self):
        return Exception.__str__(self)
