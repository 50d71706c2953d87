"""Exception types raised across the package."""


class SuperDiracError(Exception):
    pass


class DivisionByZero(SuperDiracError, ZeroDivisionError):
    pass


class IndexOutOfRange(SuperDiracError, IndexError):
    pass


class UndeclaredParity(SuperDiracError):
    pass


class UnboundedShift(SuperDiracError):
    pass


class DimensionMismatch(SuperDiracError, ValueError):
    pass


class FischerSingular(SuperDiracError):
    pass


class WindowViolation(SuperDiracError):
    pass


class NoCartanConfig(SuperDiracError):
    pass


class RankUnstable(SuperDiracError):
    pass


class ParseError(SuperDiracError, SyntaxError):
    """Syntax error in an operator expression; ``position`` is 0-based."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text
