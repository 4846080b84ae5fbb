"""Exception hierarchy shared by every module of the package."""


class Spin7Error(Exception):
    """Base class for all errors raised by spin7."""


class NotBarInvariant(Spin7Error, ValueError):
    pass


class NotDivisible(Spin7Error, ArithmeticError):
    pass


class PoleAtPoint(Spin7Error, ZeroDivisionError):
    pass


class IndexOutOfRange(Spin7Error, IndexError):
    pass


class MismatchedContext(Spin7Error, ValueError):
    pass


class RankDeficient(Spin7Error):
    pass


class OrderViolation(Spin7Error):
    pass


class NonTermination(Spin7Error, RuntimeError):
    pass


class OracleMismatch(Spin7Error):
    pass


class SingularSystem(Spin7Error, ArithmeticError):
    """Raised by ``solve`` when the linear system has no solution."""


class StripFailure(Spin7Error):
    pass


class NoMatch(Spin7Error, LookupError):
    pass


class BoundViolation(Spin7Error, ValueError):
    pass


class ParityError(Spin7Error, ValueError):
    pass


class NonIntegral(Spin7Error, ArithmeticError):
    pass


class ParseError(Spin7Error, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
