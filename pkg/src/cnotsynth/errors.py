"""Exception types raised across the package."""


class CnotSynthError(Exception):
    """Base class for all errors raised by cnotsynth."""


class NotUnitary(CnotSynthError, ValueError):
    pass


class NotAProduct(CnotSynthError, ValueError):
    """Raised when a 4x4 operator is not a tensor product of 2x2 factors."""


class NumericalFailure(CnotSynthError, ArithmeticError):
    pass


class HzNotZero(CnotSynthError, ValueError):
    pass


class WrongClass(CnotSynthError, ValueError):
    pass


class VerificationFailed(CnotSynthError, RuntimeError):
    pass


class UnknownGate(CnotSynthError, KeyError):
    pass


class BadArity(CnotSynthError, ValueError):
    pass


class ParseError(CnotSynthError, ValueError):
    """Malformed serialized input. ``where`` names the offending field or line."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
