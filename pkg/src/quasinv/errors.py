"""Exception hierarchy.

Mathematical failures (a polynomial that should divide but doesn't, a
quantity that should be polynomial but has a pole) are raised as subclasses
of :class:`QuasinvError` so that the verification driver can record them
instead of crashing.
"""


class QuasinvError(Exception):
    """Base class for every error raised by this package."""


class DivisionError(QuasinvError, ArithmeticError):
    """Exact polynomial division failed: the divisor does not divide."""


class EvalError(QuasinvError, ArithmeticError):
    """Evaluation at the origin of an element with a pole there."""


class ParseError(QuasinvError, ValueError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


class NotQuasiinvariantError(QuasinvError, ValueError):
    """Input was required to be m-quasiinvariant but is not."""

    def __init__(self, message, violations=()):
        self.violations = tuple(violations)
        super().__init__(message)


class TheoremViolation(QuasinvError):
    """A computed object contradicts a structural statement that should hold."""
