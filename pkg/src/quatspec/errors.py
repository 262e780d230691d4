"""Exception hierarchy shared by every module."""


class QuatSpecError(Exception):
    """Base class for library errors."""


class DivisionByZero(QuatSpecError, ZeroDivisionError):
    pass


class DimensionError(QuatSpecError, ValueError):
    pass


class BasisError(QuatSpecError, ValueError):
    pass


class EmptySpanError(QuatSpecError, ValueError):
    pass


class RankAmbiguous(QuatSpecError, ArithmeticError):
    """Odd singular-value count below the cutoff of a complex image."""


class NotContractive(QuatSpecError, ValueError):
    pass


class NumericalError(QuatSpecError, ArithmeticError):
    pass


class TruncationError(QuatSpecError, ValueError):
    pass


class ConflictError(QuatSpecError, RuntimeError):
    """Symbolic index calculus and a stabilized oracle disagree."""


class NotFredholm(QuatSpecError, ValueError):
    pass


class UnsupportedShape(QuatSpecError, ValueError):
    pass


class NonCompactPerturbation(QuatSpecError, ValueError):
    pass


class ExprError(QuatSpecError, ValueError):
    """Problem with an operator expression; ``pos`` is a character offset."""

    def __init__(self, message, text="", pos=None):
        super().__init__(message)
        self.text = text
        self.pos = pos

    def caret(self):
        if self.pos is None:
            return str(self)
        return f"{self}\n  {self.text}\n  {' ' * self.pos}^"


class ExprSyntaxError(ExprError):
    pass


class UnknownName(ExprError):
    pass
