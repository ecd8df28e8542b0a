"""Exception hierarchy."""


class AlgebraError(Exception):
    """Base class for every error raised by the package."""


class FieldMismatch(AlgebraError):
    pass


class NotInvertible(AlgebraError):
    """Raised by modular inversion; ``gcd`` holds the common factor found."""

    def __init__(self, msg, gcd=None):
        super().__init__(msg)
        self.gcd = gcd


class PrecisionMismatch(AlgebraError):
    pass


class ParseError(AlgebraError):
    """Polynomial text could not be parsed; ``pos`` is a 0-based offset."""

    def __init__(self, msg, text="", pos=0):
        self.text = text
        self.pos = pos
        if text:
            msg = f"{msg} at position {pos}\n  {text}\n  {' ' * pos}^"
        super().__init__(msg)


class UnsupportedField(AlgebraError):
    pass


class NonSquarefree(AlgebraError):
    pass


class CharacteristicTooSmall(AlgebraError):
    pass


class TruncationInsufficient(AlgebraError):
    pass


class RootMismatch(AlgebraError):
    pass


class HprimeViolated(AlgebraError):
    def __init__(self, msg, points=()):
        super().__init__(msg)
        self.points = list(points)


class SingularTraceForm(AlgebraError):
    pass


class NotCoprime(AlgebraError):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class LiftMismatch(AlgebraError):
    pass


class NotSeparating(AlgebraError):
    pass


class VerificationFailed(AlgebraError):
    pass


class RetryExhausted(AlgebraError):
    pass


class HypothesisError(AlgebraError):
    """Input is outside the supported hypotheses (neither (H) nor (H'))."""

    def __init__(self, msg, points=()):
        super().__init__(msg)
        self.points = list(points)
