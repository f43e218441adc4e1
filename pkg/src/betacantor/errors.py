"""Exception types raised by the betacantor pipeline."""


class BetaError(Exception):
    """Base class for every error raised by this package."""


class ParseError(BetaError, ValueError):
    """A beta, digit set or numeric literal could not be parsed."""


class OutOfRange(BetaError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class AmbiguousFloor(BetaError):
    """A floor decision could not be made at the available precision."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class DepthExhausted(BetaError):
    """A lexicographic comparison needed more digits than were computed."""


class SimplicityUndecided(BetaError):
    """The residual orbit of 1 is near zero but zero cannot be certified."""


class NotSimple(BetaError):
    pass


class Reducible(BetaError):
    pass


class NoConvergence(BetaError):
    pass


class Degenerate(BetaError):
    """The recoded sequence vanishes, so the base equation has no root."""


class TolUnreachable(BetaError):
    pass


class DigitNotInTheta(BetaError, ValueError):
    pass


class DigitIndexOutOfRange(BetaError, ValueError):
    pass


class InvalidMarkerWord(BetaError, ValueError):
    pass


class NotInQ(BetaError):
    pass
