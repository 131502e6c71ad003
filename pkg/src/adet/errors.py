"""Exception hierarchy shared by the pipeline stages."""


class AdetError(Exception):
    """Base class for every error raised by this package."""


class InputError(AdetError):
    """The input lattice data violates a hypothesis of the construction."""


class NotSpanning(InputError):
    pass


class NotOnAffineHyperplane(InputError):
    pass


class NotSaturated(InputError):
    pass


class WrongRank(InputError):
    pass


class PatternError(AdetError):
    pass


class NotGood(PatternError):
    pass


class NotVeryGood(PatternError):
    pass


class NotOpposite(PatternError):
    pass


class IndexOutOfRange(PatternError, IndexError):
    pass


class MoveError(PatternError):
    pass


class NotSingleIntersection(MoveError):
    pass


class PreconditionFailed(MoveError):
    pass


class AlreadyTerminal(AdetError):
    pass


class CleanFailed(AdetError):
    pass


class IterationLimitExceeded(AdetError):
    pass


class NonSquare(AdetError, ValueError):
    pass


class NotSquare(PatternError):
    """Black and white node counts differ."""


class CheckFailed(AdetError):
    pass


class TooLarge(AdetError, ValueError):
    pass


class DegreeZero(AdetError, ValueError):
    pass


class UnsupportedDegree(AdetError, ValueError):
    pass
