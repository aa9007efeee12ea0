"""Exception hierarchy shared by all minkq modules."""


class MinkqError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatch(MinkqError):
    pass


class SingularMatrix(MinkqError):
    pass


class NonPositiveOffdiagonal(MinkqError):
    pass


class LevelTooLarge(MinkqError):
    pass


class OutOfRange(MinkqError):
    pass


class EmptyInterval(MinkqError):
    pass


class DegreeTooLarge(MinkqError):
    pass


class LostOrthogonality(MinkqError):
    pass


class InsufficientMoments(MinkqError):
    pass
