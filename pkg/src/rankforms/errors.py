"""Exception types raised across the package."""


class RankformsError(Exception):
    """Base class for all package errors."""


class DivisionByZero(RankformsError, ZeroDivisionError):
    pass


class MixedFields(RankformsError):
    pass


class NotAQuadraticExtension(RankformsError):
    pass


class IncompatibleTower(RankformsError):
    pass


class EvenCharacteristic(RankformsError):
    pass


class AmbientMismatch(RankformsError):
    pass


class LengthMismatch(RankformsError):
    pass


class NotSymmetric(RankformsError):
    pass


class NotHermitian(RankformsError):
    pass


class MeetsPi1(RankformsError):
    """A generator meets the distinguished generator at infinity, so it has no matrix chart."""


class Singular(RankformsError):
    pass


class NotPairwiseDisjoint(RankformsError):
    pass


class OnSpecialGenerator(RankformsError):
    pass


class NotDisjointLine(RankformsError):
    pass


class NotAGenerator(RankformsError):
    pass


class SearchExhausted(RankformsError):
    pass


class TowerUnavailable(RankformsError):
    pass


class VerificationFailed(RankformsError):
    pass


class BadProvider(RankformsError):
    pass


class TooSmall(RankformsError):
    pass


class AmbientTooLarge(RankformsError):
    pass


class TooLarge(RankformsError):
    pass


class ParseError(RankformsError):
    pass


class InvariantViolation(RankformsError):
    pass


class UnsupportedQ(RankformsError):
    pass


class SizeMismatch(RankformsError):
    pass


class NonIntegerMultiplicity(RankformsError):
    pass


class InconsistentSystem(RankformsError):
    pass


class BadParams(RankformsError):
    pass
