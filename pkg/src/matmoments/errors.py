"""Exception types raised across the package."""


class MomentError(ValueError):
    """Base class for all domain errors raised by matmoments."""


class DimensionMismatch(MomentError):
    pass


class NotPsd(MomentError):
    pass


class Singular(MomentError):
    pass


class RankDeficient(MomentError):
    pass


class NotInterior(MomentError):
    """Moment vector is on the boundary of (or outside) the moment space."""


class NotInInterior(NotInterior):
    """Canonical vector touches the boundary of its parameter domain."""


class NotNormalized(MomentError):
    pass


class GridTooCoarse(MomentError):
    pass


class BadShape(MomentError):
    """Ensemble shape parameter outside its admissible range."""


class NotContraction(MomentError):
    pass


class NotStrictContraction(NotContraction):
    pass


class NonInvertible(MomentError):
    pass


class TooCloseToBoundary(MomentError):
    pass


class InconsistentInputs(MomentError):
    pass


class ConfigError(MomentError):
    pass


__all__ = [
    "MomentError",
    "DimensionMismatch",
    "NotPsd",
    "Singular",
    "RankDeficient",
    "NotInterior",
    "NotInInterior",
    "NotNormalized",
    "GridTooCoarse",
    "BadShape",
    "NotContraction",
    "NotStrictContraction",
    "NonInvertible",
    "TooCloseToBoundary",
    "InconsistentInputs",
    "ConfigError",
]
