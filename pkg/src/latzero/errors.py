"""Exception types raised across the package."""


class LatzeroError(Exception):
    """Base class for all package errors."""


class RankDeficient(LatzeroError):
    pass


class NotSquare(LatzeroError):
    pass


class DimensionMismatch(LatzeroError):
    pass


class SingularSublattice(LatzeroError):
    pass


class ImproperSublattice(LatzeroError):
    pass


class RankTooLarge(LatzeroError):
    pass


class ReductionFailed(LatzeroError):
    pass


class NotRegular(LatzeroError):
    pass


class CoveredByUnion(LatzeroError):
    """Every coset representative lies in some sublattice, so the union covers the lattice."""


class BadRank(LatzeroError):
    pass


class ZeroVector(LatzeroError):
    pass


class RightAngle(LatzeroError):
    pass


class RightAngleSpec(LatzeroError):
    pass


class ParseError(LatzeroError):
    pass


class ValidationError(LatzeroError):
    pass


class RestrictedFormSingular(UserWarning):
    """The quadratic part restricted to a coset is singular; that coset is searched directly."""
