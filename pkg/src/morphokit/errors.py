"""Exception hierarchy shared by every morphokit module."""


class MorphokitError(Exception):
    """Base class for all computation errors raised by morphokit."""


class InvalidConfiguration(MorphokitError, ValueError):
    pass


class ShapeMismatch(MorphokitError, ValueError):
    pass


class DegenerateSize(MorphokitError, ValueError):
    """A configuration has zero size and cannot be scaled."""


class DegenerateCrossProduct(MorphokitError, ValueError):
    pass


class InvalidLandmarkCount(MorphokitError, ValueError):
    pass


class SingularAtG(MorphokitError, ValueError):
    """Saddlepoint closed forms are singular at t == g; use the VOM route."""


class DomainError(MorphokitError, ValueError):
    pass


class DivergentIntegral(MorphokitError, ValueError):
    pass


class QuadratureError(MorphokitError, RuntimeError):
    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class DegenerateDifference(MorphokitError, ValueError):
    pass


class SingularCovariance(MorphokitError, ValueError):
    pass


class ParseError(MorphokitError, ValueError):
    pass


class MissingColumn(ParseError):
    pass


class RaggedConfigurations(ParseError):
    pass


class NonNumeric(ParseError):
    pass
