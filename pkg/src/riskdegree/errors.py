"""Exception hierarchy for riskdegree."""


class RiskDegreeError(ValueError):
    """Base class for all library errors."""


class DomainError(RiskDegreeError):
    """A parameter lies outside its admissible domain."""


class WeightSumError(RiskDegreeError):
    """Mixture or measure weights do not sum to one."""


class ConvexityError(RiskDegreeError):
    """A dual utility function is not a convex cdf."""


class UnsupportedExponent(RiskDegreeError):
    """The requested exponent p is outside the regime of a formula."""


class EmptyFamily(RiskDegreeError):
    pass


class EmptySample(RiskDegreeError):
    pass


class InfiniteRisk(RiskDegreeError):
    """The risk of an unbounded loss under an ess-sup component is infinite."""


class MeasureFormatError(RiskDegreeError):
    """A measure or sample file does not follow the documented format."""
