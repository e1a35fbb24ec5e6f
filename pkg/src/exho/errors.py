"""Exception types raised across the package."""


class ExhoError(ValueError):
    """Base class for all domain errors."""


class ParameterPole(ExhoError):
    """A lower hypergeometric parameter is a non-positive integer."""


class BadIndex(ExhoError):
    """An eigenstate index is not valid for the requested system."""


class BadMu(ExhoError):
    """Lowest weight is not one of -3, 1, 2."""


class LadderMismatch(ExhoError):
    """Coefficients live on a different ladder than the operator expects."""


class SingularRegion(ExhoError):
    """Evaluation grid enters the excluded neighbourhood of x = 0."""


class DegenerateCat(ExhoError):
    """The odd cat state at z = 0 is the zero vector."""


class TruncationCapError(ExhoError):
    """Adaptive truncation hit the hard cap before the tail converged."""
