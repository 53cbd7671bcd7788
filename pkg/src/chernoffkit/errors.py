"""Exception hierarchy shared by all chernoffkit modules."""


class ChernoffKitError(Exception):
    """Base class for all library errors."""


class NotPositiveDefinite(ChernoffKitError):
    """Matrix failed the symmetric positive-definite check."""


class DimMismatch(ChernoffKitError):
    """Operands have incompatible dimensions."""


class ConvergenceFailure(ChernoffKitError):
    """An iterative numerical routine exceeded its iteration cap."""


class OutOfDomain(ChernoffKitError):
    """Parameter lies outside the family's natural/moment domain."""


class AlphaOutOfRange(ChernoffKitError):
    """Skewing parameter alpha outside the open interval (0, 1)."""


class DegeneratePair(ChernoffKitError):
    """The two input distributions coincide."""


class NoRootInUnitInterval(ChernoffKitError):
    """Closed-form solver found no root in (0, 1); indicates a bug."""


class ScaleIsOne(ChernoffKitError):
    """Scaled-covariance solver requires a scale factor different from 1."""


class QuadratureNonConvergent(ChernoffKitError):
    """Adaptive quadrature hit the subdivision cap before reaching tolerance."""


class UnboundedRatio(ChernoffKitError):
    """Monte-Carlo sample hit q = 0 inside p's support (infinite KLD)."""


class InvalidSimplexPoint(ChernoffKitError):
    """Vector is not a strictly positive probability vector."""


class ConjugateUnavailable(ChernoffKitError):
    """Family does not expose the conjugate/dual coordinates needed here."""
