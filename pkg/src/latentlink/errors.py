"""Exception types raised by validation throughout the package."""


class LatentLinkError(ValueError):
    """Base class for all validation errors raised by this package."""


class NonSquareError(LatentLinkError):
    """Matrix operation requires a square matrix."""


class NonHermitianError(LatentLinkError):
    """Matrix exceeds the Hermiticity tolerance."""


class DimensionMismatchError(LatentLinkError):
    """Operand dimensions are incompatible."""


class NotIndependentError(LatentLinkError):
    """Joint distribution does not factorize into its marginals."""


class NotSymmetricError(LatentLinkError):
    """Joint distribution is not symmetric."""


class InvalidSpecError(LatentLinkError):
    """Correlated-channel specification violates its invariants."""


class InvalidStateError(LatentLinkError):
    """Matrix is not a valid density matrix."""


class InvalidChannelError(LatentLinkError):
    """Kraus family is not completely positive and trace preserving."""


class NotDensityMatrixError(LatentLinkError):
    """Entropy input is not a valid density matrix."""


class OutOfRangeError(LatentLinkError):
    """Scalar parameter lies outside its admissible interval."""


class NegativeSingularValueError(LatentLinkError):
    """Singular values passed to the capacity optimizer must be nonnegative."""
