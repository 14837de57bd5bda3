"""Exception hierarchy shared by all spectral_lab modules."""


class SpectralLabError(Exception):
    """Base class for all library errors."""


class ArgumentError(SpectralLabError, ValueError):
    """Invalid argument value or shape at an operation boundary."""


class DegreeError(SpectralLabError):
    """Operation requires a higher polynomial degree than supplied."""


class ShapeError(SpectralLabError):
    """Tuple or matrix dimensions do not match."""


class CertificationAmbiguous(SpectralLabError):
    """Sturm signs too close to zero to certify; retry in exact mode."""


class RootFindingFailed(SpectralLabError):
    """Simultaneous iteration did not reach the residual target."""


class SolverError(SpectralLabError):
    """LP solver exceeded its anti-cycling iteration guard."""


class DegeneratePencil(SpectralLabError):
    """The two polynomials do not span a pencil (they coincide)."""


class NotHyperbolicError(SpectralLabError):
    """An input that must be real rooted failed certification."""

    def __init__(self, message, lam=None):
        super().__init__(message)
        self.lam = lam


class GenericityError(SpectralLabError):
    """Closed-form root derivative requested outside the generic stratum."""


class SegmentNotHyperbolic(SpectralLabError):
    """The segment between the two polynomials leaves the hyperbolic set."""


class WindowError(SpectralLabError):
    """Hyperbolicity lost inside a local scan window."""


class LabelingAmbiguous(SpectralLabError):
    """Root continuation could not keep labels apart."""


class InconclusiveAtScale(SpectralLabError):
    """The construction needs a smaller parameter to separate its effects."""
