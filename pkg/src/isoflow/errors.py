"""Exception types used across the package."""


class IsoflowError(Exception):
    """Base class for all package-specific errors."""


class GeometryError(IsoflowError, ValueError):
    """Invalid curve data (too few vertices, wrong orientation, degeneracy)."""


class ConvexityError(GeometryError):
    """A support function fails strict convexity (h'' + h <= 0 somewhere)."""


class SymmetryError(GeometryError):
    """A body fails a required reflection-symmetry or vertex-structure check."""


class FlowStepRejected(IsoflowError, RuntimeError):
    """A flow step was rejected (self-intersection or curvature overflow)."""

    def __init__(self, message, time=None, vertex=None):
        super().__init__(message)
        self.time = time
        self.vertex = vertex


class GuardViolation(IsoflowError, RuntimeError):
    """The comparison equation left its admissible slope region."""


class CoverageError(IsoflowError, RuntimeError):
    """The arc search left unresolvable holes in the requested area grid."""

    def __init__(self, message, gaps=()):
        super().__init__(message)
        self.gaps = list(gaps)


class NearSingularError(IsoflowError, RuntimeError):
    """A linear solve sits too close to a spectral transition to classify."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition
