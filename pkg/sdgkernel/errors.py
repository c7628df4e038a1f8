"""Exception hierarchy for the kernel and the verification harness.

Everything derives from ``ValueError`` so callers that only care about
"bad input" can keep catching that.
"""


class SDGError(ValueError):
    """Base class for all kernel errors."""


class DomainError(SDGError):
    """An operand lies outside the domain of an operation."""


class NotInvertibleError(DomainError):
    """Inverse requested for an element with zero pure part."""


class UsageError(SDGError):
    """A structural precondition of a call was violated."""


class NotTouchingError(SDGError):
    """Spheres whose radii and centre distance do not satisfy a touching relation."""


class DegenerateConfigurationError(SDGError):
    """The question is ill-posed for this configuration (zero form, point on plane, ...)."""


class ResourceLimitError(SDGError):
    """A configured resource cap (sqrt depth, refinement precision) was exceeded."""


class AssumptionViolationError(SDGError):
    """A sampled hypersurface violates the unique-foot assumption."""

    def __init__(self, message: str, indices=None):
        super().__init__(message)
        self.indices = list(indices or [])


class PostconditionError(SDGError):
    """A construction produced a result that fails its own characterisation."""


class SceneParseError(UsageError):
    """Malformed scene file. ``location`` points at the offending entry."""

    def __init__(self, message: str, location: str = ''):
        super().__init__(f'{location}: {message}' if location else message)
        self.location = location


class UnsupportedDimensionError(UsageError):
    """Plotting a scene whose dimension is not 2."""
