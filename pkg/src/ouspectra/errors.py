"""Structured exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all errors raised deliberately by this package."""


class ShapeMismatch(ToolkitError):
    """Payload shape inconsistent with the owning model space."""


class NotAnEffect(ToolkitError):
    """Operation requires an element of the unit interval [0, 1]."""


class NotAProjection(ToolkitError):
    """Operation requires a sharp idempotent-like element."""


class NotPositive(ToolkitError):
    """Operation requires cone membership."""


class NotFCompression(ToolkitError):
    """Map fails the compression axioms required by the operation."""


class NoComplementAvailable(ToolkitError):
    """The model cannot construct a complementary map for this input."""


class UnknownProjection(ToolkitError):
    """Projection is not a member of the compression base."""


class NotEnumerable(ToolkitError):
    """The model admits no finite description at the requested size."""


class ComparabilityUnavailable(ToolkitError):
    """The model (or norm family) does not support sign decompositions."""


class SizeLimit(ToolkitError):
    """Requested model size is outside the supported range."""


class NotSharpFocus(ToolkitError):
    """Focus candidate is not a sharp effect."""


class NotNormAttaining(ToolkitError):
    """Dual vector does not attain its norm at the supplied point."""


class ZeroFunctional(ToolkitError):
    """Face of the zero functional is the whole ball; rejected."""


class ZeroVector(ToolkitError):
    """Face of the zero vector is the whole dual ball; rejected."""


class NoConvergence(ToolkitError):
    """Iterative eigensolver exceeded its sweep budget."""


class UnknownSuite(ToolkitError):
    """Requested check suite is not registered."""


class VersionMismatch(ToolkitError):
    """Reports from different toolkit versions cannot be merged."""
