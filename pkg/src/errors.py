"""
Exception hierarchy for MonoidKit.

Library code raises these; only the command-line front end turns them
into exit codes.
"""


class MonoidKitError(Exception):
    """Base class for every error raised by the library."""


class DimensionError(MonoidKitError, ValueError):
    """A vector or matrix does not have the expected shape."""


class NonSalientConeError(MonoidKitError):
    """A cone that must be salient contains a line."""


class MorphismError(MonoidKitError):
    """A matrix does not carry the source generators into the target monoid."""


class DiagramShapeError(MonoidKitError):
    """Morphisms in a diagram do not share the required source or target."""


class PreconditionError(MonoidKitError):
    """A named hypothesis of a construction does not hold."""

    def __init__(self, hypothesis, detail=None):
        self.hypothesis = hypothesis
        self.detail = detail
        message = hypothesis if detail is None else f"{hypothesis} ({detail})"
        super().__init__(message)


class InvariantViolation(MonoidKitError):
    """A post-hoc mathematical check failed. Always a bug."""


class DocumentError(MonoidKitError):
    """A document could not be parsed or has the wrong shape."""


class DocumentIOError(MonoidKitError):
    """A document could not be read or written."""
