"""Exception hierarchy for the shift-inclusion morphology toolkit."""


class MorphologyError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(MorphologyError, ValueError):
    """Points of different lattice dimensions were combined."""


class DomainError(MorphologyError, ValueError):
    """A point lies outside the pixel set, or two images disagree on domain."""


class StructuringElementError(MorphologyError, ValueError):
    """A structuring element is empty or does not contain the origin."""


class DiagramParseError(MorphologyError):
    """A dot diagram is malformed."""


class ImageFormatError(MorphologyError):
    """A PGM or masked-grid file could not be read or written."""


class RecipeError(MorphologyError):
    """A sequence recipe is malformed or its inputs violate its preconditions."""


class EnumerationCapError(MorphologyError):
    """The pixel set is too large for exhaustive binary enumeration."""


class UnverifiedSequenceError(MorphologyError):
    """A structuring-element sequence failed verification and was not forced."""
