class CubeError(ValueError):
    """Base error for every operation of the bench."""


class DimensionError(CubeError):
    """Dimension outside the supported range, or two families of different n."""


class PreconditionError(CubeError):
    """An operation was called outside its stated domain."""


class FamilyFormatError(CubeError):
    """Malformed family literal or family file."""
