"""Exception types raised across the package."""


class PlexusError(Exception):
    """Base class for all library errors."""


class BudgetExceeded(PlexusError):
    """A serial number would need more bits than the configured budget."""


class RankTooLarge(PlexusError):
    """A stage or rank is beyond what can be materialized."""


class StageMismatch(PlexusError):
    """Operands live in different stages."""


class ParseError(PlexusError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class NonCompactPlane(PlexusError):
    """The spin generator of a plane squares to +1, so it does not generate a circle."""


class NotAComplexStructure(PlexusError):
    """An operator passed as a complex structure does not square to -1."""


class TooLarge(PlexusError):
    """A tensor realization would exceed the supported dimension."""


class EmptySweep(PlexusError):
    """A contraction sweep was requested with no cell counts."""
