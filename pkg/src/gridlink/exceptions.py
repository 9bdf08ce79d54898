"""Exception hierarchy shared by all gridlink modules."""


class GridLinkError(Exception):
    """Base class for every error raised by gridlink."""


class InvalidGrid(GridLinkError, ValueError):
    """The marking data does not describe a grid diagram."""


class NotPermutation(InvalidGrid):
    pass


class XOCollision(InvalidGrid):
    pass


class SizeTooSmall(InvalidGrid):
    pass


class GridParseError(InvalidGrid):
    pass


class IllegalMove(GridLinkError, ValueError):
    pass


class NotDivisible(GridLinkError, ArithmeticError):
    """Exact division of Laurent polynomials left a remainder."""


class WeightAmbiguous(GridLinkError):
    pass


class LemmaViolation(GridLinkError):
    """Two grid states disagree on (-1)^M * sgn."""


class ResourceLimit(GridLinkError):
    """The requested computation exceeds the configured size budget."""
