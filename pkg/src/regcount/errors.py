"""Exception types shared across the package.

Every precondition violation raises a distinct subclass of ValueError so the
CLI can report which constraint failed without string matching.
"""


class GraphError(ValueError):
    """Invalid graph construction or malformed graph text."""


class DivisibilityError(ValueError):
    """A required divisibility condition (e.g. 2d | n) does not hold."""


class ScaleError(ValueError):
    """Instance exceeds the exact-computation scale this tool supports."""


class DomainError(ValueError):
    """Scalar parameter outside its admissible range."""
