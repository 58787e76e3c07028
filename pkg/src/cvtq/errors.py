"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Input violates a documented precondition."""


class DegenerateGeometryError(InvalidInputError):
    """Polygon or region has (numerically) zero area or repeated vertices."""


class UnsupportedDegreeError(ValueError):
    """Requested moment lies outside the closed-form degree range."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ProblemSizeError(ValueError):
    """Instance too large for the exact solver."""
