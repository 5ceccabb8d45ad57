"""Exception types shared across the package."""


class GeometryError(Exception):
    """Base class for geometric construction and evaluation failures."""


class RankDeficient(GeometryError):
    """A vector family that should be linearly independent is numerically degenerate."""


class DimensionMismatch(GeometryError):
    """Tensor or vector shapes are inconsistent with the ambient/tangent dimension."""


class NonSymmetricH(GeometryError):
    """A second-fundamental-form slice fails the required symmetry."""


class WrongConnectionKind(GeometryError):
    """An inequality was requested for a submanifold built over the other connection."""


class MissingArgument(GeometryError):
    """An inequality check needs an auxiliary argument (plane, direction, or k)."""


class ScenarioError(Exception):
    """A scenario file failed to parse or validate; carries the offending field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")
