from click import ClickException


class GeometryError(Exception):
    """
    Base class for every domain error raised by the toolkit.

    Not a ValueError: pydantic validators let it through unchanged.

    @param detail: Human readable diagnostic.
    """
    status_code: int = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class GeometryMismatchError(GeometryError):
    """Points or polygons from different geometries were combined."""


class DegenerateGeometryError(GeometryError):
    """Coincident points where distinct ones are required (angles, frames, curves)."""


class InvalidSidesError(GeometryError):
    """A side-length triple violates the strict triangle inequality or the hemisphere bounds."""


class HemisphereViolationError(GeometryError):
    """A spherical point or construction leaves the open northern hemisphere."""


class BoundaryViolationError(GeometryError):
    """A disk point lies on or outside the boundary at infinity."""


class UnsupportedConfigurationError(GeometryError):
    """The operation is only defined for convex configurations (or another supported subset)."""


class ArityError(GeometryError):
    """The polygon has the wrong number of vertices for the operation."""


class SamplingError(GeometryError):
    """The rejection sampler exhausted its budget."""


class InfeasiblePerimeterError(GeometryError):
    """No regular polygon of the requested perimeter exists in the geometry."""


class InfeasibleFlexError(GeometryError):
    """The diagonal interval of a quadrilateral flex problem is empty."""


class InvalidDiagonalError(GeometryError):
    """A diagonal length lies outside the feasible flex interval."""


class CrossCheckError(GeometryError):
    """Two independent area computations disagree beyond tolerance."""
    status_code = 1


class CommandError(ClickException):
    """
    Command-line failure carrying its exit code: 2 for input errors, 1 for failed checks.

    @param message: Diagnostic printed to stderr.
    @param exit_code: Process exit code.
    """

    def __init__(self, message: str, exit_code: int = 2):
        super().__init__(message)
        self.exit_code = exit_code

    @classmethod
    def from_error(cls, e: Exception) -> "CommandError":
        """Wrap a domain error or a pydantic ValidationError."""
        if isinstance(e, GeometryError):
            return cls(f"{type(e).__name__}: {e.detail}", exit_code=e.status_code)
        return cls(f"Invalid input: {e}", exit_code=2)
