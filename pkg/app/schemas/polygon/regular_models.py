import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.exceptions import InfeasiblePerimeterError
from app.schemas.geometry.geometry_models import GeometryKind


# The extremal object: n sides, fixed perimeter
class RegularSpec(BaseModel):
    """
    Request for the regular n-gon of perimeter L.

    Attributes:
        n (int): Number of sides, n >= 3.
        perimeter (float): Total length L; 0 < L < 2pi on the sphere.
        geometry (GeometryKind): Target geometry.
    """
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=3)
    perimeter: float
    geometry: GeometryKind

    @model_validator(mode="after")
    def _feasible(self) -> "RegularSpec":
        if not (self.perimeter > 0 and math.isfinite(self.perimeter)):
            raise InfeasiblePerimeterError(f"Perimeter must be positive and finite, got {self.perimeter}")
        if self.geometry == GeometryKind.SPHERICAL and self.perimeter >= 2 * math.pi:
            raise InfeasiblePerimeterError(
                f"Spherical perimeter {self.perimeter} is not below 2pi; no regular polygon fits an open hemisphere"
            )
        return self

    @property
    def side(self) -> float:
        return self.perimeter / self.n


# Solved regular polygon
class RegularGon(BaseModel):
    """
    The regular n-gon of a given perimeter, solved in closed form.

    Attributes:
        n (int): Number of sides.
        perimeter (float): Perimeter L.
        geometry (GeometryKind): Geometry.
        circumradius (float): Distance from the center to each vertex.
        side (float): Side length L/n.
        interior_angle (float): Angle at each vertex.
        area (float): n times the area of the central isosceles triangle.
        gauss_bonnet_area (float): Area from the angle sum, as a cross-check.
    """
    n: int
    perimeter: float
    geometry: GeometryKind
    circumradius: float
    side: float
    interior_angle: float
    area: float
    gauss_bonnet_area: float
