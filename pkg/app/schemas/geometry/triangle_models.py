from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.schemas.geometry.geometry_models import GeometryKind
from app.services.geometry.kernel import check_triangle_sides


# Validated side-length triple feeding the area formulas
class TriangleSides(BaseModel):
    """
    Side lengths of a nondegenerate triangle.

    Attributes:
        a (float): First side.
        b (float): Second side.
        c (float): Third side.
        geometry (GeometryKind): Geometry the sides are measured in.
    """
    model_config = ConfigDict(frozen=True)

    a: float
    b: float
    c: float
    geometry: GeometryKind

    @model_validator(mode="after")
    def _valid_triangle(self) -> "TriangleSides":
        check_triangle_sides(self.a, self.b, self.c, self.geometry)
        return self

    @property
    def semi_perimeter(self) -> float:
        return (self.a + self.b + self.c) / 2

    @property
    def excesses(self) -> tuple:
        """(s - a, s - b, s - c), each computed without subtracting from s."""
        return (
            (self.b + self.c - self.a) / 2,
            (self.a + self.c - self.b) / 2,
            (self.a + self.b - self.c) / 2,
        )


# Area of a triangle given by its vertices
class TriangleArea(BaseModel):
    """
    Attributes:
        area (float): Nonnegative area; 0.0 when degenerate.
        degenerate (bool): The vertices were collinear or coincident.
    """
    model_config = ConfigDict(frozen=True)

    area: float = Field(..., ge=0)
    degenerate: bool = False
