from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.exceptions import DegenerateGeometryError, GeometryMismatchError
from app.schemas.geometry.geometry_models import GeometryKind, Point


# Ordered vertex cycle in one geometry
class Polygon(BaseModel):
    """
    A closed polygon whose sides are the geodesic segments between consecutive vertices.
    Indices are taken modulo n.

    Attributes:
        geometry (GeometryKind): The ambient geometry shared by all vertices.
        vertices (Tuple[Point, ...]): The vertex cycle, n >= 3.
    """
    model_config = ConfigDict(frozen=True)

    geometry: GeometryKind
    vertices: Tuple[Point, ...] = Field(..., min_length=3)

    @model_validator(mode="after")
    def _consistent_cycle(self) -> "Polygon":
        for v in self.vertices:
            if v.geometry != self.geometry:
                raise GeometryMismatchError(f"Vertex in {v.geometry.value} geometry inside a {self.geometry.value} polygon")
        n = len(self.vertices)
        for i in range(n):
            if self.vertices[i] == self.vertices[(i + 1) % n]:
                raise DegenerateGeometryError(f"Consecutive vertices {i} and {(i + 1) % n} coincide")
        return self

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> Point:
        """Vertex i, cyclically."""
        return self.vertices[i % self.n]

    def with_vertex(self, i: int, p: Point) -> "Polygon":
        """Copy with vertex i (cyclic) replaced by p."""
        vertices = list(self.vertices)
        vertices[i % self.n] = p
        return Polygon(geometry=self.geometry, vertices=tuple(vertices))

    def rotated(self, k: int) -> "Polygon":
        """Copy relabelled so that vertex k comes first."""
        k %= self.n
        return Polygon(geometry=self.geometry, vertices=self.vertices[k:] + self.vertices[:k])

    def reversed(self) -> "Polygon":
        return Polygon(geometry=self.geometry, vertices=tuple(reversed(self.vertices)))


# Interior angles of a quadrilateral in cyclic order
class QuadAngles(BaseModel):
    """
    Interior angles A, B, C, D of a quadrilateral, in cyclic order.

    Attributes:
        A (float): Angle at the first vertex.
        B (float): Angle at the second vertex.
        C (float): Angle at the third vertex.
        D (float): Angle at the fourth vertex.
    """
    model_config = ConfigDict(frozen=True)

    A: float = Field(..., gt=0)
    B: float = Field(..., gt=0)
    C: float = Field(..., gt=0)
    D: float = Field(..., gt=0)

    @property
    def gap(self) -> float:
        """(A + C) - (B + D)"""
        return (self.A + self.C) - (self.B + self.D)


# The on-disk polygon format
class PolygonFile(BaseModel):
    """
    Polygon JSON as read and written by the command line.

    Attributes:
        geometry (GeometryKind): "hyperbolic", "spherical" or "euclidean".
        vertices (List[List[float]]): [x, y] per vertex ([x, y, z] on the sphere).
    """
    geometry: GeometryKind
    vertices: List[List[float]] = Field(..., min_length=3)

    def to_polygon(self, eps_predicate: Optional[float] = None) -> Polygon:
        """Builds the Polygon; eps_predicate widens or narrows the boundary band."""
        return Polygon(
            geometry=self.geometry,
            vertices=tuple(Point.from_coords(self.geometry, v, eps_predicate) for v in self.vertices),
        )

    @classmethod
    def from_polygon(cls, polygon: Polygon) -> "PolygonFile":
        return cls(geometry=polygon.geometry, vertices=[v.as_list() for v in polygon.vertices])
