from enum import Enum
from typing import Any, Optional, Tuple, Union

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, model_validator

from app.core.config import settings
from app.core.exceptions import (
    BoundaryViolationError,
    DegenerateGeometryError,
    GeometryMismatchError,
    HemisphereViolationError,
)


# Tag for the three supported geometries
class GeometryKind(str, Enum):
    """
    The ambient geometry of a point or polygon.

    `euclidean` is a baseline used for small-polygon limit checks; the
    hyperbolic (Poincare disk) and spherical (open northern hemisphere)
    geometries carry the isoperimetric machinery.
    """
    HYPERBOLIC = "hyperbolic"
    SPHERICAL = "spherical"
    EUCLIDEAN = "euclidean"


def _boundary_band(info: ValidationInfo) -> float:
    # Validation context may carry the caller's eps_predicate
    eps = (info.context or {}).get("eps_predicate")
    return settings.EPS_PREDICATE if eps is None else eps


def _in_chart(info: ValidationInfo) -> bool:
    return bool((info.context or {}).get("chart", False))


def _as_mapping(data: Any, names: str) -> Any:
    # Accept [x, y(, z)] as well as {"x": .., "y": ..}
    if isinstance(data, (list, tuple, np.ndarray)):
        if len(data) != len(names):
            raise GeometryMismatchError(f"Expected {len(names)} coordinates, got {len(data)}")
        return {name: float(value) for name, value in zip(names, data)}
    return data


# Disk coordinates of a hyperbolic point
class HPoint(BaseModel):
    """
    A point of the Poincare disk, strictly inside the unit circle.

    Attributes:
        x (float): First disk coordinate.
        y (float): Second disk coordinate.
    """
    model_config = ConfigDict(frozen=True)

    x: float
    y: float

    @model_validator(mode="before")
    @classmethod
    def _accept_sequence(cls, data: Any) -> Any:
        return _as_mapping(data, "xy")

    @model_validator(mode="after")
    def _inside_disk(self, info: ValidationInfo) -> "HPoint":
        # Constructions within eps_predicate of the boundary at infinity are rejected
        if 1.0 - math.hypot(self.x, self.y) <= _boundary_band(info):
            raise BoundaryViolationError(f"Point ({self.x}, {self.y}) is not strictly inside the unit disk")
        return self


# Unit-vector coordinates of a spherical point
class SPoint(BaseModel):
    """
    A point of the unit sphere in the open northern hemisphere (z > 0).
    Input vectors are renormalized at construction.

    Attributes:
        x (float): First component.
        y (float): Second component.
        z (float): Third component, strictly positive.
    """
    model_config = ConfigDict(frozen=True)

    x: float
    y: float
    z: float

    @model_validator(mode="before")
    @classmethod
    def _renormalize(cls, data: Any) -> Any:
        data = _as_mapping(data, "xyz")
        if isinstance(data, dict) and {"x", "y", "z"} <= data.keys():
            vec = np.array([data["x"], data["y"], data["z"]], dtype=float)
            norm = float(np.linalg.norm(vec))
            if not norm > 0.0:
                raise DegenerateGeometryError("Cannot normalize the zero vector onto the sphere")
            if abs(norm - 1.0) > 1e-12:
                vec = vec / norm
            return {"x": float(vec[0]), "y": float(vec[1]), "z": float(vec[2])}
        return data

    @model_validator(mode="after")
    def _in_hemisphere(self, info: ValidationInfo) -> "SPoint":
        # Canonical-frame images may sit anywhere on the sphere
        if _in_chart(info):
            return self
        if self.z <= _boundary_band(info):
            raise HemisphereViolationError(f"Point ({self.x}, {self.y}, {self.z}) is not in the open hemisphere z > 0")
        return self


# Planar coordinates for the euclidean baseline
class EPoint(BaseModel):
    """
    A point of the Euclidean plane.

    Attributes:
        x (float): First coordinate.
        y (float): Second coordinate.
    """
    model_config = ConfigDict(frozen=True)

    x: float
    y: float

    @model_validator(mode="before")
    @classmethod
    def _accept_sequence(cls, data: Any) -> Any:
        return _as_mapping(data, "xy")


_COORD_MODELS = {
    GeometryKind.HYPERBOLIC: HPoint,
    GeometryKind.SPHERICAL: SPoint,
    GeometryKind.EUCLIDEAN: EPoint,
}


# A location in one of the three geometries
class Point(BaseModel):
    """
    A point tagged with its geometry.

    Attributes:
        geometry (GeometryKind): The ambient geometry.
        coords (HPoint | SPoint | EPoint): Coordinates, matching the geometry tag.
    """
    model_config = ConfigDict(frozen=True)

    geometry: GeometryKind
    coords: Union[HPoint, SPoint, EPoint]

    @model_validator(mode="before")
    @classmethod
    def _coerce_coords(cls, data: Any, info: ValidationInfo) -> Any:
        if isinstance(data, dict) and "geometry" in data:
            geometry = GeometryKind(data["geometry"])
            coords = data.get("coords")
            if not isinstance(coords, BaseModel):
                data = {"geometry": geometry, "coords": _COORD_MODELS[geometry].model_validate(coords, context=info.context)}
        return data

    @model_validator(mode="after")
    def _matching_variant(self) -> "Point":
        if not isinstance(self.coords, _COORD_MODELS[self.geometry]):
            raise GeometryMismatchError(
                f"{type(self.coords).__name__} coordinates do not belong to {self.geometry.value} geometry"
            )
        return self

    @classmethod
    def hyperbolic(cls, x: float, y: float) -> "Point":
        return cls(geometry=GeometryKind.HYPERBOLIC, coords=HPoint(x=x, y=y))

    @classmethod
    def spherical(cls, x: float, y: float, z: float) -> "Point":
        return cls(geometry=GeometryKind.SPHERICAL, coords=SPoint(x=x, y=y, z=z))

    @classmethod
    def euclidean(cls, x: float, y: float) -> "Point":
        return cls(geometry=GeometryKind.EUCLIDEAN, coords=EPoint(x=x, y=y))

    @classmethod
    def from_coords(
        cls,
        geometry: GeometryKind,
        coords,
        eps_predicate: Optional[float] = None,
        chart: bool = False,
    ) -> "Point":
        """
        Build a point from a plain coordinate sequence.

        A chart point is an image in a canonical frame: on the sphere it may lie
        outside the hemisphere and is only checked once mapped back.

        @param geometry: Target geometry.
        @param coords: [x, y] for the disk and the plane, [x, y, z] for the sphere.
        @param eps_predicate: Boundary band; defaults to the configured EPS_PREDICATE.
        @param chart: Skip the hemisphere check.
        @return: The validated Point.
        """
        geometry = GeometryKind(geometry)
        context = {"eps_predicate": eps_predicate, "chart": chart}
        return cls(geometry=geometry, coords=_COORD_MODELS[geometry].model_validate(list(coords), context=context))

    @property
    def vector(self) -> np.ndarray:
        """Coordinates as a numpy array (length 2 or 3)."""
        return np.array(self.as_list(), dtype=float)

    @property
    def complex(self) -> complex:
        """Disk or plane coordinates as x + iy."""
        if self.geometry == GeometryKind.SPHERICAL:
            raise GeometryMismatchError("Spherical points have no complex coordinate")
        return complex(self.coords.x, self.coords.y)

    def as_list(self) -> list:
        """Serialization form: [x, y] or [x, y, z]."""
        if self.geometry == GeometryKind.SPHERICAL:
            return [self.coords.x, self.coords.y, self.coords.z]
        return [self.coords.x, self.coords.y]


# Kinds of curve through three disk points
class CircumCurveKind(str, Enum):
    CIRCLE = "Circle"
    HOROCYCLE = "Horocycle"
    HYPERCYCLE = "Hypercycle"
    GEODESIC = "Geodesic"


# The Euclidean circle or chord through three disk points, classified
class CircumCurve(BaseModel):
    """
    A Euclidean circle or straight chord through three points of the Poincare disk,
    classified by how it meets the boundary at infinity.

    Attributes:
        kind (CircumCurveKind): Circle, Horocycle, Hypercycle or Geodesic.
        euclidean_center (Tuple[float, float]): Center of the Euclidean circle; for a
            straight chord, the foot of the perpendicular from the origin.
        euclidean_radius (float): Radius, infinite for a straight chord.
        chord_normal (Optional[Tuple[float, float]]): Unit normal of a straight chord.
        boundary_cosine (Optional[float]): |cos| of the angle at which the curve meets the
            unit circle; None when it does not cross it.
    """
    model_config = ConfigDict(frozen=True)

    kind: CircumCurveKind
    euclidean_center: Tuple[float, float]
    euclidean_radius: float
    chord_normal: Optional[Tuple[float, float]] = None
    boundary_cosine: Optional[float] = None

    @property
    def is_straight(self) -> bool:
        return math.isinf(self.euclidean_radius)


# A circle on the unit sphere, cut out by a plane
class SphereCircle(BaseModel):
    """
    The spherical circle {p : normal . p = offset}.

    Attributes:
        normal (Tuple[float, float, float]): Unit normal of the cutting plane.
        offset (float): Signed distance of the plane from the sphere center.
        angular_radius (float): Spherical radius of the circle around its pole.
    """
    model_config = ConfigDict(frozen=True)

    normal: Tuple[float, float, float]
    offset: float
    angular_radius: float


# Numerical tolerance bands
class ToleranceConfig(BaseModel):
    """
    Tolerance bands for predicates and convergence, immutable after construction.

    Attributes:
        eps_predicate (float): Dead-band for sign and classification tests.
        eps_converge (float): Threshold for the equilateral/equiangular checks and convergence.
    """
    model_config = ConfigDict(frozen=True)

    eps_predicate: float = Field(1e-10, gt=0)
    eps_converge: float = Field(1e-8, gt=0)

    @model_validator(mode="after")
    def _ordered(self) -> "ToleranceConfig":
        if not 0 < self.eps_predicate < self.eps_converge < 1:
            raise ValueError("Tolerances must satisfy 0 < eps_predicate < eps_converge < 1")
        return self
