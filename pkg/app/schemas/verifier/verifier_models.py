from enum import Enum
from typing import List, Optional

import math

from pydantic import BaseModel, Field, model_validator

from app.core.exceptions import InfeasiblePerimeterError
from app.schemas.geometry.geometry_models import CircumCurveKind, GeometryKind
from app.schemas.polygon.polygon_models import PolygonFile, QuadAngles
from app.schemas.polygon.regular_models import RegularGon


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    HUMAN = "human"


# Options shared by the commands
class RunConfig(BaseModel):
    """
    Validated command-line options.

    Attributes:
        geometry (GeometryKind): Target geometry.
        n (int): Number of sides (lower end of the range when n_max is set).
        n_max (Optional[int]): Upper end of the side-count range for fuzzing.
        perimeter (Optional[float]): Perimeter of the regular reference, when one is requested.
        seed (int): Seed of every random draw.
        trials (int): Fuzz trials, >= 1.
        scale (float): Vertex distance bound of the sampler.
        max_iter (int): Symmetrization pass budget.
        output_format (OutputFormat): json, csv or human.
        eps_predicate (Optional[float]): Predicate dead-band override.
        eps_converge (Optional[float]): Convergence threshold override.
        degrees (bool): Show angles in degrees in human output.
        workers (int): Fuzz worker processes.
    """
    geometry: GeometryKind = GeometryKind.HYPERBOLIC
    n: int = Field(default=5, ge=3)
    n_max: Optional[int] = None
    perimeter: Optional[float] = None
    seed: int = 0
    trials: int = Field(default=1000, ge=1)
    scale: float = Field(default=1.0, gt=0)
    max_iter: int = Field(default=500, ge=0)
    output_format: OutputFormat = OutputFormat.HUMAN
    eps_predicate: Optional[float] = None
    eps_converge: Optional[float] = None
    degrees: bool = False
    workers: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _consistent(self) -> "RunConfig":
        if self.n_max is not None and self.n_max < self.n:
            raise ValueError(f"n_max ({self.n_max}) must not be below n ({self.n})")
        if self.perimeter is not None and self.geometry == GeometryKind.SPHERICAL and self.perimeter >= 2 * math.pi:
            raise InfeasiblePerimeterError(f"Spherical perimeter {self.perimeter} is not below 2pi")
        return self

    @property
    def n_range(self) -> range:
        return range(self.n, (self.n_max if self.n_max is not None else self.n) + 1)


# Measurements of one polygon
class AreaReport(BaseModel):
    """
    Attributes:
        geometry (GeometryKind): Geometry of the polygon.
        n (int): Number of vertices.
        perimeter (float): Sum of side lengths.
        area (float): Fan-triangulated area.
        gauss_bonnet_area (float): Area from the angle sum.
        side_lengths (List[float]): Side i joins vertex i to vertex i+1.
        interior_angles (List[float]): Radians.
        convex (bool): Always true for a report that was emitted.
        equilateral (bool): Side spread below eps_converge.
        equiangular (bool): Angle spread below eps_converge.
        regular (bool): Both.
    """
    geometry: GeometryKind
    n: int
    perimeter: float
    area: float
    gauss_bonnet_area: float
    side_lengths: List[float]
    interior_angles: List[float]
    convex: bool
    equilateral: bool
    equiangular: bool
    regular: bool


# Regular polygon, optionally with its vertices
class RegularReport(RegularGon):
    """
    Attributes:
        vertices (Optional[PolygonFile]): The constructed polygon, when requested.
    """
    vertices: Optional[PolygonFile] = None


# Cyclicity certificate of a quadrilateral
class ClassifyReport(BaseModel):
    """
    Attributes:
        geometry (GeometryKind): Geometry of the quadrilateral.
        angles (QuadAngles): Interior angles A, B, C, D.
        gap (float): (A + C) - (B + D).
        curve_kind (Optional[CircumCurveKind]): Disk only: the curve through the first three vertices.
        member (bool): Whether the fourth vertex lies on that curve (sphere: on the circle) within 1e-6.
        residual (float): Distance of the fourth vertex from the curve.
    """
    geometry: GeometryKind
    angles: QuadAngles
    gap: float
    curve_kind: Optional[CircumCurveKind] = None
    member: bool
    residual: float


# Outcome of a single fuzz trial
class FuzzTrial(BaseModel):
    index: int
    n: int
    skipped: bool = False
    area: float = 0.0
    perimeter: float = 0.0
    regular_area: float = 0.0
    polygon: Optional[PolygonFile] = None

    @property
    def ratio(self) -> float:
        return self.area / self.regular_area if self.regular_area > 0 else 0.0


# Aggregate of a fuzz run
class FuzzReport(BaseModel):
    """
    Attributes:
        geometry (GeometryKind): Sampled geometry.
        seed (int): Base seed.
        trials (int): Trials requested.
        skipped (int): Trials where sampling or the regular reference failed.
        max_ratio (float): Largest area / regular_area seen.
        worst_polygon (Optional[PolygonFile]): The polygon attaining max_ratio.
        violations (int): Trials with area > regular_area * (1 + tolerance); expected 0.
        tolerance (float): Relative tolerance of the violation test.
    """
    geometry: GeometryKind
    seed: int
    trials: int
    skipped: int
    max_ratio: float
    worst_polygon: Optional[PolygonFile] = None
    violations: int
    tolerance: float


# One row of the sweep table
class SweepRow(BaseModel):
    n: int
    perimeter: float
    regular_area: float
    interior_angle: float
    circumradius: float
