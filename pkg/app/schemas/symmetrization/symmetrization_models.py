from typing import List, Tuple

import math

from pydantic import BaseModel, ConfigDict, field_serializer, model_validator

from app.core.exceptions import InfeasibleFlexError
from app.schemas.geometry.geometry_models import GeometryKind
from app.schemas.polygon.polygon_models import Polygon, PolygonFile


# One-parameter family of quadrilaterals with three given sides and a fixed chord
class FlexProblem(BaseModel):
    """
    Quadrilateral v[i-1] v[i] v[i+1] v[i+2] with the chord v[i-1] v[i+2] held fixed,
    parametrised by the diagonal p = d(v[i-1], v[i+1]).

    Attributes:
        s1 (float): d(v[i-1], v[i]).
        s2 (float): d(v[i], v[i+1]).
        s3 (float): d(v[i+1], v[i+2]).
        k (float): d(v[i-1], v[i+2]), the fixed chord.
        geometry (GeometryKind): Geometry.
    """
    model_config = ConfigDict(frozen=True)

    s1: float
    s2: float
    s3: float
    k: float
    geometry: GeometryKind

    @model_validator(mode="after")
    def _nonempty_interval(self) -> "FlexProblem":
        lo, hi = self.interval
        if not lo < hi:
            raise InfeasibleFlexError(f"Empty diagonal interval ({lo}, {hi}) for {self}")
        return self

    @property
    def interval(self) -> Tuple[float, float]:
        """Open interval of diagonals for which both sub-triangles are nondegenerate."""
        lo = max(abs(self.s1 - self.s2), abs(self.k - self.s3))
        hi = min(self.s1 + self.s2, self.k + self.s3)
        if self.geometry == GeometryKind.SPHERICAL:
            hi = min(hi, math.pi, 2 * math.pi - self.s1 - self.s2, 2 * math.pi - self.s3 - self.k)
        return lo, hi


# Optimum of a flex problem
class FlexSolution(BaseModel):
    """
    Attributes:
        diagonal (float): Maximizing diagonal p*.
        area (float): Quadrilateral area at p*.
        gap (float): (A + C) - (B + D) at p*.
    """
    diagonal: float
    area: float
    gap: float


# Result of a single local move
class MoveOutcome(BaseModel):
    """
    Attributes:
        polygon (Polygon): The polygon after the move (unchanged when rejected).
        applied (bool): Whether the move changed the polygon.
        reason (str): Why a move was not applied, empty otherwise.
    """
    polygon: Polygon
    applied: bool
    reason: str = ""


# One row of the trace CSV
class TraceRow(BaseModel):
    iteration: int
    area: float
    side_spread: float
    angle_spread: float


# Trace of a symmetrization run
class SymmetrizationReport(BaseModel):
    """
    Per-pass trace of a symmetrization run.

    Attributes:
        iterations (int): Completed passes (0 when the input already met the thresholds).
        area_trace (List[float]): Area after each pass, starting with the input.
        side_spread_trace (List[float]): max - min side length after each pass.
        angle_spread_trace (List[float]): max - min interior angle after each pass.
        perimeter_trace (List[float]): Perimeter after each pass.
        converged (bool): Both spreads fell below eps_converge.
        rejected_moves (int): Moves skipped because they were infeasible or broke convexity.
        initial_polygon (Polygon): The input.
        final_polygon (Polygon): The last polygon.
    """
    iterations: int
    area_trace: List[float]
    side_spread_trace: List[float]
    angle_spread_trace: List[float]
    perimeter_trace: List[float]
    converged: bool
    rejected_moves: int
    initial_polygon: Polygon
    final_polygon: Polygon

    @field_serializer("initial_polygon", "final_polygon")
    def _polygon_file(self, polygon: Polygon) -> dict:
        return PolygonFile.from_polygon(polygon).model_dump(mode="json")

    def rows(self) -> List[TraceRow]:
        return [
            TraceRow(iteration=i, area=a, side_spread=s, angle_spread=g)
            for i, (a, s, g) in enumerate(zip(self.area_trace, self.side_spread_trace, self.angle_spread_trace))
        ]
