from typing import List, Optional

import math

import numpy as np

from app.core.exceptions import ArityError, CrossCheckError, UnsupportedConfigurationError
from app.core.logging_config import get_logger
from app.schemas.geometry.geometry_models import GeometryKind, ToleranceConfig
from app.schemas.polygon.polygon_models import Polygon, QuadAngles
from app.services.area.triangle_area import area_from_vertices, shoelace_area
from app.services.geometry.kernel import Isometry, angle_at, distance, orientation_matrix

logger = get_logger("polygon_service")

# Agreement required between the fan area and the angle-sum area
CROSS_CHECK_TOLERANCE = 1e-8


def spread(values: List[float]) -> float:
    """max - min of a nonempty list."""
    return max(values) - min(values)


class PolygonService:
    """
    Measurements and predicates on polygons: perimeter, angles, convexity,
    fan-triangulated area and the opposite-angle gap of quadrilaterals.

    @param tolerances: Dead-band for the convexity test and default thresholds
                       for the regularity predicates.
    """

    def __init__(self, tolerances: ToleranceConfig):
        self.tolerances = tolerances

    def side_lengths(self, p: Polygon) -> List[float]:
        """
        The n consecutive side lengths, side i joining vertex i to vertex i+1.

        @param p: Polygon.
        @return: List of n lengths.
        """
        return [distance(p.vertex(i), p.vertex(i + 1)) for i in range(p.n)]

    def perimeter(self, p: Polygon) -> float:
        """Sum of the side lengths."""
        return math.fsum(self.side_lengths(p))

    def is_convex(self, p: Polygon) -> bool:
        """
        True iff every vertex lies strictly on one common side of every side's geodesic.

        Collinear configurations (|orientation| within eps_predicate) count as nonconvex.

        @param p: Polygon.
        @return: Whether p is strictly convex.
        """
        turns = orientation_matrix(p.vertices)
        index = np.arange(p.n)
        # Skip each side's own endpoints
        others = (index[None, :] != index[:, None]) & (index[None, :] != (index[:, None] + 1) % p.n)
        turns = turns[others]
        if np.isnan(turns).any() or (np.abs(turns) <= self.tolerances.eps_predicate).any():
            return False
        return bool((turns > 0).all() or (turns < 0).all())

    def require_convex(self, p: Polygon) -> None:
        if not self.is_convex(p):
            logger.debug(f"Rejected nonconvex {p.n}-gon")
            raise UnsupportedConfigurationError("Polygon is nonconvex; only convex polygons are supported")

    def _angles(self, p: Polygon) -> List[float]:
        return [angle_at(p.vertex(i), p.vertex(i - 1), p.vertex(i + 1)) for i in range(p.n)]

    def interior_angles(self, p: Polygon) -> List[float]:
        """
        Interior angle at each vertex, between the sides to its two neighbours.

        @param p: Convex polygon.
        @return: n angles in (0, pi).
        @raises UnsupportedConfigurationError: If p is not convex.
        """
        self.require_convex(p)
        return self._angles(p)

    def area_convex(self, p: Polygon) -> float:
        """
        Area by fan triangulation from vertex 0.

        @param p: Convex polygon.
        @return: Area.
        @raises UnsupportedConfigurationError: If p is not convex.
        """
        self.require_convex(p)
        return self._fan_area(p)

    def _fan_area(self, p: Polygon) -> float:
        apex = p.vertex(0)
        return math.fsum(area_from_vertices(apex, p.vertex(i), p.vertex(i + 1)).area for i in range(1, p.n - 1))

    def gauss_bonnet_area(self, p: Polygon) -> float:
        """
        Area from the interior angle sum: (n-2)pi - sum in the disk, sum - (n-2)pi on
        the sphere; the shoelace area in the plane.

        @param p: Convex polygon.
        @return: Area.
        """
        if p.geometry == GeometryKind.EUCLIDEAN:
            self.require_convex(p)
            return shoelace_area(p.vertices)
        total = math.fsum(self.interior_angles(p))
        flat = (p.n - 2) * math.pi
        return flat - total if p.geometry == GeometryKind.HYPERBOLIC else total - flat

    def checked_area(self, p: Polygon) -> float:
        """
        Fan area of a convex polygon, verified against the Gauss-Bonnet area.

        @param p: Convex polygon.
        @return: The fan-triangulated area.
        @raises CrossCheckError: If the two areas differ by more than 1e-8 (relative above 1).
        """
        area = self.area_convex(p)
        check = self.gauss_bonnet_area(p)
        if abs(area - check) > CROSS_CHECK_TOLERANCE * max(1.0, abs(area)):
            logger.error(f"Area cross-check failed for {p.n}-gon: fan {area} vs angle sum {check}")
            raise CrossCheckError(f"Fan area {area} disagrees with Gauss-Bonnet area {check}")
        return area

    def quad_angles(self, q: Polygon) -> QuadAngles:
        """Interior angles of a convex quadrilateral in cyclic order."""
        if q.n != 4:
            raise ArityError(f"Expected a quadrilateral, got a {q.n}-gon")
        a, b, c, d = self.interior_angles(q)
        return QuadAngles(A=a, B=b, C=c, D=d)

    def wimmer_gap(self, q: Polygon) -> float:
        """
        (A + C) - (B + D) for a convex quadrilateral; zero exactly at the
        largest-area quadrilateral with the same sides.

        @raises ArityError: If q is not a quadrilateral.
        """
        return self.quad_angles(q).gap

    def is_equilateral(self, p: Polygon, tol: Optional[float] = None) -> bool:
        tol = self.tolerances.eps_converge if tol is None else tol
        return spread(self.side_lengths(p)) < tol

    def is_equiangular(self, p: Polygon, tol: Optional[float] = None) -> bool:
        tol = self.tolerances.eps_converge if tol is None else tol
        return spread(self.interior_angles(p)) < tol

    def is_regular(self, p: Polygon, tol: Optional[float] = None) -> bool:
        """Equilateral and equiangular within tol (default eps_converge)."""
        return self.is_equilateral(p, tol) and self.is_equiangular(p, tol)

    def transform(self, p: Polygon, isometry: Isometry) -> Polygon:
        """Image of p under an isometry."""
        return Polygon(geometry=p.geometry, vertices=tuple(isometry.forward(v) for v in p.vertices))


def get_polygon_service(tolerances: ToleranceConfig) -> PolygonService:
    """
    Factory for PolygonService.

    @param tolerances: Tolerance bands to use.
    @return: An instance of PolygonService.
    """
    return PolygonService(tolerances=tolerances)
