from typing import Optional

import math

from app.core.config import settings
from app.core.exceptions import ArityError, GeometryError
from app.core.logging_config import get_logger
from app.schemas.geometry.geometry_models import GeometryKind, Point, ToleranceConfig
from app.schemas.polygon.polygon_models import Polygon
from app.schemas.symmetrization.symmetrization_models import FlexProblem, MoveOutcome, SymmetrizationReport
from app.services.geometry.kernel import (
    centroid_frame,
    distance,
    law_of_cosines_angle,
    orientation,
    polar_point,
    third_vertex,
    to_canonical,
)
from app.services.polygon.polygon_service import PolygonService, spread
from app.services.symmetrizer.flex import solve_flex

logger = get_logger("symmetrizer")

# Largest area loss (rounding) tolerated for a single accepted move
MOVE_AREA_SLACK = 1e-14


class Symmetrizer:
    """
    Area-nondecreasing local moves that drive a convex polygon towards the
    regular polygon of the same perimeter:

    - side averaging replaces a vertex so its two sides both become their mean;
    - quadrilateral flexing moves two consecutive vertices, keeping all side
      lengths, to the largest-area position for the fixed outer chord.

    @param tolerances: Predicate dead-band and convergence threshold.
    @param polygon_service: Measures areas, angles and convexity.
    """

    def __init__(self, tolerances: ToleranceConfig, polygon_service: PolygonService):
        self.tolerances = tolerances
        self.polygon_service = polygon_service

    def _accept(self, before: Polygon, after: Polygon, move: str) -> MoveOutcome:
        if not self.polygon_service.is_convex(after):
            logger.debug(f"{move} rejected: convexity lost")
            return MoveOutcome(polygon=before, applied=False, reason="convexity lost")
        old_area = self.polygon_service.area_convex(before)
        new_area = self.polygon_service.area_convex(after)
        if new_area < old_area - MOVE_AREA_SLACK:
            logger.debug(f"{move} rejected: area {old_area} -> {new_area}")
            return MoveOutcome(polygon=before, applied=False, reason="area decreased")
        return MoveOutcome(polygon=after, applied=True)

    def average_sides(self, p: Polygon, i: int) -> MoveOutcome:
        """
        Replace vertex i by the point on the same side of the chord v[i-1] v[i+1]
        whose distances to both neighbours equal the mean of the two old sides.

        @param p: Convex polygon.
        @param i: Vertex index (cyclic).
        @return: MoveOutcome; the polygon is unchanged when the move is rejected.
        """
        u, v, w = p.vertex(i - 1), p.vertex(i), p.vertex(i + 1)
        a, b = distance(u, v), distance(v, w)
        if abs(a - b) <= self.tolerances.eps_predicate:
            return MoveOutcome(polygon=p, applied=False, reason="sides already equal")
        turn = orientation(u, w, v)
        if turn == 0.0:
            return MoveOutcome(polygon=p, applied=False, reason="vertex on the chord")
        try:
            frame = to_canonical(u, w)
            mean = (a + b) / 2
            local = third_vertex(distance(u, w), mean, mean, 1 if turn > 0 else -1, p.geometry)
            candidate = p.with_vertex(i, frame.inverse(local, self.tolerances.eps_predicate))
        except GeometryError as e:
            logger.debug(f"Side averaging at {i} rejected: {e.detail}")
            return MoveOutcome(polygon=p, applied=False, reason=e.detail)
        return self._accept(p, candidate, f"Side averaging at {i}")

    def move_average_sides(self, p: Polygon, i: int) -> Polygon:
        """Side-averaging move at vertex i; returns p itself when rejected."""
        return self.average_sides(p, i).polygon

    def flex_quad(self, p: Polygon, i: int) -> MoveOutcome:
        """
        Move v[i] and v[i+1] to the largest-area position of the quadrilateral
        v[i-1] v[i] v[i+1] v[i+2] with its sides and the chord v[i-1] v[i+2] fixed.

        Both moving vertices are built in the frame of v[i-1]: v[i+1] at the
        optimal diagonal, turned off the chord towards its old side, and v[i]
        turned further by the angle of the triangle v[i-1] v[i] v[i+1].

        @param p: Convex polygon with n >= 4.
        @param i: Index of the first moving vertex (cyclic).
        @return: MoveOutcome; the polygon is unchanged when the move is rejected.
        @raises ArityError: For triangles.
        """
        if p.n < 4:
            raise ArityError("Quadrilateral flexing needs at least 4 vertices")
        g = p.geometry
        a, b, c, d = p.vertex(i - 1), p.vertex(i), p.vertex(i + 1), p.vertex(i + 2)
        turn = orientation(a, d, c)
        if turn == 0.0:
            return MoveOutcome(polygon=p, applied=False, reason="vertex on the chord")
        side = 1 if turn > 0 else -1
        try:
            fp = FlexProblem(s1=distance(a, b), s2=distance(b, c), s3=distance(c, d), k=distance(a, d), geometry=g)
            diagonal = solve_flex(fp).diagonal

            # Frame of the fixed chord: a at the center, d on the theta = 0 ray
            frame = to_canonical(a, d)
            to_c = law_of_cosines_angle(diagonal, fp.k, fp.s3, g)
            to_b = to_c + law_of_cosines_angle(fp.s1, diagonal, fp.s2, g)
            c_local = polar_point(diagonal, side * to_c, g, chart=True)
            b_local = polar_point(fp.s1, side * to_b, g, chart=True)
            eps = self.tolerances.eps_predicate
            candidate = p.with_vertex(i, frame.inverse(b_local, eps)).with_vertex(i + 1, frame.inverse(c_local, eps))
        except GeometryError as e:
            logger.debug(f"Flex at {i} rejected: {e.detail}")
            return MoveOutcome(polygon=p, applied=False, reason=e.detail)
        return self._accept(p, candidate, f"Flex at {i}")

    def move_flex_quad(self, p: Polygon, i: int) -> Polygon:
        """Flex move at vertex i; returns p itself when rejected."""
        return self.flex_quad(p, i).polygon

    def recentered(self, p: Polygon) -> Polygon:
        """
        Spherical polygons are rotated so their vertex centroid sits at the pole;
        other geometries (and rotations that would leave the hemisphere) return p.

        @param p: Polygon.
        @return: An isometric copy of p, or p itself.
        """
        if p.geometry != GeometryKind.SPHERICAL:
            return p
        try:
            frame = centroid_frame(p.vertices)
            eps = self.tolerances.eps_predicate
            vertices = tuple(Point.from_coords(p.geometry, frame.forward_coords(v.as_list()), eps) for v in p.vertices)
            return Polygon(geometry=p.geometry, vertices=vertices)
        except GeometryError as e:
            logger.debug(f"Recentering skipped: {e.detail}")
            return p

    def symmetrize(self, p: Polygon, max_iter: Optional[int] = None) -> SymmetrizationReport:
        """
        Alternate full passes of side averaging and quadrilateral flexing until
        both the side spread and the angle spread drop below eps_converge.

        @param p: Convex polygon.
        @param max_iter: Pass budget (defaults to settings.MAX_ITER).
        @return: The SymmetrizationReport; converged is False when the budget runs out.
        @raises UnsupportedConfigurationError: If p is not convex.
        """
        max_iter = settings.MAX_ITER if max_iter is None else max_iter
        self.polygon_service.require_convex(p)
        eps = self.tolerances.eps_converge
        areas, side_spreads, angle_spreads, perimeters = [], [], [], []

        def record(polygon: Polygon) -> bool:
            sides = self.polygon_service.side_lengths(polygon)
            angles = self.polygon_service.interior_angles(polygon)
            areas.append(self.polygon_service.area_convex(polygon))
            side_spreads.append(spread(sides))
            angle_spreads.append(spread(angles))
            perimeters.append(math.fsum(sides))
            return side_spreads[-1] < eps and angle_spreads[-1] < eps

        logger.info(f"Symmetrizing {p.geometry.value} {p.n}-gon (max_iter={max_iter})")
        current = p
        rejected = 0
        iterations = 0
        converged = record(current)
        while not converged and iterations < max_iter:
            iterations += 1
            current = self.recentered(current)
            for i in range(current.n):
                outcome = self.average_sides(current, i)
                current = outcome.polygon
                rejected += not outcome.applied and outcome.reason != "sides already equal"
            if current.n >= 4:
                for i in range(current.n):
                    outcome = self.flex_quad(current, i)
                    current = outcome.polygon
                    rejected += not outcome.applied
            converged = record(current)

        logger.info(
            f"Symmetrization {'converged' if converged else 'stopped'} after {iterations} passes: "
            f"area {areas[0]} -> {areas[-1]}, side spread {side_spreads[-1]:.3e}, angle spread {angle_spreads[-1]:.3e}"
        )
        return SymmetrizationReport(
            iterations=iterations,
            area_trace=areas,
            side_spread_trace=side_spreads,
            angle_spread_trace=angle_spreads,
            perimeter_trace=perimeters,
            converged=converged,
            rejected_moves=rejected,
            initial_polygon=p,
            final_polygon=current,
        )


def get_symmetrizer(tolerances: ToleranceConfig, polygon_service: PolygonService) -> Symmetrizer:
    """
    Factory for Symmetrizer.

    @param tolerances: Tolerance bands.
    @param polygon_service: Polygon service instance.
    @return: An instance of Symmetrizer.
    """
    return Symmetrizer(tolerances=tolerances, polygon_service=polygon_service)
