import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st
from pydantic import ValidationError

from app.core.exceptions import (
    BoundaryViolationError,
    DegenerateGeometryError,
    GeometryMismatchError,
    HemisphereViolationError,
    InvalidSidesError,
    UnsupportedConfigurationError,
)
from app.schemas.geometry.geometry_models import CircumCurveKind, GeometryKind, Point, ToleranceConfig
from app.services.geometry.circumcurve import (
    circumcurve_through,
    concyclicity_residual,
    hyperbolic_center,
    lies_on,
    spherical_circle_through,
)
from app.services.geometry.kernel import (
    angle_at,
    canonical_center,
    centroid_frame,
    distance,
    law_of_cosines_angle,
    orientation,
    orientation_matrix,
    polar_point,
    third_vertex,
    to_canonical,
)
from tests.conftest import RADIUS_BOUND, random_point, random_triangle

ALL_GEOMETRIES = list(GeometryKind)

radii = st.floats(min_value=0.05, max_value=1.4)
directions = st.floats(min_value=0.0, max_value=2 * math.pi)


class TestPoints:
    def test_disk_point_on_boundary_rejected(self):
        with pytest.raises(BoundaryViolationError):
            Point.hyperbolic(0.6, 0.8)

    def test_southern_point_rejected(self):
        with pytest.raises(HemisphereViolationError):
            Point.spherical(0.0, 0.0, -1.0)

    def test_equatorial_point_rejected(self):
        with pytest.raises(HemisphereViolationError):
            Point.spherical(1.0, 0.0, 0.0)

    def test_spherical_point_renormalized(self):
        p = Point.spherical(0.0, 3.0, 4.0)
        assert np.linalg.norm(p.vector) == pytest.approx(1.0, abs=1e-12)
        assert p.as_list() == pytest.approx([0.0, 0.6, 0.8])

    def test_zero_vector_rejected(self):
        with pytest.raises(DegenerateGeometryError):
            Point.spherical(0.0, 0.0, 0.0)

    def test_coords_must_match_geometry(self):
        with pytest.raises(GeometryMismatchError):
            Point.from_coords(GeometryKind.HYPERBOLIC, [0.1, 0.2, 0.3])

    def test_tolerances_must_be_ordered(self):
        with pytest.raises(ValidationError):
            ToleranceConfig(eps_predicate=1e-6, eps_converge=1e-8)


class TestDistance:
    def test_disk_distance_matches_metric_integral(self):
        p, q = Point.hyperbolic(0.0, 0.0), Point.hyperbolic(0.5, 0.0)
        integral = float(mpmath.quad(lambda t: 2 / (1 - t ** 2), [0, 0.5]))
        assert distance(p, q) == pytest.approx(math.log(3), abs=1e-12)
        assert distance(p, q) == pytest.approx(integral, abs=1e-12)

    @pytest.mark.parametrize("g", ALL_GEOMETRIES)
    def test_distance_to_itself_is_zero(self, g, rng):
        p = random_point(rng, g)
        assert distance(p, p) == 0.0

    def test_meridian_distance(self):
        p = Point.spherical(0.0, 0.0, 1.0)
        q = Point.spherical(math.sin(0.3), 0.0, math.cos(0.3))
        assert distance(p, q) == pytest.approx(0.3, abs=1e-14)

    def test_mixed_geometries_rejected(self):
        with pytest.raises(GeometryMismatchError):
            distance(Point.hyperbolic(0.1, 0.0), Point.euclidean(0.1, 0.0))

    @pytest.mark.parametrize("g", ALL_GEOMETRIES)
    def test_distance_is_symmetric(self, g, rng):
        for _ in range(100):
            p, q = random_point(rng, g), random_point(rng, g)
            assert distance(p, q) == pytest.approx(distance(q, p), abs=1e-12)

    @pytest.mark.parametrize("g", ALL_GEOMETRIES)
    def test_triangle_inequality(self, g):
        rng = np.random.default_rng(31)
        for _ in range(10_000):
            p, q, r = random_point(rng, g), random_point(rng, g), random_point(rng, g)
            assert distance(p, r) <= distance(p, q) + distance(q, r) + 1e-12

    def test_antipodal_hemisphere_distance(self):
        p, q = Point.spherical(0.9, 0.0, 0.3), Point.spherical(-0.9, 0.0, 0.3)
        assert distance(p, q) == pytest.approx(math.pi - 2 * math.atan2(0.3, 0.9), abs=1e-14)


class TestAngles:
    def test_octant_corner(self):
        v = Point.spherical(0.0, 0.0, 1.0)
        p = Point.spherical(math.sin(1.5), 0.0, math.cos(1.5))
        q = Point.spherical(0.0, math.sin(1.5), math.cos(1.5))
        assert angle_at(v, p, q) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_right_angle_at_disk_origin(self):
        v, p, q = Point.hyperbolic(0, 0), Point.hyperbolic(0.5, 0), Point.hyperbolic(0, 0.5)
        assert angle_at(v, p, q) == pytest.approx(math.pi / 2, abs=1e-12)
        assert angle_at(v, q, p) == angle_at(v, p, q)

    def test_coincident_ray_rejected(self):
        v = Point.hyperbolic(0.1, 0.1)
        with pytest.raises(DegenerateGeometryError):
            angle_at(v, v, Point.hyperbolic(0.2, 0.0))

    @pytest.mark.parametrize("g", ALL_GEOMETRIES)
    def test_angle_matches_law_of_cosines(self, g, rng):
        for _ in range(200):
            v, p, q = random_triangle(rng, g)
            expected = law_of_cosines_angle(distance(v, p), distance(v, q), distance(p, q), g)
            assert angle_at(v, p, q) == pytest.approx(expected, abs=1e-10)

    def test_orientation_sign_follows_second_coordinate(self):
        center, anchor = canonical_center(GeometryKind.HYPERBOLIC), polar_point(1.0, 0.0, GeometryKind.HYPERBOLIC)
        assert orientation(center, anchor, polar_point(0.5, 1.0, GeometryKind.HYPERBOLIC)) > 0
        assert orientation(center, anchor, polar_point(0.5, -1.0, GeometryKind.HYPERBOLIC)) < 0

    @pytest.mark.parametrize("g", ALL_GEOMETRIES)
    def test_orientation_matrix_matches_orientation(self, g, rng):
        for _ in range(50):
            vertices = [random_point(rng, g) for _ in range(6)]
            turns = orientation_matrix(vertices)
            for i, j in itertools.product(range(6), repeat=2):
                if j in (i, (i + 1) % 6):
                    continue
                expected = orientation(vertices[i], vertices[(i + 1) % 6], vertices[j])
                assert turns[i, j] == pytest.approx(expected, abs=1e-9)

    def test_orientation_matrix_marks_coincident_rays(self):
        vertices = [polar_point(0.5, t, GeometryKind.SPHERICAL) for t in (0.0, 2.0, 4.0)]
        turns = orientation_matrix(vertices)
        assert np.isnan(np.diag(turns)).all()
        assert turns[0, 2] > 0


class TestLawOfCosines:
    def test_hyperbolic_pythagoras(self):
        c = math.acosh(math.cosh(1) ** 2)
        assert law_of_cosines_angle(1, 1, c, GeometryKind.HYPERBOLIC) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_spherical_octant(self):
        h = math.pi / 2
        assert law_of_cosines_angle(h, h, h, GeometryKind.SPHERICAL) == pytest.approx(math.pi / 2, abs=1e-12)

    def test_euclidean_pythagorean_triple(self):
        assert law_of_cosines_angle(3, 4, 5, GeometryKind.EUCLIDEAN) == pytest.approx(math.pi / 2, abs=1e-14)

    @pytest.mark.parametrize("g", ALL_GEOMETRIES)
    def test_triangle_inequality_enforced(self, g):
        with pytest.raises(InvalidSidesError):
            law_of_cosines_angle(0.1, 0.2, 0.5, g)

    @given(a=radii, b=radii, t=st.floats(min_value=0.01, max_value=0.99))
    @hypothesis_settings(max_examples=200, deadline=None)
    def test_hyperbolic_law_of_cosines_identity(self, a, b, t):
        c = abs(a - b) + t * (a + b - abs(a - b))
        angle = law_of_cosines_angle(a, b, c, GeometryKind.HYPERBOLIC)
        rhs = math.cosh(a) * math.cosh(b) - math.sinh(a) * math.sinh(b) * math.cos(angle)
        assert math.cosh(c) == pytest.approx(rhs, rel=1e-10)

    @pytest.mark.parametrize("g", ALL_GEOMETRIES)
    def test_isosceles_base_angles_agree(self, g, rng):
        apex = canonical_center(g)
        for _ in range(1000):
            r = float(rng.uniform(0.05, RADIUS_BOUND[g]))
            phi = float(rng.uniform(0.05, math.pi / 2 - 0.05))
            theta = float(rng.uniform(0.0, 2 * math.pi))
            p, q = polar_point(r, theta - phi, g), polar_point(r, theta + phi, g)
            assert angle_at(p, apex, q) == pytest.approx(angle_at(q, apex, p), abs=1e-10)


class TestPolarPoint:
    def test_hyperbolic_radius_ln3(self):
        p = polar_point(math.log(3), 0.0, GeometryKind.HYPERBOLIC)
        assert p.as_list() == pytest.approx([0.5, 0.0], abs=1e-15)

    @pytest.mark.parametrize("g", ALL_GEOMETRIES)
    def test_zero_radius_is_center(self, g):
        assert distance(polar_point(0.0, 1.0, g), canonical_center(g)) == pytest.approx(0.0, abs=1e-15)

    def test_meridian_parametrization(self):
        p = polar_point(0.3, 0.0, GeometryKind.SPHERICAL)
        assert p.as_list() == pytest.approx([math.sin(0.3), 0.0, math.cos(0.3)], abs=1e-15)

    def test_spherical_radius_bounded(self):
        with pytest.raises(HemisphereViolationError):
            polar_point(math.pi / 2, 0.0, GeometryKind.SPHERICAL)

    def test_chart_point_may_cross_the_equator(self):
        g = GeometryKind.SPHERICAL
        p = polar_point(2.0, 0.3, g, chart=True)
        assert p.coords.z < 0
        assert distance(p, canonical_center(g)) == pytest.approx(2.0, abs=1e-12)
        with pytest.raises(HemisphereViolationError):
            polar_point(math.pi, 0.3, g, chart=True)

    @given(r=radii, theta=directions)
    @hypothesis_settings(max_examples=200, deadline=None)
    def test_distance_from_center(self, r, theta):
        for g in ALL_GEOMETRIES:
            assert distance(polar_point(r, theta, g), canonical_center(g)) == pytest.approx(r, abs=1e-10)


class TestCanonicalFrame:
    @pytest.mark.parametrize("g", ALL_GEOMETRIES)
    def test_frame_sends_pair_to_canonical_position(self, g, rng):
        for _ in range(100):
            u, w = random_point(rng, g), random_point(rng, g)
            frame = to_canonical(u, w)
            assert distance(frame.forward(u), canonical_center(g)) == pytest.approx(0.0, abs=1e-10)
            image = frame.forward(w)
            assert distance(image, polar_point(distance(u, w), 0.0, g)) == pytest.approx(0.0, abs=1e-8)

    @pytest.mark.parametrize("g", ALL_GEOMETRIES)
    def test_frame_is_an_isometry_with_inverse(self, g, rng):
        for _ in range(200):
            u, w, p, q = (random_point(rng, g) for _ in range(4))
            frame = to_canonical(u, w)
            assert distance(frame.forward(p), frame.forward(q)) == pytest.approx(distance(p, q), abs=1e-10)
            assert frame.inverse(frame.forward(p)).as_list() == pytest.approx(p.as_list(), abs=1e-10)

    def test_far_apart_spherical_points(self):
        u, p, q = Point.spherical(0.9, 0.0, 0.3), Point.spherical(-0.9, 0.0, 0.3), Point.spherical(0.0, 0.9, 0.3)
        assert distance(u, p) > math.pi / 2
        frame = to_canonical(u, q)
        image = frame.forward(p)
        assert distance(image, frame.forward(u)) == pytest.approx(distance(u, p), abs=1e-12)
        assert distance(image, frame.forward(q)) == pytest.approx(distance(q, p), abs=1e-12)
        assert frame.inverse(image).as_list() == pytest.approx(p.as_list(), abs=1e-12)

    def test_wide_spherical_frames_are_isometries(self, rng):
        g = GeometryKind.SPHERICAL
        for _ in range(500):
            u, w, p, q = (polar_point(float(rng.uniform(0.8, 1.5)), float(rng.uniform(0, 2 * math.pi)), g) for _ in range(4))
            frame = to_canonical(u, w)
            assert distance(frame.forward(p), frame.forward(q)) == pytest.approx(distance(p, q), abs=1e-10)
            assert frame.inverse(frame.forward(p)).as_list() == pytest.approx(p.as_list(), abs=1e-10)

    def test_inverse_validates_the_hemisphere(self):
        g = GeometryKind.SPHERICAL
        frame = to_canonical(canonical_center(g), polar_point(0.5, 0.0, g))
        with pytest.raises(HemisphereViolationError):
            frame.inverse(polar_point(2.0, 0.0, g, chart=True))

    def test_coincident_points_rejected(self):
        p = Point.hyperbolic(0.2, 0.1)
        with pytest.raises(DegenerateGeometryError):
            to_canonical(p, p)

    def test_frame_rejects_foreign_points(self):
        frame = to_canonical(Point.hyperbolic(0.0, 0.0), Point.hyperbolic(0.3, 0.0))
        with pytest.raises(GeometryMismatchError):
            frame.forward(Point.euclidean(0.0, 0.0))


class TestThirdVertex:
    @pytest.mark.parametrize("g", ALL_GEOMETRIES)
    def test_equal_radii_land_on_bisector(self, g):
        anchor = polar_point(1.0, 0.0, g)
        for side in (1, -1):
            p = third_vertex(1.0, 0.8, 0.8, side, g)
            assert distance(p, canonical_center(g)) == pytest.approx(distance(p, anchor), abs=1e-10)

    def test_flat_triple_rejected(self):
        with pytest.raises(InvalidSidesError):
            third_vertex(1.0, 0.4, 0.6, 1, GeometryKind.HYPERBOLIC)

    def test_hyperbolic_isosceles(self):
        g = GeometryKind.HYPERBOLIC
        p = third_vertex(1.0, 0.75, 0.75, 1, g)
        assert distance(p, canonical_center(g)) == pytest.approx(0.75, abs=1e-10)
        assert distance(p, polar_point(1.0, 0.0, g)) == pytest.approx(0.75, abs=1e-10)
        assert p.coords.y > 0

    def test_side_selects_half_plane(self):
        g = GeometryKind.SPHERICAL
        upper, lower = third_vertex(0.5, 0.4, 0.3, 1, g), third_vertex(0.5, 0.4, 0.3, -1, g)
        assert upper.coords.y > 0 > lower.coords.y

    def test_spherical_radius_past_quarter_circle(self):
        g = GeometryKind.SPHERICAL
        p = third_vertex(1.0, 1.7, 1.2, 1, g)
        assert distance(p, canonical_center(g)) == pytest.approx(1.7, abs=1e-10)
        assert distance(p, polar_point(1.0, 0.0, g)) == pytest.approx(1.2, abs=1e-10)


class TestCentroidFrame:
    def test_centroid_goes_to_the_pole(self, rng):
        g = GeometryKind.SPHERICAL
        for _ in range(100):
            points = [polar_point(float(rng.uniform(0.2, 1.5)), float(rng.uniform(0, 2 * math.pi)), g) for _ in range(5)]
            frame = centroid_frame(points)
            centroid = np.sum([p.as_list() for p in points], axis=0)
            image = frame.forward_coords(centroid / np.linalg.norm(centroid))
            assert list(image) == pytest.approx([0.0, 0.0, 1.0], abs=1e-12)
            assert distance(frame.forward(points[0]), frame.forward(points[1])) == pytest.approx(
                distance(points[0], points[1]), abs=1e-12
            )

    def test_centered_points_are_left_alone(self):
        g = GeometryKind.SPHERICAL
        points = [polar_point(0.4, k * 2 * math.pi / 3, g) for k in range(3)]
        frame = centroid_frame(points)
        assert frame.forward(points[1]).as_list() == pytest.approx(points[1].as_list(), abs=1e-12)

    def test_planar_points_rejected(self):
        with pytest.raises(GeometryMismatchError):
            centroid_frame([Point.euclidean(0.0, 0.0), Point.euclidean(1.0, 0.0)])


class TestCircumCurves:
    def test_concentric_points_give_circle(self):
        g = GeometryKind.HYPERBOLIC
        points = [polar_point(0.4, k * 2 * math.pi / 3, g) for k in range(3)]
        curve = circumcurve_through(*points)
        assert curve.kind == CircumCurveKind.CIRCLE
        assert curve.euclidean_center == pytest.approx((0.0, 0.0), abs=1e-12)
        center, radius = hyperbolic_center(curve)
        assert distance(center, canonical_center(g)) == pytest.approx(0.0, abs=1e-9)
        assert radius == pytest.approx(0.4, abs=1e-9)

    def test_diameter_gives_geodesic(self):
        points = [Point.hyperbolic(-0.5, 0), Point.hyperbolic(0, 0), Point.hyperbolic(0.5, 0)]
        assert circumcurve_through(*points).kind == CircumCurveKind.GEODESIC

    def test_internally_tangent_circle_gives_horocycle(self):
        points = [Point.hyperbolic(0.5 + 0.5 * math.cos(t), 0.5 * math.sin(t)) for t in (2.0, 3.0, 4.0)]
        assert circumcurve_through(*points).kind == CircumCurveKind.HOROCYCLE

    def test_orthogonal_arc_gives_geodesic(self):
        # Circle centered at (sqrt 2, 0) with radius 1 meets the unit circle at right angles
        points = [Point.hyperbolic(math.sqrt(2) + math.cos(t), math.sin(t)) for t in (2.6, 3.1416, 3.7)]
        assert circumcurve_through(*points).kind == CircumCurveKind.GEODESIC

    def test_oblique_arc_gives_hypercycle(self):
        points = [Point.hyperbolic(1.2 + 0.8 * math.cos(t), 0.8 * math.sin(t)) for t in (2.8, 3.1416, 3.5)]
        assert circumcurve_through(*points).kind == CircumCurveKind.HYPERCYCLE

    def test_coincident_points_rejected(self):
        p = Point.hyperbolic(0.1, 0.2)
        with pytest.raises(DegenerateGeometryError):
            circumcurve_through(p, p, Point.hyperbolic(0.3, 0.0))

    def test_defining_points_lie_on_curve(self, rng):
        for _ in range(100):
            points = random_triangle(rng, GeometryKind.HYPERBOLIC)
            curve = circumcurve_through(*points)
            assert all(lies_on(curve, p, 1e-9) for p in points)

    def test_classification_ignores_labelling(self, rng):
        triples = [random_triangle(rng, GeometryKind.HYPERBOLIC) for _ in range(300)]
        triples += [
            [Point.hyperbolic(0.5 + 0.5 * math.cos(t), 0.5 * math.sin(t)) for t in (2.0, 3.0, 4.0)],
            [Point.hyperbolic(math.sqrt(2) + math.cos(t), math.sin(t)) for t in (2.6, 3.1416, 3.7)],
            [Point.hyperbolic(1.2 + 0.8 * math.cos(t), 0.8 * math.sin(t)) for t in (2.8, 3.1416, 3.5)],
            [Point.hyperbolic(-0.5, 0), Point.hyperbolic(0, 0), Point.hyperbolic(0.5, 0)],
        ]
        for points in triples:
            kinds = {circumcurve_through(*perm).kind for perm in itertools.permutations(points)}
            assert len(kinds) == 1

    def test_center_not_on_off_center_circle(self):
        g = GeometryKind.HYPERBOLIC
        points = [Point.hyperbolic(0.3 + 0.1 * math.cos(t), 0.1 * math.sin(t)) for t in (0.0, 2.0, 4.0)]
        assert not lies_on(circumcurve_through(*points), canonical_center(g), 1e-6)

    def test_horocycle_has_no_center(self):
        points = [Point.hyperbolic(0.5 + 0.5 * math.cos(t), 0.5 * math.sin(t)) for t in (2.0, 3.0, 4.0)]
        with pytest.raises(UnsupportedConfigurationError):
            hyperbolic_center(circumcurve_through(*points))

    def test_spherical_circle_through_parallel(self):
        g = GeometryKind.SPHERICAL
        points = [polar_point(0.7, t, g) for t in (0.1, 2.0, 4.0)]
        circle = spherical_circle_through(*points)
        assert circle.angular_radius == pytest.approx(0.7, abs=1e-10)
        assert concyclicity_residual(*points, polar_point(0.7, 5.0, g)) == pytest.approx(0.0, abs=1e-12)
        assert concyclicity_residual(*points, polar_point(0.6, 5.0, g)) > 1e-3

    def test_planar_concyclicity(self):
        g = GeometryKind.EUCLIDEAN
        points = [polar_point(1.0, t, g) for t in (0.0, 1.0, 2.0, 3.0)]
        assert concyclicity_residual(*points) == pytest.approx(0.0, abs=1e-12)
