import math

import numpy as np
import pytest

from app.core.dependencies import get_tolerances
from app.core.exceptions import (
    ArityError,
    BoundaryViolationError,
    DegenerateGeometryError,
    GeometryMismatchError,
    HemisphereViolationError,
    SamplingError,
    UnsupportedConfigurationError,
)
from app.schemas.geometry.geometry_models import GeometryKind, Point
from app.schemas.polygon.polygon_models import Polygon, PolygonFile
from app.schemas.polygon.regular_models import RegularSpec
from app.services.area.triangle_area import area_from_vertices
from app.services.geometry.kernel import orientation, polar_point, to_canonical
from app.services.polygon.polygon_service import get_polygon_service
from app.services.polygon.sampler import ConvexPolygonSampler
from app.services.regular.regular_gon import build_regular
from app.utils.validator.simple_validator import get_simple_polygon_validator
from tests.conftest import NON_EUCLIDEAN, RADIUS_BOUND, octant_triangle, random_point, random_triangle


def regular(n: int, perimeter: float, g: GeometryKind = GeometryKind.HYPERBOLIC) -> Polygon:
    return build_regular(RegularSpec(n=n, perimeter=perimeter, geometry=g))


def dented_square() -> Polygon:
    """Regular hyperbolic 4-gon with its first vertex pushed across the center."""
    square = regular(4, 4.0)
    rho = square.vertex(0).coords.x
    return square.with_vertex(0, Point.hyperbolic(-rho / 2, 0.0))


def quadrilateral(rng: np.random.Generator, g: GeometryKind) -> Polygon:
    thetas = np.sort(rng.uniform(0, 2 * math.pi, 4))
    radii = rng.uniform(0.5, 1.0, 4) * (0.7 if g == GeometryKind.SPHERICAL else 1.5)
    return Polygon(geometry=g, vertices=tuple(polar_point(float(r), float(t), g) for r, t in zip(radii, thetas)))


class TestPolygonModel:
    def test_coincident_neighbours_rejected(self):
        p = Point.hyperbolic(0.1, 0.2)
        with pytest.raises(DegenerateGeometryError):
            Polygon(geometry=GeometryKind.HYPERBOLIC, vertices=(p, p, Point.hyperbolic(-0.3, 0.0)))

    def test_mixed_geometries_rejected(self):
        with pytest.raises(GeometryMismatchError):
            Polygon(
                geometry=GeometryKind.HYPERBOLIC,
                vertices=(Point.hyperbolic(0, 0), Point.hyperbolic(0.5, 0), Point.euclidean(0, 0.5)),
            )

    def test_too_few_vertices(self):
        with pytest.raises(ValueError):
            Polygon(geometry=GeometryKind.EUCLIDEAN, vertices=(Point.euclidean(0, 0), Point.euclidean(1, 0)))

    def test_polygon_file_round_trip(self):
        p = octant_triangle().to_polygon()
        assert PolygonFile.from_polygon(p).to_polygon() == p

    def test_cyclic_indexing(self):
        p = regular(5, 3.0)
        assert p.vertex(-1) == p.vertex(4)
        assert p.vertex(7) == p.vertex(2)
        assert p.rotated(2).vertex(0) == p.vertex(2)


class TestPerimeter:
    def test_regular_square_perimeter(self, polygon_service):
        assert polygon_service.perimeter(regular(4, 4.0)) == pytest.approx(4.0, abs=1e-9)

    def test_rotation_invariance(self, polygon_service, sampler):
        q = sampler.sample_convex_polygon(7, GeometryKind.HYPERBOLIC, 1.5, seed=2)
        base = polygon_service.perimeter(q)
        for k in range(q.n):
            assert polygon_service.perimeter(q.rotated(k)) == pytest.approx(base, abs=1e-12)

    def test_octant_perimeter(self, polygon_service):
        assert polygon_service.perimeter(octant_triangle().to_polygon()) == pytest.approx(3 * math.pi / 2, abs=1e-12)

    def test_side_lengths_shift_with_rotation(self, polygon_service, sampler):
        p = sampler.sample_convex_polygon(6, GeometryKind.HYPERBOLIC, 1.0, seed=3)
        sides = polygon_service.side_lengths(p)
        assert polygon_service.side_lengths(p.rotated(2)) == pytest.approx(sides[2:] + sides[:2], abs=1e-12)

    @pytest.mark.parametrize("g", list(GeometryKind))
    def test_regular_sides_equal(self, polygon_service, g):
        sides = polygon_service.side_lengths(regular(9, 2.0, g))
        assert max(sides) - min(sides) <= 1e-10


class TestInteriorAngles:
    def test_octant_right_angles(self, polygon_service):
        angles = polygon_service.interior_angles(octant_triangle().to_polygon())
        assert angles == pytest.approx([math.pi / 2] * 3, abs=1e-12)

    def test_hyperbolic_triangle_angle_sum(self, polygon_service, rng):
        for _ in range(200):
            p = Polygon(
                geometry=GeometryKind.HYPERBOLIC,
                vertices=tuple(polar_point(float(rng.uniform(0.3, 2.0)), t, GeometryKind.HYPERBOLIC)
                               for t in (0.0, 2.1, 4.2)),
            )
            assert sum(polygon_service.interior_angles(p)) < math.pi

    def test_regular_angles_equal(self, polygon_service):
        for n in range(3, 11):
            angles = polygon_service.interior_angles(regular(n, 5.0))
            assert max(angles) - min(angles) <= 1e-9

    def test_nonconvex_rejected(self, polygon_service):
        with pytest.raises(UnsupportedConfigurationError):
            polygon_service.interior_angles(dented_square())


class TestConvexity:
    @pytest.mark.parametrize("g", list(GeometryKind))
    def test_regular_is_convex(self, polygon_service, g):
        for n in (3, 4, 8, 12):
            assert polygon_service.is_convex(regular(n, 1.0, g))

    def test_dented_square_is_not_convex(self, polygon_service):
        assert not polygon_service.is_convex(dented_square())
        with pytest.raises(UnsupportedConfigurationError, match="nonconvex"):
            polygon_service.area_convex(dented_square())

    @pytest.mark.parametrize("g", list(GeometryKind))
    def test_triangles_are_convex(self, polygon_service, rng, g):
        for _ in range(200):
            assert polygon_service.is_convex(Polygon(geometry=g, vertices=random_triangle(rng, g)))

    def test_orientation_does_not_matter(self, polygon_service):
        p = regular(6, 2.0)
        assert polygon_service.is_convex(p.reversed())

    @pytest.mark.parametrize("g", list(GeometryKind))
    def test_agrees_with_pairwise_orientations(self, polygon_service, rng, g):
        for _ in range(300):
            q = quadrilateral(rng, g)
            signs = {
                orientation(q.vertex(i), q.vertex(i + 1), q.vertex(j)) > 0
                for i in range(4)
                for j in range(4)
                if j not in (i, (i + 1) % 4)
            }
            assert polygon_service.is_convex(q) == (len(signs) == 1)

    def test_pentagram_is_not_convex(self, polygon_service):
        p = regular(5, 2.0)
        star = Polygon(geometry=p.geometry, vertices=tuple(p.vertex(2 * k) for k in range(5)))
        assert not polygon_service.is_convex(star)

    def test_straight_angle_is_not_convex(self, polygon_service):
        square = [Point.euclidean(x, y) for x, y in ((0, 0), (1, 0), (2, 0), (2, 2), (0, 2))]
        assert not polygon_service.is_convex(Polygon(geometry=GeometryKind.EUCLIDEAN, vertices=tuple(square)))


class TestArea:
    @pytest.mark.parametrize("g", list(GeometryKind))
    def test_triangle_area_is_triangle_area(self, polygon_service, g):
        p = regular(3, 1.5, g)
        assert polygon_service.area_convex(p) == pytest.approx(area_from_vertices(*p.vertices).area, abs=1e-15)

    @pytest.mark.parametrize("g", list(GeometryKind))
    def test_fan_apex_does_not_matter(self, polygon_service, sampler, g):
        scale = 0.6 if g == GeometryKind.SPHERICAL else 1.0
        for seed in range(20):
            p = sampler.sample_convex_polygon(7, g, scale, seed)
            assert polygon_service.area_convex(p.rotated(1)) == pytest.approx(polygon_service.area_convex(p), abs=1e-9)

    def test_hyperbolic_area_below_angle_sum_bound(self, polygon_service, sampler):
        for seed in range(20):
            p = sampler.sample_convex_polygon(5, GeometryKind.HYPERBOLIC, 3.0, seed)
            assert polygon_service.area_convex(p) < 3 * math.pi

    def test_octant_area(self, polygon_service):
        assert polygon_service.checked_area(octant_triangle().to_polygon()) == pytest.approx(math.pi / 2, abs=1e-12)

    @pytest.mark.parametrize("g", list(GeometryKind))
    def test_checked_area_matches_fan(self, polygon_service, sampler, g):
        p = sampler.sample_convex_polygon(6, g, 0.6, seed=9)
        assert polygon_service.checked_area(p) == polygon_service.area_convex(p)

    @pytest.mark.parametrize("g", list(GeometryKind))
    def test_isometry_preserves_measurements(self, polygon_service, sampler, rng, g):
        p = sampler.sample_convex_polygon(6, g, 0.6, seed=5)
        frame = to_canonical(random_point(rng, g), random_point(rng, g))
        moved = polygon_service.transform(p, frame)
        assert polygon_service.perimeter(moved) == pytest.approx(polygon_service.perimeter(p), abs=1e-10)
        assert polygon_service.area_convex(moved) == pytest.approx(polygon_service.area_convex(p), abs=1e-10)


class TestWimmerGap:
    @pytest.mark.parametrize("g", list(GeometryKind))
    def test_regular_quadrilateral_has_no_gap(self, polygon_service, g):
        assert polygon_service.wimmer_gap(regular(4, 2.0, g)) == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("g", NON_EUCLIDEAN)
    def test_relabelling(self, polygon_service, rng, g):
        checked = 0
        while checked < 20:
            q = quadrilateral(rng, g)
            if not polygon_service.is_convex(q):
                continue
            gap = polygon_service.wimmer_gap(q)
            # a one-step shift swaps the two opposite-angle pairs, and so does reversal
            assert polygon_service.wimmer_gap(q.rotated(1)) == pytest.approx(-gap, abs=1e-12)
            assert polygon_service.wimmer_gap(q.reversed()) == pytest.approx(-gap, abs=1e-12)
            assert polygon_service.wimmer_gap(q.reversed().rotated(1)) == pytest.approx(gap, abs=1e-12)
            checked += 1

    def test_triangle_rejected(self, polygon_service):
        with pytest.raises(ArityError):
            polygon_service.wimmer_gap(regular(3, 1.0))


class TestRegularityPredicates:
    def test_regular_polygon(self, polygon_service):
        assert polygon_service.is_regular(regular(6, 3.0))

    def test_sampled_polygon_is_not_regular(self, polygon_service, sampler):
        p = sampler.sample_convex_polygon(6, GeometryKind.HYPERBOLIC, 1.0, seed=1)
        assert not polygon_service.is_equilateral(p)
        assert not polygon_service.is_regular(p)

    def test_rhombus_is_equilateral_not_equiangular(self, polygon_service):
        g = GeometryKind.EUCLIDEAN
        rhombus = Polygon(geometry=g, vertices=tuple(
            Point.euclidean(x, y) for x, y in ((0, 0), (1, 0), (1.5, math.sqrt(3) / 2), (0.5, math.sqrt(3) / 2))
        ))
        assert polygon_service.is_equilateral(rhombus)
        assert not polygon_service.is_equiangular(rhombus)


class TestSampler:
    @pytest.mark.parametrize("g", list(GeometryKind))
    def test_samples_are_convex(self, polygon_service, sampler, g):
        scale = 0.6 if g == GeometryKind.SPHERICAL else 1.0
        for seed in range(30):
            p = sampler.sample_convex_polygon(int(3 + seed % 6), g, scale, seed)
            assert polygon_service.is_convex(p)

    def test_same_seed_same_polygon(self, sampler):
        a = sampler.sample_convex_polygon(6, GeometryKind.HYPERBOLIC, 1.0, seed=42)
        b = sampler.sample_convex_polygon(6, GeometryKind.HYPERBOLIC, 1.0, seed=42)
        assert a == b

    def test_vertex_distances_within_scale(self, sampler):
        p = sampler.sample_convex_polygon(5, GeometryKind.SPHERICAL, 0.6, seed=4)
        for v in p.vertices:
            assert 0.3 <= math.acos(v.coords.z) <= 0.6 + 1e-12

    def test_triangles_accepted_first_try(self, polygon_service):
        single_shot = ConvexPolygonSampler(polygon_service, max_tries=1)
        for seed in range(50):
            single_shot.sample_convex_polygon(3, GeometryKind.HYPERBOLIC, RADIUS_BOUND[GeometryKind.HYPERBOLIC], seed)

    def test_budget_exhaustion(self, polygon_service):
        with pytest.raises(SamplingError):
            ConvexPolygonSampler(polygon_service, max_tries=2).sample_convex_polygon(40, GeometryKind.EUCLIDEAN, 1.0, 0)

    def test_spherical_scale_bounded(self, sampler):
        with pytest.raises(HemisphereViolationError):
            sampler.sample_convex_polygon(4, GeometryKind.SPHERICAL, math.pi / 2, 0)

    def test_arity(self, sampler):
        with pytest.raises(ArityError):
            sampler.sample_convex_polygon(2, GeometryKind.HYPERBOLIC, 1.0, 0)


class TestSimplePolygonValidator:
    def test_valid_file(self, polygon_service):
        polygon = get_simple_polygon_validator(polygon_service).validate(octant_triangle())
        assert polygon.n == 3

    def test_arity(self, polygon_service):
        validator = get_simple_polygon_validator(polygon_service, arity=4)
        with pytest.raises(ArityError):
            validator.validate(octant_triangle())

    def test_boundary_band_follows_eps_predicate(self):
        polygon_file = PolygonFile(geometry=GeometryKind.HYPERBOLIC, vertices=[[0, 0], [1 - 1e-7, 0], [0, 0.5]])
        assert get_simple_polygon_validator(get_polygon_service(get_tolerances())).validate(polygon_file).n == 3
        wide = get_polygon_service(get_tolerances(eps_predicate=1e-6, eps_converge=1e-5))
        with pytest.raises(BoundaryViolationError):
            get_simple_polygon_validator(wide).validate(polygon_file)

    def test_equator_band_follows_eps_predicate(self):
        polygon_file = PolygonFile(
            geometry=GeometryKind.SPHERICAL,
            vertices=[[1.0, 0.0, 1e-8], [0.0, 1.0, 0.5], [-0.5, -0.5, 1.0]],
        )
        wide = get_polygon_service(get_tolerances(eps_predicate=1e-6, eps_converge=1e-5))
        with pytest.raises(HemisphereViolationError):
            get_simple_polygon_validator(wide).validate(polygon_file)

    def test_nonconvex(self, polygon_service):
        polygon_file = PolygonFile.from_polygon(dented_square())
        with pytest.raises(UnsupportedConfigurationError):
            get_simple_polygon_validator(polygon_service).validate(polygon_file)

    def test_point_outside_disk(self, polygon_service):
        polygon_file = PolygonFile(geometry=GeometryKind.HYPERBOLIC, vertices=[[0, 0], [1.0, 0], [0, 0.5]])
        with pytest.raises(BoundaryViolationError):
            get_simple_polygon_validator(polygon_service).validate(polygon_file)

