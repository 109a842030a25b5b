import math

from app.core.exceptions import CrossCheckError, HemisphereViolationError, InfeasiblePerimeterError
from app.core.logging_config import get_logger
from app.schemas.geometry.geometry_models import GeometryKind
from app.schemas.polygon.polygon_models import Polygon
from app.schemas.polygon.regular_models import RegularGon, RegularSpec
from app.services.area.triangle_area import area_of_sides
from app.services.geometry.kernel import law_of_cosines_angle, polar_point
from app.services.polygon.polygon_service import PolygonService

logger = get_logger("regular_gon")

# Upper end of the spherical circumradius bracket
SPHERICAL_RADIUS_CAP = math.pi / 2 - 1e-9
MAX_BISECTIONS = 200
CROSS_CHECK_TOLERANCE = 1e-8


def side_for_circumradius(n: int, r: float, g: GeometryKind) -> float:
    """
    Side of the regular n-gon with circumradius r.

    The central isosceles triangle has legs r and apex angle 2pi/n; halving it gives
    sinh(l/2) = sinh(r) sin(pi/n), sin(l/2) = sin(r) sin(pi/n), l/2 = r sin(pi/n).

    @param n: Number of sides.
    @param r: Circumradius.
    @param g: Geometry.
    @return: Side length, strictly increasing in r.
    @raises HemisphereViolationError: On the sphere when r >= pi/2.
    """
    g = GeometryKind(g)
    if r < 0:
        raise InfeasiblePerimeterError(f"Circumradius must be nonnegative, got {r}")
    half_apex = math.sin(math.pi / n)
    if g == GeometryKind.HYPERBOLIC:
        return 2.0 * math.asinh(math.sinh(r) * half_apex)
    if g == GeometryKind.SPHERICAL:
        if r >= math.pi / 2:
            raise HemisphereViolationError(f"Circumradius {r} leaves the open hemisphere")
        return 2.0 * math.asin(math.sin(r) * half_apex)
    return 2.0 * r * half_apex


def circumradius_for_perimeter(spec: RegularSpec) -> float:
    """
    Circumradius r* with n * side_for_circumradius(n, r*) = L, by bisection.

    @param spec: Feasible regular spec.
    @return: r*, with |n l(r*) - L| < 1e-12 max(1, L) unless the bracket collapses first.
    @raises InfeasiblePerimeterError: If L cannot be reached inside the bracket.
    """
    n, target, g = spec.n, spec.perimeter, spec.geometry

    def residual(r: float) -> float:
        return n * side_for_circumradius(n, r, g) - target

    lo = 0.0
    if g == GeometryKind.SPHERICAL:
        hi = SPHERICAL_RADIUS_CAP
        if residual(hi) < 0:
            raise InfeasiblePerimeterError(f"Perimeter {target} is out of reach for a spherical {n}-gon")
    else:
        hi = 1.0
        while residual(hi) < 0:
            hi *= 2.0

    tol = 1e-12 * max(1.0, target)
    mid = (lo + hi) / 2
    for _ in range(MAX_BISECTIONS):
        mid = (lo + hi) / 2
        res = residual(mid)
        if abs(res) < tol:
            break
        if res < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 2 * math.ulp(hi):
            break
    logger.debug(f"Solved circumradius {mid} for n={n}, L={target}, {g.value}")
    return mid


def build_regular(spec: RegularSpec) -> Polygon:
    """
    The regular n-gon of perimeter L centered at the canonical center, first vertex on theta = 0.

    @param spec: Feasible spec.
    @return: The polygon.
    """
    r = circumradius_for_perimeter(spec)
    vertices = tuple(polar_point(r, 2 * math.pi * k / spec.n, spec.geometry) for k in range(spec.n))
    return Polygon(geometry=spec.geometry, vertices=vertices)


def regular_area(spec: RegularSpec) -> float:
    """
    Area of the regular n-gon of perimeter L: n copies of the central triangle (r, r, l).

    @param spec: Feasible spec.
    @return: Area.
    """
    r = circumradius_for_perimeter(spec)
    side = side_for_circumradius(spec.n, r, spec.geometry)
    return spec.n * area_of_sides(r, r, side, spec.geometry)


def regular_interior_angle(spec: RegularSpec) -> float:
    """Twice the base angle of the central isosceles triangle."""
    r = circumradius_for_perimeter(spec)
    side = side_for_circumradius(spec.n, r, spec.geometry)
    return 2.0 * law_of_cosines_angle(r, side, r, spec.geometry)


def solve_regular(spec: RegularSpec) -> RegularGon:
    """
    Circumradius, side, interior angle and area of the regular n-gon, with the
    area cross-checked against the angle sum (the classical formula in the plane).

    @param spec: Feasible spec.
    @return: The solved RegularGon.
    @raises CrossCheckError: If the two areas disagree by more than 1e-8.
    """
    n, g = spec.n, spec.geometry
    r = circumradius_for_perimeter(spec)
    side = side_for_circumradius(n, r, g)
    angle = 2.0 * law_of_cosines_angle(r, side, r, g)
    area = n * area_of_sides(r, r, side, g)
    if g == GeometryKind.HYPERBOLIC:
        check = (n - 2) * math.pi - n * angle
    elif g == GeometryKind.SPHERICAL:
        check = n * angle - (n - 2) * math.pi
    else:
        check = spec.perimeter ** 2 / (4 * n * math.tan(math.pi / n))
    if abs(area - check) > CROSS_CHECK_TOLERANCE:
        logger.error(f"Regular area cross-check failed: {area} vs {check} for {spec}")
        raise CrossCheckError(f"Closed-form area {area} disagrees with angle-sum area {check}")
    return RegularGon(
        n=n,
        perimeter=spec.perimeter,
        geometry=g,
        circumradius=r,
        side=side,
        interior_angle=angle,
        area=area,
        gauss_bonnet_area=check,
    )


def isoperimetric_ratio(p: Polygon, polygon_service: PolygonService) -> float:
    """
    Area of p divided by the area of the regular polygon with the same n and perimeter.
    At most 1 for convex polygons.

    @param p: Convex polygon.
    @param polygon_service: Measures area and perimeter.
    @return: The deficit ratio.
    """
    spec = RegularSpec(n=p.n, perimeter=polygon_service.perimeter(p), geometry=p.geometry)
    return polygon_service.area_convex(p) / regular_area(spec)
