import math

from app.core.exceptions import InvalidSidesError
from app.core.logging_config import get_logger
from app.schemas.geometry.geometry_models import GeometryKind, Point
from app.schemas.geometry.triangle_models import TriangleArea, TriangleSides
from app.services.geometry.kernel import angle_at, common_geometry, distance

# Initialize the logger
logger = get_logger("triangle_area")


def area_from_sides(t: TriangleSides) -> float:
    """
    Closed-form triangle area from side lengths.

    Spherical: Lhuilier, tan^2(S/4) = tan(s/2) tan((s-a)/2) tan((s-b)/2) tan((s-c)/2).
    Hyperbolic: tan^2(S/4) = tanh(s/2) tanh((s-a)/2) tanh((s-b)/2) tanh((s-c)/2).
    Euclidean: Heron.

    @param t: Validated side triple.
    @return: Nonnegative area.
    """
    s = t.semi_perimeter
    sa, sb, sc = t.excesses
    if t.geometry == GeometryKind.SPHERICAL:
        product = math.tan(s / 2) * math.tan(sa / 2) * math.tan(sb / 2) * math.tan(sc / 2)
        # S/4 lies in (0, pi/2) for a triangle inside an open hemisphere
        return 4.0 * math.atan(math.sqrt(max(product, 0.0)))
    if t.geometry == GeometryKind.HYPERBOLIC:
        product = math.tanh(s / 2) * math.tanh(sa / 2) * math.tanh(sb / 2) * math.tanh(sc / 2)
        return 4.0 * math.atan(math.sqrt(max(product, 0.0)))
    return math.sqrt(max(s * sa * sb * sc, 0.0))


def area_of_sides(a: float, b: float, c: float, g: GeometryKind) -> float:
    """Shorthand for area_from_sides(TriangleSides(a, b, c, g))."""
    return area_from_sides(TriangleSides(a=a, b=b, c=c, geometry=g))


def area_from_vertices(p: Point, q: Point, r: Point) -> TriangleArea:
    """
    Triangle area from its vertices via the pairwise distances.

    @return: TriangleArea; collinear or coincident vertices give area 0.0 flagged degenerate.
    """
    g = common_geometry(p, q, r)
    try:
        return TriangleArea(area=area_of_sides(distance(q, r), distance(p, r), distance(p, q), g))
    except InvalidSidesError as e:
        logger.debug(f"Degenerate triangle treated as zero area: {e.detail}")
        return TriangleArea(area=0.0, degenerate=True)


def shoelace_area(points) -> float:
    """Unsigned planar polygon area from complex-coordinate vertices."""
    zs = [p.complex for p in points]
    twice = sum((zs[i].conjugate() * zs[(i + 1) % len(zs)]).imag for i in range(len(zs)))
    return abs(twice) / 2


def area_gauss_bonnet(p: Point, q: Point, r: Point) -> float:
    """
    Angle-defect (disk) or angle-excess (sphere) area of a triangle.

    In the plane the defect vanishes identically, so the coordinate (shoelace)
    area is returned as the independent oracle instead.

    @return: The area from the interior angles.
    """
    g = common_geometry(p, q, r)
    if g == GeometryKind.EUCLIDEAN:
        return shoelace_area((p, q, r))
    angle_sum = angle_at(p, q, r) + angle_at(q, p, r) + angle_at(r, p, q)
    if g == GeometryKind.HYPERBOLIC:
        return math.pi - angle_sum
    return angle_sum - math.pi
