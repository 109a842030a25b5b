from typing import Optional, Tuple

import math

import numpy as np

from app.core.config import settings
from app.core.exceptions import DegenerateGeometryError, GeometryMismatchError, UnsupportedConfigurationError
from app.core.logging_config import get_logger
from app.schemas.geometry.geometry_models import (
    CircumCurve,
    CircumCurveKind,
    GeometryKind,
    Point,
    SphereCircle,
)
from app.services.geometry.kernel import common_geometry

logger = get_logger("circumcurve")

# Circumradii beyond this are treated as straight chords
MAX_CIRCUMRADIUS = 1e6


def _planar_circle(a: complex, b: complex, c: complex) -> Optional[Tuple[complex, float]]:
    """Euclidean circumcircle through three planar points, or None when (nearly) collinear."""
    ba, ca = b - a, c - a
    d = 2.0 * (ba.real * ca.imag - ba.imag * ca.real)
    if d == 0.0:
        return None
    ba2, ca2 = abs(ba) ** 2, abs(ca) ** 2
    offset = complex(ca.imag * ba2 - ba.imag * ca2, ba.real * ca2 - ca.real * ba2) / d
    radius = abs(offset)
    if radius > MAX_CIRCUMRADIUS:
        return None
    return a + offset, radius


def _check_distinct(*zs: complex) -> None:
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if abs(zs[i] - zs[j]) == 0.0:
                raise DegenerateGeometryError("Circumcurve requested through coincident points")


def circumcurve_through(p1: Point, p2: Point, p3: Point, eps_predicate: Optional[float] = None) -> CircumCurve:
    """
    Classify the Euclidean circle (or straight chord) through three disk points.

    @param p1: First point.
    @param p2: Second point.
    @param p3: Third point.
    @param eps_predicate: Classification band; defaults to the configured EPS_PREDICATE.
    @return: The classified CircumCurve.
    @raises DegenerateGeometryError: If two of the points coincide.
    """
    if common_geometry(p1, p2, p3) != GeometryKind.HYPERBOLIC:
        raise GeometryMismatchError("Circumcurve classification is defined in the Poincare disk only")
    eps = settings.EPS_PREDICATE if eps_predicate is None else eps_predicate
    zs = (p1.complex, p2.complex, p3.complex)
    _check_distinct(*zs)

    circle = _planar_circle(*zs)
    if circle is None:
        # Chord through the two farthest points
        a, b = max(((zs[i], zs[j]) for i in range(3) for j in range(i + 1, 3)), key=lambda pair: abs(pair[0] - pair[1]))
        t = (b - a) / abs(b - a)
        normal = complex(-t.imag, t.real)
        h = normal.real * a.real + normal.imag * a.imag
        if h < 0:
            normal, h = -normal, -h
        kind = CircumCurveKind.GEODESIC if h < eps else CircumCurveKind.HYPERCYCLE
        foot = normal * h
        logger.debug(f"Straight chord at distance {h} from the origin: {kind.value}")
        return CircumCurve(
            kind=kind,
            euclidean_center=(foot.real, foot.imag),
            euclidean_radius=math.inf,
            chord_normal=(normal.real, normal.imag),
            boundary_cosine=h,
        )

    center, radius = circle
    delta = abs(center)
    gap = 1.0 - (delta + radius)
    cosine = None
    if abs(gap) < eps:
        kind = CircumCurveKind.HOROCYCLE
    elif gap > 0:
        kind = CircumCurveKind.CIRCLE
    else:
        # Angle between the curve and the unit circle at a crossing point
        cosine = abs((radius ** 2 + 1.0 - delta ** 2) / (2.0 * radius))
        kind = CircumCurveKind.GEODESIC if cosine < eps else CircumCurveKind.HYPERCYCLE
    logger.debug(f"Circle center={center}, radius={radius}: {kind.value}")
    return CircumCurve(
        kind=kind,
        euclidean_center=(center.real, center.imag),
        euclidean_radius=radius,
        boundary_cosine=cosine,
    )


def curve_distance(curve: CircumCurve, p: Point) -> float:
    """Euclidean distance from p's disk coordinates to the curve."""
    z = p.complex
    if curve.is_straight:
        nx, ny = curve.chord_normal
        h = nx * curve.euclidean_center[0] + ny * curve.euclidean_center[1]
        return abs(nx * z.real + ny * z.imag - h)
    center = complex(*curve.euclidean_center)
    return abs(abs(z - center) - curve.euclidean_radius)


def lies_on(curve: CircumCurve, p: Point, tol: float) -> bool:
    """
    Membership test for a fourth point.

    @param curve: Curve from circumcurve_through.
    @param p: Disk point.
    @param tol: Euclidean distance tolerance.
    @return: True iff p is within tol of the curve.
    """
    if p.geometry != GeometryKind.HYPERBOLIC:
        raise GeometryMismatchError("lies_on expects a disk point")
    return curve_distance(curve, p) <= tol


def hyperbolic_center(curve: CircumCurve) -> Tuple[Point, float]:
    """
    Hyperbolic center and radius of a Circle-kind curve.

    The diameter through the Euclidean center meets the circle at two points;
    the hyperbolic center is their hyperbolic midpoint.

    @return: (center, hyperbolic radius).
    @raises UnsupportedConfigurationError: For horocycles, hypercycles and geodesics.
    """
    if curve.kind != CircumCurveKind.CIRCLE:
        raise UnsupportedConfigurationError(f"A {curve.kind.value} has no hyperbolic center")
    center = complex(*curve.euclidean_center)
    delta = abs(center)
    direction = center / delta if delta > 0 else 1.0 + 0j
    near, far = delta - curve.euclidean_radius, delta + curve.euclidean_radius
    rho = math.tanh((math.atanh(near) + math.atanh(far)) / 2)
    c = rho * direction
    return Point.hyperbolic(c.real, c.imag), math.atanh(far) - math.atanh(near)


def spherical_circle_through(p1: Point, p2: Point, p3: Point) -> SphereCircle:
    """
    The spherical circle through three points: the sphere cut by the plane through them.

    @raises DegenerateGeometryError: If two of the points coincide.
    """
    if common_geometry(p1, p2, p3) != GeometryKind.SPHERICAL:
        raise GeometryMismatchError("spherical_circle_through expects spherical points")
    a, b, c = p1.vector, p2.vector, p3.vector
    normal = np.cross(b - a, c - a)
    norm = float(np.linalg.norm(normal))
    if norm == 0.0:
        raise DegenerateGeometryError("Spherical circle requested through coincident points")
    normal = normal / norm
    offset = float(np.dot(normal, a))
    if offset < 0:
        normal, offset = -normal, -offset
    return SphereCircle(
        normal=tuple(float(x) for x in normal),
        offset=offset,
        angular_radius=math.acos(min(offset, 1.0)),
    )


def concyclicity_residual(p1: Point, p2: Point, p3: Point, p4: Point) -> float:
    """
    How far p4 is from the circle through p1, p2, p3.

    Sphere: offset of p4 from the cutting plane. Disk: distance to the
    circumcurve. Plane: distance to the circumcircle (or line).

    @return: Nonnegative residual, zero for concyclic points.
    """
    g = common_geometry(p1, p2, p3, p4)
    if g == GeometryKind.SPHERICAL:
        circle = spherical_circle_through(p1, p2, p3)
        return abs(float(np.dot(circle.normal, p4.vector)) - circle.offset)
    if g == GeometryKind.HYPERBOLIC:
        return curve_distance(circumcurve_through(p1, p2, p3), p4)
    zs = (p1.complex, p2.complex, p3.complex)
    _check_distinct(*zs)
    circle = _planar_circle(*zs)
    if circle is None:
        a, b = zs[0], zs[2]
        t = (b - a) / abs(b - a)
        return abs(((p4.complex - a) * t.conjugate()).imag)
    center, radius = circle
    return abs(abs(p4.complex - center) - radius)
