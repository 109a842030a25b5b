"""
Metric kernel for the Poincare disk, the open northern hemisphere and the plane.

Disk points are handled as complex numbers; the Mobius map
z -> (z - v) / (1 - conj(v) z) moves v to the origin, where geodesics become
diameters and (by conformality) angles are read off directly.
"""
from abc import ABC, abstractmethod
from typing import Optional, Sequence

import cmath
import math

import numpy as np

from app.core.exceptions import (
    DegenerateGeometryError,
    GeometryMismatchError,
    HemisphereViolationError,
    InvalidSidesError,
)
from app.core.logging_config import get_logger
from app.schemas.geometry.geometry_models import GeometryKind, Point

logger = get_logger("kernel")

HALF_PI = math.pi / 2


def common_geometry(*points: Point) -> GeometryKind:
    """
    Return the geometry shared by all points.

    @param points: One or more points.
    @return: Their common GeometryKind.
    @raises GeometryMismatchError: If the points come from different geometries.
    """
    kinds = {p.geometry for p in points}
    if len(kinds) != 1:
        raise GeometryMismatchError(f"Mixed geometries: {sorted(k.value for k in kinds)}")
    return kinds.pop()


def recenter_disk(v: complex, z: complex) -> complex:
    """Image of z under the disk isometry sending v to the origin."""
    return (z - v) / (1 - v.conjugate() * z)


def canonical_center(g: GeometryKind) -> Point:
    """The disk origin, the north pole, or the planar origin."""
    g = GeometryKind(g)
    if g == GeometryKind.SPHERICAL:
        return Point.spherical(0.0, 0.0, 1.0)
    return Point.from_coords(g, [0.0, 0.0])


def _dot3(a: Sequence[float], b: Sequence[float]) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross3(a: Sequence[float], b: Sequence[float]) -> tuple:
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def distance(p: Point, q: Point) -> float:
    """
    Geodesic distance between two points of the same geometry.

    @param p: First point.
    @param q: Second point.
    @return: Nonnegative distance; spherical distances are central angles.
    @raises GeometryMismatchError: If p and q live in different geometries.
    """
    g = common_geometry(p, q)
    if g == GeometryKind.HYPERBOLIC:
        z, w = p.complex, q.complex
        # 2 artanh(|z - w| / |1 - conj(z) w|) is stable for nearby points
        ratio = abs(z - w) / abs(1 - z.conjugate() * w)
        return 2.0 * math.atanh(min(ratio, 1.0))
    if g == GeometryKind.SPHERICAL:
        a, b = p.as_list(), q.as_list()
        return math.atan2(math.hypot(*_cross3(a, b)), _dot3(a, b))
    return abs(p.complex - q.complex)


def _tangent_pair(v: Point, p: Point, q: Point):
    """Tangent directions of the geodesic rays v->p and v->q, in a planar chart at v."""
    g = common_geometry(v, p, q)
    if v == p or v == q:
        raise DegenerateGeometryError("Angle requested at a vertex coinciding with one of its rays")
    if g == GeometryKind.SPHERICAL:
        c, a, b = v.as_list(), p.as_list(), q.as_list()
        # |tangent of v->a| = |c x a|; the tangent parts of a and b meet in c . (a x b)
        na, nb = math.hypot(*_cross3(c, a)), math.hypot(*_cross3(c, b))
        if na == 0.0 or nb == 0.0:
            raise DegenerateGeometryError("Degenerate tangent direction on the sphere")
        cos_t = (_dot3(a, b) - _dot3(c, a) * _dot3(c, b)) / (na * nb)
        sin_t = _dot3(c, _cross3(a, b)) / (na * nb)
        return cos_t, sin_t
    if g == GeometryKind.HYPERBOLIC:
        a = recenter_disk(v.complex, p.complex)
        b = recenter_disk(v.complex, q.complex)
    else:
        a = p.complex - v.complex
        b = q.complex - v.complex
    if a == 0 or b == 0:
        raise DegenerateGeometryError("Degenerate tangent direction")
    turn = (a.conjugate() * b) / (abs(a) * abs(b))
    return turn.real, turn.imag


def angle_at(v: Point, p: Point, q: Point) -> float:
    """
    Interior angle at v between the geodesic rays v->p and v->q.

    @param v: Apex.
    @param p: Point on the first ray.
    @param q: Point on the second ray.
    @return: Angle in [0, pi].
    @raises DegenerateGeometryError: If p or q coincides with v.
    """
    cos_t, sin_t = _tangent_pair(v, p, q)
    return math.atan2(abs(sin_t), cos_t)


def orientation(v: Point, p: Point, q: Point) -> float:
    """
    Signed sine of the turn from ray v->p to ray v->q.

    Positive when q lies to the left of the oriented geodesic v->p. In the
    canonical frame of (v, p) the sign equals the sign of q's second coordinate.

    @return: A value in [-1, 1].
    """
    return _tangent_pair(v, p, q)[1]


def orientation_matrix(vertices: Sequence[Point]) -> np.ndarray:
    """
    All orientations of a vertex cycle against its sides at once.

    Entry [i, j] equals orientation(v[i], v[i+1], v[j]). Entries where v[j]
    coincides with v[i] (the diagonal among them) are NaN.

    @param vertices: Vertex cycle of one geometry.
    @return: An n x n array.
    """
    g = common_geometry(*vertices)
    coords = np.array([v.as_list() for v in vertices], dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        if g == GeometryKind.SPHERICAL:
            nxt = np.roll(coords, -1, axis=0)
            side_normals = np.cross(coords, nxt)
            # |v_i x v_j| is the tangent length of the ray v_i -> v_j
            ray_lengths = np.linalg.norm(np.cross(coords[:, None, :], coords[None, :, :]), axis=2)
            triple = side_normals @ coords.T
            return triple / (np.linalg.norm(side_normals, axis=1)[:, None] * ray_lengths)
        z = coords[:, 0] + 1j * coords[:, 1]
        if g == GeometryKind.HYPERBOLIC:
            rays = (z[None, :] - z[:, None]) / (1 - np.conj(z)[:, None] * z[None, :])
        else:
            rays = z[None, :] - z[:, None]
        sides = np.roll(rays, -1, axis=1).diagonal()
        turn = np.conj(sides)[:, None] * rays / (np.abs(sides)[:, None] * np.abs(rays))
        return turn.imag


def check_triangle_sides(a: float, b: float, c: float, g: GeometryKind) -> None:
    """
    Enforce the strict triangle inequality (and the hemisphere bounds on the sphere).

    @raises InvalidSidesError: If (a, b, c) is not the side triple of a nondegenerate triangle.
    """
    if not all(math.isfinite(x) for x in (a, b, c)):
        raise InvalidSidesError(f"Non-finite side lengths ({a}, {b}, {c})")
    if not (a < b + c and b < a + c and c < a + b):
        raise InvalidSidesError(f"Sides ({a}, {b}, {c}) violate the strict triangle inequality")
    if GeometryKind(g) == GeometryKind.SPHERICAL:
        if not (a + b + c < 2 * math.pi and max(a, b, c) < math.pi):
            raise InvalidSidesError(f"Sides ({a}, {b}, {c}) do not bound a triangle in an open hemisphere")


def law_of_cosines_angle(a: float, b: float, c: float, g: GeometryKind) -> float:
    """
    Angle opposite side c in the triangle with sides a, b, c.

    Evaluated through the half-angle form of the law of cosines, which keeps
    full precision for small and for nearly flat triangles.

    @param a: First adjacent side.
    @param b: Second adjacent side.
    @param c: Opposite side.
    @param g: Geometry.
    @return: Angle in (0, pi).
    @raises InvalidSidesError: If the sides violate the triangle inequality.
    """
    g = GeometryKind(g)
    check_triangle_sides(a, b, c, g)
    s = (a + b + c) / 2
    sa, sb, sc = (b + c - a) / 2, (a + c - b) / 2, (a + b - c) / 2
    if g == GeometryKind.HYPERBOLIC:
        f = math.sinh
    elif g == GeometryKind.SPHERICAL:
        f = math.sin
    else:
        def f(x):
            return x
    # sin^2(C/2) ~ f(s-a) f(s-b), cos^2(C/2) ~ f(s) f(s-c)
    return 2.0 * math.atan2(math.sqrt(f(sa) * f(sb)), math.sqrt(f(s) * f(sc)))


def polar_point(r: float, theta: float, g: GeometryKind, chart: bool = False) -> Point:
    """
    The point at distance r from the canonical center along direction theta.

    @param r: Distance from the center.
    @param theta: Direction, measured from the positive first axis.
    @param g: Geometry.
    @param chart: Build a canonical-frame point; on the sphere r may then reach up to pi.
    @return: The constructed Point.
    @raises HemisphereViolationError: On the sphere when r >= pi/2 (r >= pi in a chart).
    """
    g = GeometryKind(g)
    if r < 0 or not math.isfinite(r):
        raise DegenerateGeometryError(f"Radius must be a finite nonnegative length, got {r}")
    if g == GeometryKind.HYPERBOLIC:
        rho = math.tanh(r / 2)
        return Point.hyperbolic(rho * math.cos(theta), rho * math.sin(theta))
    if g == GeometryKind.SPHERICAL:
        if r >= (math.pi if chart else HALF_PI):
            raise HemisphereViolationError(f"Radius {r} leaves the open hemisphere around the pole")
        coords = [math.sin(r) * math.cos(theta), math.sin(r) * math.sin(theta), math.cos(r)]
        return Point.from_coords(g, coords, chart=chart)
    return Point.euclidean(r * math.cos(theta), r * math.sin(theta))


class Isometry(ABC):
    """
    Orientation-preserving isometry together with its inverse.

    Subclasses implement the coordinate maps. forward lands in the canonical
    frame and returns chart points; inverse returns points of the model and
    validates them, so on the sphere only mapped-back points must lie in the
    hemisphere.
    """
    geometry: GeometryKind

    @abstractmethod
    def forward_coords(self, coords: Sequence[float]) -> list:
        """Apply the map to raw coordinates."""
        pass

    @abstractmethod
    def inverse_coords(self, coords: Sequence[float]) -> list:
        """Apply the inverse map to raw coordinates."""
        pass

    def _check(self, p: Point) -> None:
        if p.geometry != self.geometry:
            raise GeometryMismatchError(f"{self.geometry.value} isometry applied to a {p.geometry.value} point")

    def forward(self, p: Point) -> Point:
        self._check(p)
        return Point.from_coords(self.geometry, self.forward_coords(p.as_list()), chart=True)

    def inverse(self, p: Point, eps_predicate: Optional[float] = None) -> Point:
        self._check(p)
        return Point.from_coords(self.geometry, self.inverse_coords(p.as_list()), eps_predicate=eps_predicate)


class DiskIsometry(Isometry):
    """z -> conj(rotation) (z - u) / (1 - conj(u) z)"""
    geometry = GeometryKind.HYPERBOLIC

    def __init__(self, u: complex, rotation: complex):
        self.u = u
        self.rotation = rotation

    def forward_coords(self, coords):
        z = recenter_disk(self.u, complex(coords[0], coords[1])) * self.rotation.conjugate()
        return [z.real, z.imag]

    def inverse_coords(self, coords):
        zeta = complex(coords[0], coords[1]) * self.rotation
        z = (zeta + self.u) / (1 + self.u.conjugate() * zeta)
        return [z.real, z.imag]


class SphereIsometry(Isometry):
    """x -> R x for a rotation matrix R."""
    geometry = GeometryKind.SPHERICAL

    def __init__(self, matrix: np.ndarray):
        self.matrix = matrix

    def forward_coords(self, coords):
        return (self.matrix @ np.asarray(coords, dtype=float)).tolist()

    def inverse_coords(self, coords):
        return (self.matrix.T @ np.asarray(coords, dtype=float)).tolist()


class PlaneIsometry(Isometry):
    """z -> conj(rotation) (z - u)"""
    geometry = GeometryKind.EUCLIDEAN

    def __init__(self, u: complex, rotation: complex):
        self.u = u
        self.rotation = rotation

    def forward_coords(self, coords):
        z = (complex(coords[0], coords[1]) - self.u) * self.rotation.conjugate()
        return [z.real, z.imag]

    def inverse_coords(self, coords):
        z = complex(coords[0], coords[1]) * self.rotation + self.u
        return [z.real, z.imag]


def to_canonical(u: Point, w: Point) -> Isometry:
    """
    Isometry sending u to the canonical center and w onto the theta = 0 ray.

    @param u: Point mapped to the center.
    @param w: Point mapped to polar_point(distance(u, w), 0).
    @return: An Isometry with forward and inverse maps.
    @raises DegenerateGeometryError: If u = w.
    """
    g = common_geometry(u, w)
    if u == w:
        raise DegenerateGeometryError("Cannot build a frame from coincident points")
    if g == GeometryKind.HYPERBOLIC:
        t = recenter_disk(u.complex, w.complex)
        return DiskIsometry(u.complex, cmath.exp(1j * cmath.phase(t)))
    if g == GeometryKind.EUCLIDEAN:
        t = w.complex - u.complex
        return PlaneIsometry(u.complex, cmath.exp(1j * cmath.phase(t)))
    e3 = u.vector
    e1 = w.vector - np.dot(e3, w.vector) * e3
    norm = float(np.linalg.norm(e1))
    if norm == 0.0:
        raise DegenerateGeometryError("Cannot build a frame from coincident points")
    e1 = e1 / norm
    e2 = np.cross(e3, e1)
    return SphereIsometry(np.vstack([e1, e2, e3]))


def third_vertex(d: float, r1: float, r2: float, side: int, g: GeometryKind) -> Point:
    """
    Point at distance r1 from the canonical center and r2 from the anchor
    polar_point(d, 0), on the half-plane selected by side.

    @param d: Distance from the center to the anchor.
    @param r1: Distance to the center.
    @param r2: Distance to the anchor.
    @param side: +1 for the upper half (positive second coordinate), -1 for the lower.
    @param g: Geometry.
    @return: The constructed chart Point.
    @raises InvalidSidesError: If (r1, d, r2) is not a nondegenerate triangle.
    """
    if side not in (1, -1):
        raise DegenerateGeometryError(f"Side selector must be +1 or -1, got {side}")
    apex = law_of_cosines_angle(r1, d, r2, g)
    return polar_point(r1, side * apex, g, chart=True)


def centroid_frame(points: Sequence[Point]) -> SphereIsometry:
    """
    Smallest rotation taking the normalized vertex centroid to the north pole.

    @param points: Spherical points.
    @return: A SphereIsometry (the identity when the centroid is already the pole).
    @raises DegenerateGeometryError: If the vertex vectors sum to zero.
    """
    if common_geometry(*points) != GeometryKind.SPHERICAL:
        raise GeometryMismatchError("Centroid frames are defined on the sphere only")
    c = np.sum([p.as_list() for p in points], axis=0)
    norm = float(np.linalg.norm(c))
    if norm == 0.0:
        raise DegenerateGeometryError("Vertex vectors sum to zero")
    c = c / norm
    axis = np.cross(c, [0.0, 0.0, 1.0])
    s = float(np.linalg.norm(axis))
    if s == 0.0:
        return SphereIsometry(np.eye(3))
    skew = np.array([[0.0, -axis[2], axis[1]], [axis[2], 0.0, -axis[0]], [-axis[1], axis[0], 0.0]])
    # Rodrigues: R = I + K + K^2 (1 - cos) / sin^2
    return SphereIsometry(np.eye(3) + skew + skew @ skew * ((1.0 - c[2]) / s ** 2))
