import os

# Keep test runs from writing rotating log files into the working tree
os.environ.setdefault("ISOPERIMETRY_LOG_TO_FILE", "false")

import json
import math

import numpy as np
import pytest

from app.core.dependencies import get_tolerances
from app.schemas.geometry.geometry_models import GeometryKind
from app.schemas.polygon.polygon_models import PolygonFile
from app.services.geometry.kernel import polar_point
from app.services.polygon.polygon_service import get_polygon_service
from app.services.polygon.sampler import get_convex_polygon_sampler
from app.services.symmetrizer.symmetrizer import get_symmetrizer

# Largest distance from the center used by random point generators
RADIUS_BOUND = {
    GeometryKind.HYPERBOLIC: 2.0,
    GeometryKind.SPHERICAL: 0.75,
    GeometryKind.EUCLIDEAN: 2.0,
}

NON_EUCLIDEAN = [GeometryKind.HYPERBOLIC, GeometryKind.SPHERICAL]


@pytest.fixture
def tolerances():
    return get_tolerances()


@pytest.fixture
def polygon_service(tolerances):
    return get_polygon_service(tolerances)


@pytest.fixture
def sampler(polygon_service):
    return get_convex_polygon_sampler(polygon_service)


@pytest.fixture
def symmetrizer(tolerances, polygon_service):
    return get_symmetrizer(tolerances, polygon_service)


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


def random_point(rng: np.random.Generator, g: GeometryKind):
    return polar_point(float(rng.uniform(0.0, RADIUS_BOUND[g])), float(rng.uniform(0.0, 2 * math.pi)), g)


def random_triangle(rng: np.random.Generator, g: GeometryKind, min_separation: float = 0.3):
    """Three points at distance >= 0.2 from the center, at directions at least min_separation apart."""
    while True:
        thetas = np.sort(rng.uniform(0.0, 2 * math.pi, 3))
        gaps = np.diff(np.append(thetas, thetas[0] + 2 * math.pi))
        if gaps.min() >= min_separation:
            break
    radii = rng.uniform(0.2, RADIUS_BOUND[g], 3)
    return tuple(polar_point(float(r), float(t), g) for r, t in zip(radii, thetas))


def octant_triangle():
    """The coordinate octant, rotated so that its center (1, 1, 1)/sqrt(3) is the north pole."""
    s2, s3, s6 = math.sqrt(2), math.sqrt(3), math.sqrt(6)
    return PolygonFile(
        geometry=GeometryKind.SPHERICAL,
        vertices=[[1 / s2, 1 / s6, 1 / s3], [-1 / s2, 1 / s6, 1 / s3], [0.0, -2 / s6, 1 / s3]],
    )


@pytest.fixture
def write_polygon(tmp_path):
    """Writes a polygon JSON file and returns its path."""

    def _write(geometry: GeometryKind, vertices, name: str = "polygon.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"geometry": GeometryKind(geometry).value, "vertices": [list(v) for v in vertices]}))
        return path

    return _write
