import math

import numpy as np

from app.core.config import settings
from app.core.exceptions import ArityError, HemisphereViolationError, SamplingError
from app.core.logging_config import get_logger
from app.schemas.geometry.geometry_models import GeometryKind
from app.schemas.polygon.polygon_models import Polygon
from app.services.geometry.kernel import polar_point
from app.services.polygon.polygon_service import PolygonService

logger = get_logger("sampler")


class ConvexPolygonSampler:
    """
    Rejection sampler for random convex polygons around the canonical center.

    @param polygon_service: Supplies the convexity test.
    @param max_tries: Rejection budget per sample.
    """

    def __init__(self, polygon_service: PolygonService, max_tries: int = settings.SAMPLER_MAX_TRIES):
        self.polygon_service = polygon_service
        self.max_tries = max_tries

    def sample_convex_polygon(self, n: int, g: GeometryKind, scale: float, seed) -> Polygon:
        """
        Draw sorted random directions and radii in (scale/2, scale) until the
        polygon is convex. Deterministic per seed.

        @param n: Number of vertices, n >= 3.
        @param g: Geometry.
        @param scale: Upper bound of the vertex distances from the center.
        @param seed: Integer seed, or a numpy Generator owned by the caller.
        @return: A convex Polygon.
        @raises SamplingError: If the rejection budget is exhausted.
        """
        g = GeometryKind(g)
        if n < 3:
            raise ArityError(f"A polygon needs at least 3 vertices, got {n}")
        if g == GeometryKind.SPHERICAL and scale >= math.pi / 2:
            raise HemisphereViolationError(f"Spherical scale {scale} must stay below pi/2")
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)

        for attempt in range(1, self.max_tries + 1):
            thetas = np.sort(rng.uniform(0.0, 2 * math.pi, n))
            radii = rng.uniform(scale / 2, scale, n)
            vertices = tuple(polar_point(float(r), float(t), g) for r, t in zip(radii, thetas))
            if len(set(vertices)) < n:
                continue
            polygon = Polygon(geometry=g, vertices=vertices)
            if self.polygon_service.is_convex(polygon):
                logger.debug(f"Accepted convex {n}-gon after {attempt} tries")
                return polygon

        logger.warning(f"No convex {n}-gon found in {self.max_tries} tries (scale={scale})")
        raise SamplingError(f"Rejection budget of {self.max_tries} tries exhausted for n={n}")


def get_convex_polygon_sampler(polygon_service: PolygonService) -> ConvexPolygonSampler:
    """
    Factory for ConvexPolygonSampler.

    @param polygon_service: Polygon service providing the convexity test.
    @return: An instance of ConvexPolygonSampler.
    """
    return ConvexPolygonSampler(polygon_service=polygon_service)
