from typing import Optional

from app.core.exceptions import ArityError
from app.core.logging_config import get_logger
from app.schemas.polygon.polygon_models import Polygon, PolygonFile
from app.services.polygon.polygon_service import PolygonService
from app.utils.validator.base_validator import BasePolygonValidator

logger = get_logger("simple_validator")


class SimplePolygonValidator(BasePolygonValidator):
    """
    A simple polygon validator that checks vertex count and convexity.

    - Builds the Polygon (vertex domains and distinct neighbours are checked by the
      schema, with the boundary band set to the service's eps_predicate).
    - Optionally requires an exact vertex count.
    - Requires strict convexity.
    """

    def __init__(self, polygon_service: PolygonService, arity: Optional[int] = None):
        """
        @param polygon_service: Supplies the tolerances and the convexity test.
        @param arity: Required number of vertices, or None for any n >= 3.
        """
        self.polygon_service = polygon_service
        self.arity = arity

    def validate(self, polygon_file: PolygonFile) -> Polygon:
        """
        Validates the polygon file and returns the Polygon it describes.

        @param polygon_file: The parsed polygon JSON.
        @return: The Polygon.
        @raises GeometryError: If any check fails.
        """
        self.validate_arity(len(polygon_file.vertices))
        polygon = polygon_file.to_polygon(self.polygon_service.tolerances.eps_predicate)
        self.polygon_service.require_convex(polygon)
        logger.debug(f"Validated {polygon.geometry.value} {polygon.n}-gon")
        return polygon

    def validate_arity(self, n: int) -> None:
        if self.arity is not None and n != self.arity:
            logger.warning(f"Expected {self.arity} vertices, got {n}")
            raise ArityError(f"Expected a {self.arity}-gon, got {n} vertices")


def get_simple_polygon_validator(polygon_service: PolygonService, arity: Optional[int] = None) -> SimplePolygonValidator:
    """
    Factory for SimplePolygonValidator.

    @param polygon_service: Polygon service providing the tolerances and the convexity test.
    @param arity: Required vertex count, if any.
    @return: A SimplePolygonValidator instance.
    """
    return SimplePolygonValidator(polygon_service=polygon_service, arity=arity)
