from abc import ABC, abstractmethod

from app.schemas.polygon.polygon_models import Polygon, PolygonFile


class BasePolygonValidator(ABC):
    """
    Abstract base class for validating polygon files.

    Subclasses implement `validate`, turning the raw file model into a Polygon
    that satisfies their own rules or raising a GeometryError.
    """

    @abstractmethod
    def validate(self, polygon_file: PolygonFile) -> Polygon:
        """
        Validate the given polygon file.

        @param polygon_file: The parsed polygon JSON.
        @return: The validated Polygon.
        """
        pass
