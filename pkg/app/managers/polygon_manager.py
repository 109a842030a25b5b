from pathlib import Path

from pydantic import ValidationError

from app.core.exceptions import CommandError, GeometryError
from app.core.logging_config import get_logger
from app.schemas.geometry.geometry_models import GeometryKind
from app.schemas.verifier.verifier_models import AreaReport, ClassifyReport
from app.services.geometry.circumcurve import circumcurve_through, concyclicity_residual, curve_distance
from app.services.polygon.polygon_service import PolygonService
from app.utils.file_operations.file_utils import PolygonFileReader
from app.utils.validator.simple_validator import get_simple_polygon_validator

# Initialize logger for polygon commands
logger = get_logger("polygon_manager")

# Fourth-vertex membership tolerance of the cyclicity test
MEMBERSHIP_TOLERANCE = 1e-6


class PolygonManager:
    """
    Measures polygon files: area, perimeter, angles and the quadrilateral
    cyclicity certificate.

    @param polygon_service: Instance of PolygonService providing the measurements.
    @param reader: Reads polygon JSON files.
    """

    def __init__(self, polygon_service: PolygonService, reader: PolygonFileReader):
        self.polygon_service = polygon_service
        self.reader = reader

    def cmd_area(self, path: Path) -> AreaReport:
        """
        Measures a convex polygon file.

        @param path: Polygon JSON.
        @return: AreaReport; the area has passed the Gauss-Bonnet cross-check.
        """
        try:
            logger.info(f"Measuring polygon file: {path}")
            polygon = get_simple_polygon_validator(self.polygon_service).validate(self.reader.read(path))
            service = self.polygon_service
            area = service.checked_area(polygon)
            report = AreaReport(
                geometry=polygon.geometry,
                n=polygon.n,
                perimeter=service.perimeter(polygon),
                area=area,
                gauss_bonnet_area=service.gauss_bonnet_area(polygon),
                side_lengths=service.side_lengths(polygon),
                interior_angles=service.interior_angles(polygon),
                convex=True,
                equilateral=service.is_equilateral(polygon),
                equiangular=service.is_equiangular(polygon),
                regular=service.is_regular(polygon),
            )
            logger.info(f"Measured {polygon.geometry.value} {polygon.n}-gon: area {area}")
            return report
        except (GeometryError, ValidationError) as e:
            logger.error(f"Area command failed for {path}: {e}")
            raise CommandError.from_error(e)

    def cmd_classify_quad(self, path: Path) -> ClassifyReport:
        """
        Opposite-angle gap and cyclicity of a convex quadrilateral file.

        Disk: kind of the circumcurve through the first three vertices and the
        distance of the fourth from it. Sphere and plane: distance of the fourth
        vertex from the circle through the first three.

        @param path: Quadrilateral JSON.
        @return: ClassifyReport.
        """
        try:
            logger.info(f"Classifying quadrilateral file: {path}")
            q = get_simple_polygon_validator(self.polygon_service, arity=4).validate(self.reader.read(path))
            angles = self.polygon_service.quad_angles(q)
            v0, v1, v2, v3 = q.vertices
            if q.geometry == GeometryKind.HYPERBOLIC:
                curve = circumcurve_through(v0, v1, v2, self.polygon_service.tolerances.eps_predicate)
                kind, residual = curve.kind, curve_distance(curve, v3)
            else:
                kind, residual = None, concyclicity_residual(v0, v1, v2, v3)
            report = ClassifyReport(
                geometry=q.geometry,
                angles=angles,
                gap=angles.gap,
                curve_kind=kind,
                member=residual <= MEMBERSHIP_TOLERANCE,
                residual=residual,
            )
            logger.info(f"Quadrilateral gap {report.gap}, member={report.member}")
            return report
        except (GeometryError, ValidationError) as e:
            logger.error(f"Classification failed for {path}: {e}")
            raise CommandError.from_error(e)


def get_polygon_manager(polygon_service: PolygonService, reader: PolygonFileReader) -> PolygonManager:
    """
    Factory for PolygonManager.

    @param polygon_service: Instance of PolygonService to use.
    @param reader: Polygon file reader.
    @return: Instance of PolygonManager.
    """
    return PolygonManager(polygon_service=polygon_service, reader=reader)
