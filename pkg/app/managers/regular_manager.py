from typing import Iterable, List

from pydantic import ValidationError

from app.core.exceptions import CommandError, CrossCheckError, GeometryError
from app.core.logging_config import get_logger
from app.schemas.geometry.geometry_models import GeometryKind
from app.schemas.polygon.polygon_models import PolygonFile
from app.schemas.polygon.regular_models import RegularSpec
from app.schemas.verifier.verifier_models import RegularReport, SweepRow
from app.services.polygon.polygon_service import PolygonService
from app.services.regular.regular_gon import build_regular, solve_regular

# Initialize logger for regular-polygon commands
logger = get_logger("regular_manager")


class RegularManager:
    """
    Queries on the regular n-gon of a given perimeter.

    @param polygon_service: Used to cross-check the constructed vertices.
    """

    def __init__(self, polygon_service: PolygonService):
        self.polygon_service = polygon_service

    def cmd_regular(self, n: int, perimeter: float, geometry: GeometryKind, with_vertices: bool = False) -> RegularReport:
        """
        Solves the regular n-gon of perimeter L.

        @param n: Number of sides.
        @param perimeter: Perimeter L.
        @param geometry: Geometry.
        @param with_vertices: Also construct the polygon and return its vertices.
        @return: RegularReport.
        """
        try:
            logger.info(f"Solving regular {geometry.value} {n}-gon of perimeter {perimeter}")
            spec = RegularSpec(n=n, perimeter=perimeter, geometry=geometry)
            solved = solve_regular(spec)
            vertices = None
            if with_vertices:
                polygon = build_regular(spec)
                self.polygon_service.checked_area(polygon)
                vertices = PolygonFile.from_polygon(polygon)
            logger.info(f"Regular {n}-gon: r={solved.circumradius}, area={solved.area}")
            return RegularReport(**solved.model_dump(), vertices=vertices)
        except (GeometryError, ValidationError) as e:
            logger.error(f"Regular command failed for n={n}, L={perimeter}: {e}")
            raise CommandError.from_error(e)

    def cmd_sweep(self, n_values: Iterable[int], perimeters: Iterable[float], geometry: GeometryKind) -> List[SweepRow]:
        """
        Table of regular-polygon data over a grid of (n, L); infeasible rows are skipped.

        @param n_values: Side counts.
        @param perimeters: Perimeters.
        @param geometry: Geometry.
        @return: Rows in (n, L) order.
        """
        rows = []
        n_values, perimeters = list(n_values), list(perimeters)
        logger.info(f"Sweeping {geometry.value} regular polygons over n={n_values}, L={perimeters}")
        for n in n_values:
            for L in perimeters:
                try:
                    solved = solve_regular(RegularSpec(n=n, perimeter=L, geometry=geometry))
                except CrossCheckError as e:
                    logger.error(f"Sweep cross-check failed at n={n}, L={L}: {e.detail}")
                    raise CommandError.from_error(e)
                except (GeometryError, ValidationError) as e:
                    logger.warning(f"Skipping infeasible sweep row n={n}, L={L}: {e}")
                    continue
                rows.append(
                    SweepRow(
                        n=n,
                        perimeter=L,
                        regular_area=solved.area,
                        interior_angle=solved.interior_angle,
                        circumradius=solved.circumradius,
                    )
                )
        return rows


def get_regular_manager(polygon_service: PolygonService) -> RegularManager:
    """
    Factory for RegularManager.

    @param polygon_service: Instance of PolygonService to use.
    @return: Instance of RegularManager.
    """
    return RegularManager(polygon_service=polygon_service)
