
from typing import Dict, Optional
from app.core.config import settings
from app.core.logging_config import get_logger
from app.schemas.geometry.geometry_models import ToleranceConfig

# Initialize logger for this module
logger = get_logger("dependencies")


def get_tolerances(eps_predicate: Optional[float] = None, eps_converge: Optional[float] = None) -> ToleranceConfig:
    """
    Build the tolerance bands for a run.

    @param eps_predicate: Optional override for the predicate dead-band.
    @param eps_converge: Optional override for the convergence threshold.
    @return: A validated ToleranceConfig; settings supply any value not given.
    """
    tolerances = ToleranceConfig(
        eps_predicate=settings.EPS_PREDICATE if eps_predicate is None else eps_predicate,
        eps_converge=settings.EPS_CONVERGE if eps_converge is None else eps_converge,
    )
    logger.debug(f"Configured tolerances: {tolerances}")
    return tolerances


def get_trace_columns() -> Dict[str, str]:
    """
    Retrieve the frozen CSV column layouts, keyed by output kind.

    @return: A dict mapping output kinds ("trace", "sweep") to their CSV header line.
    """
    columns = {
        "trace": "iteration,area,side_spread,angle_spread",
        "sweep": "n,perimeter,regular_area,interior_angle,circumradius",
    }
    logger.debug(f"CSV layouts: {columns}")
    return columns
