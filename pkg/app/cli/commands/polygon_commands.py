from pathlib import Path
from typing import Optional

import time

import click

from app.cli.options import build_run_config, output_options, resolve_tolerances, tolerance_options
from app.core.logging_config import get_logger
from app.managers.polygon_manager import get_polygon_manager
from app.schemas.verifier.verifier_models import OutputFormat
from app.services.polygon.polygon_service import get_polygon_service
from app.utils.file_operations.file_utils import get_polygon_file_reader, get_report_writer

# Setting up a logger for this module
logger = get_logger("polygon_commands")

polygon_file_argument = click.argument("input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path))


@click.command("area")
@polygon_file_argument
@output_options()
@tolerance_options
def area(
    input_path: Path,
    output_format: OutputFormat,
    out: Optional[Path],
    degrees: bool,
    eps_predicate: Optional[float],
    eps_converge: Optional[float],
):
    """
    Measure a convex polygon file: perimeter, area, interior angles and regularity.

    INPUT_PATH is a polygon JSON file: {"geometry": ..., "vertices": [[x, y], ...]}.
    """
    start_time = time.time()
    cfg = build_run_config(output_format=output_format, degrees=degrees, eps_predicate=eps_predicate, eps_converge=eps_converge)
    manager = get_polygon_manager(get_polygon_service(resolve_tolerances(cfg)), get_polygon_file_reader())
    report = manager.cmd_area(input_path)

    writer = get_report_writer()
    if cfg.output_format == OutputFormat.JSON:
        text = writer.to_json(report)
    elif cfg.output_format == OutputFormat.CSV:
        text = writer.to_csv(
            "geometry,n,perimeter,area,gauss_bonnet_area,convex,equilateral,equiangular,regular",
            [[report.geometry.value, report.n, report.perimeter, report.area, report.gauss_bonnet_area,
              report.convex, report.equilateral, report.equiangular, report.regular]],
        )
    else:
        text = writer.to_human(report.model_dump(), angle_fields=["interior_angles"], degrees=cfg.degrees)
    writer.emit(text, out)
    logger.info(f"area finished in {time.time() - start_time:.2f}s")


@click.command("classify-quad")
@polygon_file_argument
@output_options()
@tolerance_options
def classify_quad(
    input_path: Path,
    output_format: OutputFormat,
    out: Optional[Path],
    degrees: bool,
    eps_predicate: Optional[float],
    eps_converge: Optional[float],
):
    """
    Opposite-angle gap and cyclicity certificate of a convex quadrilateral file.
    """
    cfg = build_run_config(output_format=output_format, degrees=degrees, eps_predicate=eps_predicate, eps_converge=eps_converge)
    manager = get_polygon_manager(get_polygon_service(resolve_tolerances(cfg)), get_polygon_file_reader())
    report = manager.cmd_classify_quad(input_path)

    writer = get_report_writer()
    if cfg.output_format == OutputFormat.JSON:
        text = writer.to_json(report)
    elif cfg.output_format == OutputFormat.CSV:
        a = report.angles
        text = writer.to_csv(
            "geometry,A,B,C,D,gap,curve_kind,member,residual",
            [[report.geometry.value, a.A, a.B, a.C, a.D, report.gap,
              report.curve_kind.value if report.curve_kind else "", report.member, report.residual]],
        )
    else:
        fields = {
            "geometry": report.geometry,
            "angles": [report.angles.A, report.angles.B, report.angles.C, report.angles.D],
            "gap": report.gap,
            "curve_kind": report.curve_kind.value if report.curve_kind else "-",
            "member": report.member,
            "residual": report.residual,
        }
        text = writer.to_human(fields, angle_fields=["angles", "gap"], degrees=cfg.degrees)
    writer.emit(text, out)
