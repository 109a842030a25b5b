from pathlib import Path
from typing import List, Optional, Tuple

import click
from pydantic import TypeAdapter

from app.cli.options import build_run_config, geometry_option, output_options, resolve_tolerances, tolerance_options
from app.core.dependencies import get_trace_columns
from app.core.logging_config import get_logger
from app.managers.regular_manager import get_regular_manager
from app.schemas.geometry.geometry_models import GeometryKind
from app.schemas.verifier.verifier_models import OutputFormat, SweepRow
from app.services.polygon.polygon_service import get_polygon_service
from app.utils.file_operations.file_utils import get_report_writer

# Setting up a logger for this module
logger = get_logger("regular_commands")


@click.command("regular")
@geometry_option
@click.option("--n", type=click.IntRange(min=3), required=True, help="Number of sides.")
@click.option("--perimeter", type=float, required=True, help="Perimeter L.")
@click.option("--vertices", is_flag=True, help="Also emit the vertices of the regular polygon.")
@output_options()
@tolerance_options
def regular(
    geometry: GeometryKind,
    n: int,
    perimeter: float,
    vertices: bool,
    output_format: OutputFormat,
    out: Optional[Path],
    degrees: bool,
    eps_predicate: Optional[float],
    eps_converge: Optional[float],
):
    """
    Circumradius, side, interior angle and area of the regular n-gon of perimeter L.
    """
    cfg = build_run_config(
        geometry=geometry, n=n, perimeter=perimeter, output_format=output_format, degrees=degrees,
        eps_predicate=eps_predicate, eps_converge=eps_converge,
    )
    manager = get_regular_manager(get_polygon_service(resolve_tolerances(cfg)))
    report = manager.cmd_regular(cfg.n, cfg.perimeter, cfg.geometry, with_vertices=vertices)

    writer = get_report_writer()
    if cfg.output_format == OutputFormat.JSON:
        text = writer.to_json(report)
    elif cfg.output_format == OutputFormat.CSV:
        text = writer.to_csv(
            "n,perimeter,circumradius,side,interior_angle,area,gauss_bonnet_area",
            [[report.n, report.perimeter, report.circumradius, report.side, report.interior_angle,
              report.area, report.gauss_bonnet_area]],
        )
    else:
        fields = report.model_dump(exclude={"vertices"})
        if report.vertices is not None:
            fields["vertices"] = report.vertices.vertices
        text = writer.to_human(fields, angle_fields=["interior_angle"], degrees=cfg.degrees)
    writer.emit(text, out)


@click.command("sweep")
@geometry_option
@click.option("--n-min", type=click.IntRange(min=3), default=3, show_default=True, help="Smallest side count.")
@click.option("--n-max", type=click.IntRange(min=3), default=12, show_default=True, help="Largest side count.")
@click.option("--perimeter", "perimeters", type=float, multiple=True, required=True, help="Perimeter L (repeatable).")
@output_options(default_format=OutputFormat.CSV)
def sweep(
    geometry: GeometryKind,
    n_min: int,
    n_max: int,
    perimeters: Tuple[float, ...],
    output_format: OutputFormat,
    out: Optional[Path],
    degrees: bool,
):
    """
    Plot-ready table of regular-polygon area, interior angle and circumradius
    over a range of side counts and perimeters.
    """
    cfg = build_run_config(geometry=geometry, n=n_min, n_max=n_max, output_format=output_format, degrees=degrees)
    manager = get_regular_manager(get_polygon_service(resolve_tolerances(cfg)))
    n_values = cfg.n_range
    rows: List[SweepRow] = manager.cmd_sweep(n_values, perimeters, cfg.geometry)
    skipped = len(n_values) * len(perimeters) - len(rows)
    if skipped:
        click.echo(f"Warning: skipped {skipped} infeasible rows", err=True)

    writer = get_report_writer()
    if cfg.output_format == OutputFormat.JSON:
        text = TypeAdapter(List[SweepRow]).dump_json(rows, indent=2).decode() + "\n"
    elif cfg.output_format == OutputFormat.CSV:
        text = writer.to_csv(
            get_trace_columns()["sweep"],
            [[r.n, r.perimeter, r.regular_area, r.interior_angle, r.circumradius] for r in rows],
        )
    else:
        text = "".join(
            writer.to_human(r.model_dump(), angle_fields=["interior_angle"], degrees=cfg.degrees) + "\n" for r in rows
        )
    writer.emit(text, out)
