from pathlib import Path
from typing import Optional

import click
from pydantic import ValidationError

from app.cli.options import build_run_config, geometry_option, output_options, resolve_tolerances, tolerance_options
from app.core.config import settings
from app.core.dependencies import get_trace_columns
from app.core.exceptions import CommandError, GeometryError
from app.core.logging_config import get_logger
from app.managers.symmetrization_manager import get_symmetrization_manager
from app.schemas.geometry.geometry_models import GeometryKind
from app.schemas.verifier.verifier_models import OutputFormat, RunConfig
from app.services.polygon.polygon_service import get_polygon_service
from app.services.polygon.sampler import get_convex_polygon_sampler
from app.services.symmetrizer.symmetrizer import get_symmetrizer
from app.utils.file_operations.file_utils import get_polygon_file_reader, get_report_writer
from app.utils.validator.simple_validator import get_simple_polygon_validator

# Setting up a logger for this module
logger = get_logger("symmetrize_commands")


def _manager(cfg: RunConfig):
    tolerances = resolve_tolerances(cfg)
    polygon_service = get_polygon_service(tolerances)
    return get_symmetrization_manager(
        polygon_service,
        get_symmetrizer(tolerances, polygon_service),
        get_convex_polygon_sampler(polygon_service),
    )


@click.command("symmetrize")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False, path_type=Path), default=None,
              help="Convex polygon JSON; when omitted a polygon is sampled from --seed/--n/--scale.")
@geometry_option
@click.option("--n", type=int, default=5, show_default=True, help="Vertices of the sampled polygon.")
@click.option("--seed", type=int, default=0, show_default=True, help="Sampler seed.")
@click.option("--scale", type=float, default=1.0, show_default=True, help="Vertex distance bound of the sampler.")
@click.option("--max-iter", type=int, default=settings.MAX_ITER, show_default=True, help="Pass budget.")
@output_options()
@tolerance_options
def symmetrize(
    input_path: Optional[Path],
    geometry: GeometryKind,
    n: int,
    seed: int,
    scale: float,
    max_iter: int,
    output_format: OutputFormat,
    out: Optional[Path],
    degrees: bool,
    eps_predicate: Optional[float],
    eps_converge: Optional[float],
):
    """
    Symmetrize a convex polygon by side averaging and quadrilateral flexing.

    Writes the JSON report to --out (default: OUTPUT_FOLDER/symmetrize_report.json)
    and the trace CSV next to it, prints a summary, and exits 1 when the run
    did not converge.
    """
    cfg = build_run_config(
        geometry=geometry, n=n, seed=seed, scale=scale, max_iter=max_iter, output_format=output_format,
        degrees=degrees, eps_predicate=eps_predicate, eps_converge=eps_converge,
    )
    manager = _manager(cfg)
    if input_path is not None:
        try:
            polygon = get_simple_polygon_validator(manager.polygon_service).validate(get_polygon_file_reader().read(input_path))
        except (GeometryError, ValidationError) as e:
            logger.error(f"Invalid symmetrize input {input_path}: {e}")
            raise CommandError.from_error(e)
    else:
        polygon = manager.sample(cfg)

    report = manager.cmd_symmetrize(polygon, cfg.max_iter)
    gap = manager.relative_area_gap(report)

    if out is None:
        settings.setup()
        out = settings.OUTPUT_FOLDER / "symmetrize_report.json"
    writer = get_report_writer()
    writer.emit(writer.to_json(report) + "\n", out)
    trace = [[r.iteration, r.area, r.side_spread, r.angle_spread] for r in report.rows()]
    writer.emit(writer.to_csv(get_trace_columns()["trace"], trace), out.with_suffix(".csv"))

    summary = {
        "geometry": polygon.geometry,
        "n": polygon.n,
        "converged": report.converged,
        "iterations": report.iterations,
        "initial_area": report.area_trace[0],
        "final_area": report.area_trace[-1],
        "relative_area_gap": gap,
        "rejected_moves": report.rejected_moves,
        "report": str(out),
    }
    if cfg.output_format == OutputFormat.JSON:
        click.echo(writer.to_json(report))
    elif cfg.output_format == OutputFormat.CSV:
        click.echo(writer.to_csv(get_trace_columns()["trace"], trace), nl=False)
    else:
        click.echo(writer.to_human(summary), nl=False)

    if not report.converged:
        click.get_current_context().exit(1)


@click.command("fuzz")
@geometry_option
@click.option("--n", type=int, default=5, show_default=True, help="Vertices per polygon (lower end with --n-max).")
@click.option("--n-max", type=int, default=None, help="Draw n uniformly from [--n, --n-max] per trial.")
@click.option("--trials", type=int, default=1000, show_default=True, help="Number of sampled polygons.")
@click.option("--seed", type=int, default=0, show_default=True, help="Base seed; trial seeds are spawned from it.")
@click.option("--scale", type=float, default=1.0, show_default=True, help="Vertex distance bound of the sampler.")
@click.option("--workers", type=int, default=settings.FUZZ_WORKERS, show_default=True, help="Worker processes.")
@output_options()
@tolerance_options
def fuzz(
    geometry: GeometryKind,
    n: int,
    n_max: Optional[int],
    trials: int,
    seed: int,
    scale: float,
    workers: int,
    output_format: OutputFormat,
    out: Optional[Path],
    degrees: bool,
    eps_predicate: Optional[float],
    eps_converge: Optional[float],
):
    """
    Sample random convex polygons and check that none has more area than the
    regular polygon of the same perimeter. Exits 1 if any trial violates it.
    """
    cfg = build_run_config(
        geometry=geometry, n=n, n_max=n_max, trials=trials, seed=seed, scale=scale, workers=workers,
        output_format=output_format, degrees=degrees, eps_predicate=eps_predicate, eps_converge=eps_converge,
    )
    report = _manager(cfg).cmd_fuzz(cfg)

    writer = get_report_writer()
    if cfg.output_format == OutputFormat.JSON:
        text = writer.to_json(report) + "\n"
    elif cfg.output_format == OutputFormat.CSV:
        text = writer.to_csv(
            "geometry,seed,trials,skipped,max_ratio,violations,tolerance",
            [[report.geometry.value, report.seed, report.trials, report.skipped, report.max_ratio,
              report.violations, report.tolerance]],
        )
    else:
        text = writer.to_human(report.model_dump(exclude={"worst_polygon"}))
    writer.emit(text, out)

    if report.violations:
        click.get_current_context().exit(1)
