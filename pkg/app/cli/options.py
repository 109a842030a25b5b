from pathlib import Path

import click
from pydantic import ValidationError

from app.core.dependencies import get_tolerances
from app.core.exceptions import CommandError, GeometryError
from app.schemas.geometry.geometry_models import GeometryKind, ToleranceConfig
from app.schemas.verifier.verifier_models import OutputFormat, RunConfig

geometry_option = click.option(
    "--geometry",
    type=click.Choice([g.value for g in GeometryKind], case_sensitive=False),
    default=GeometryKind.HYPERBOLIC.value,
    show_default=True,
    callback=lambda ctx, param, value: GeometryKind(value.lower()),
    help="Ambient geometry.",
)


def output_options(default_format: OutputFormat = OutputFormat.HUMAN):
    """--format, --out and --degrees, shared by every reporting command."""

    def decorator(fn):
        fn = click.option("--degrees", is_flag=True, help="Show angles in degrees (human output only).")(fn)
        fn = click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Write the output to a file.")(fn)
        fn = click.option(
            "--format",
            "output_format",
            type=click.Choice([f.value for f in OutputFormat]),
            default=default_format.value,
            show_default=True,
            callback=lambda ctx, param, value: OutputFormat(value),
            help="Output format.",
        )(fn)
        return fn

    return decorator


def tolerance_options(fn):
    """--eps-predicate and --eps-converge overrides."""
    fn = click.option("--eps-converge", type=float, default=None, help="Convergence threshold for spreads.")(fn)
    fn = click.option("--eps-predicate", type=float, default=None, help="Dead-band of geometric predicates.")(fn)
    return fn


def build_run_config(**options) -> RunConfig:
    """Validates the options of a command; invalid combinations exit with code 2."""
    try:
        return RunConfig(**options)
    except (GeometryError, ValidationError) as e:
        raise CommandError.from_error(e)


def resolve_tolerances(cfg: RunConfig) -> ToleranceConfig:
    try:
        return get_tolerances(cfg.eps_predicate, cfg.eps_converge)
    except ValidationError as e:
        raise CommandError.from_error(e)
