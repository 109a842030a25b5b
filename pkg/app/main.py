import click

from app.cli.commands import polygon_commands, regular_commands, symmetrize_commands
from app.core.config import settings

description = """
Non-Euclidean isoperimetry toolkit.

Measures convex polygons in the hyperbolic plane (Poincare disk), on the
sphere (open northern hemisphere) and in the Euclidean plane, solves the
regular n-gon of a given perimeter, and checks that it has the largest area.

\b
Exit codes:
  0  success, converged, or no violations
  1  nonconvergence, violations found, or a failed cross-check
  2  input error
"""


@click.group(name="isoperimetry", help=description)
@click.version_option(version="1.0.0", prog_name=settings.APP_NAME)
def cli():
    pass


cli.add_command(polygon_commands.area)
cli.add_command(polygon_commands.classify_quad)
cli.add_command(regular_commands.regular)
cli.add_command(regular_commands.sweep)
cli.add_command(symmetrize_commands.symmetrize)
cli.add_command(symmetrize_commands.fuzz)


if __name__ == "__main__":
    cli()
