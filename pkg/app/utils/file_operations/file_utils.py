from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence

import csv
import io
import math

import click
from pydantic import BaseModel

from app.core.logging_config import get_logger
from app.schemas.polygon.polygon_models import PolygonFile

logger = get_logger("file_utils")


class PolygonFileReader:
    """
    Reads polygon JSON files ({"geometry": ..., "vertices": [[x, y], ...]}).
    """

    def read(self, path: Path) -> PolygonFile:
        """
        Parses a polygon file.

        @param path: Path to the JSON file.
        @return: The PolygonFile model.
        @raises pydantic.ValidationError: If the JSON is malformed or does not match the schema.
        """
        logger.debug(f"Reading polygon file: {path}")
        return PolygonFile.model_validate_json(Path(path).read_text())


class ReportWriter:
    """
    Renders reports as JSON, CSV or aligned human-readable text and writes them
    to a file or to stdout.

    JSON uses pydantic's serializer and CSV uses repr-exact floats, so identical
    inputs give byte-identical output.
    """

    def to_json(self, model: BaseModel) -> str:
        return model.model_dump_json(indent=2)

    def to_csv(self, header: str, rows: Iterable[Sequence[Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header.split(","))
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
        return buffer.getvalue()

    def to_human(self, fields: Dict[str, Any], angle_fields: Iterable[str] = (), degrees: bool = False) -> str:
        """
        One "name: value" line per field. Angles are converted only here.

        @param fields: Ordered field values.
        @param angle_fields: Names of the fields that hold radians.
        @param degrees: Show angle fields in degrees.
        @return: The text block.
        """
        angle_fields = set(angle_fields)
        width = max((len(k) for k in fields), default=0)
        lines = []
        for key, value in fields.items():
            if key in angle_fields and degrees:
                value = _map_floats(value, math.degrees)
                key_label = f"{key} (deg)"
            else:
                key_label = key
            lines.append(f"{key_label.ljust(width + 6)} {_format_value(value)}")
        return "\n".join(lines) + "\n"

    def emit(self, text: str, out: Optional[Path] = None) -> None:
        """
        Writes text to out (creating parent folders) or echoes it to stdout.

        @param text: Rendered report.
        @param out: Destination file, or None for stdout.
        """
        if out is None:
            click.echo(text, nl=False)
            return
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        logger.info(f"Wrote {out}")


def _map_floats(value: Any, fn) -> Any:
    if isinstance(value, float):
        return fn(value)
    if isinstance(value, (list, tuple)):
        return [_map_floats(v, fn) for v in value]
    return value


def _format_value(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_format_value(v) for v in value) + "]"
    if isinstance(value, BaseModel):
        return _format_value(value.model_dump(mode="json"))
    if isinstance(value, dict):
        return ", ".join(f"{k}={_format_value(v)}" for k, v in value.items())
    return str(value.value if hasattr(value, "value") else value)


def get_polygon_file_reader() -> PolygonFileReader:
    return PolygonFileReader()


def get_report_writer() -> ReportWriter:
    return ReportWriter()
