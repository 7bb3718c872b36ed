"""CSV and JSON serializations of a SweepState.

CSV: a `# relengine v<version>` comment line, the header, then rows. Floats
use the shortest round-trip representation and blanks stand for nulls.
JSON: an array of flat objects with the same field names.
"""
import csv
import io
import json
import sys
import logging
from enum import Enum
from typing import Any, TextIO

from src import __version__
from src.state import SweepState

logger = logging.getLogger(__name__)

TOOL_NAME = "relengine"


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    return value


def header_line(state: SweepState) -> str:
    line = f"# {TOOL_NAME} v{__version__}"
    if state.notes:
        line += "; " + "; ".join(state.notes)
    return line


def render_csv(state: SweepState) -> str:
    buffer = io.StringIO()
    buffer.write(header_line(state) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(state.columns)
    for row in state.rows:
        writer.writerow([format_value(row[c]) for c in state.columns])
    return buffer.getvalue()


def render_json(state: SweepState) -> str:
    records = [{c: _json_value(row[c]) for c in state.columns} for row in state.rows]
    return json.dumps(records, indent=2) + "\n"


def render(state: SweepState, fmt: str) -> str:
    if fmt == "json":
        return render_json(state)
    return render_csv(state)


def write_table(state: SweepState, fmt: str, out: str = "-", stream: TextIO | None = None) -> None:
    text = render(state, fmt)
    if out == "-":
        (stream or sys.stdout).write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    logger.info("Wrote %d %s rows to %s", len(state.rows), fmt, "stdout" if out == "-" else out)


def read_csv(text: str) -> tuple[str, list[dict[str, str]]]:
    """Parse an emitted CSV back into (header comment, rows of strings)."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ValueError("missing tool header line")
    reader = csv.DictReader(lines[1:])
    return lines[0], list(reader)
