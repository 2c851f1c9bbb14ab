"""CSV tables, flat config files and run metadata."""

from __future__ import annotations

import configparser
import csv
import json
import os
from dataclasses import astuple
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .harness import DiagnosticsRow, ErrorTable, RunConfig
from .model import State, phi_magnitude

__all__ = [
    "DIAGNOSTICS_HEADER",
    "ERRORS_TIME_HEADER",
    "ERRORS_SPACE_HEADER",
    "BENCH_HEADER",
    "fields_header",
    "format_value",
    "write_csv",
    "read_csv",
    "write_diagnostics",
    "read_diagnostics",
    "write_error_table",
    "write_fields",
    "write_metadata",
    "read_config_file",
]

DIAGNOSTICS_HEADER = ("step", "t", "mass", "energy", "rm", "rh", "iters")
ERRORS_TIME_HEADER = ("tau", "error", "order")
ERRORS_SPACE_HEADER = ("n", "error", "order")
BENCH_HEADER = ("scheme", "wall_time", "iterations", "steps")


def fields_header(dim: int) -> tuple[str, ...]:
    return ("x", "y")[:dim] + ("u", "v", "p", "q", "abs_phi")


def format_value(value) -> str:
    """Integers verbatim, floats with 17 significant digits, ``None`` empty."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


def _parse_value(text: str):
    if text == "":
        return None
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ValueError(f"row has {len(row)} entries, header has {len(header)}")
            writer.writerow([format_value(v) for v in row])
    return path


def read_csv(path) -> tuple[tuple[str, ...], list[tuple]]:
    """Header and rows; numeric cells come back as ``int`` or ``float``."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        rows = [tuple(_parse_value(cell) for cell in row) for row in reader]
    return header, rows


def write_diagnostics(path, rows: Sequence[DiagnosticsRow]) -> Path:
    return write_csv(path, DIAGNOSTICS_HEADER, (astuple(r) for r in rows))


def read_diagnostics(path) -> list[DiagnosticsRow]:
    header, rows = read_csv(path)
    if header != DIAGNOSTICS_HEADER:
        raise ValueError(f"{path}: unexpected header {header}")
    return [DiagnosticsRow(int(r[0]), *map(float, r[1:6]), int(r[6])) for r in rows]


def write_error_table(path, table: ErrorTable) -> Path:
    header = ERRORS_TIME_HEADER if table.param_name == "tau" else ERRORS_SPACE_HEADER
    cast = float if table.param_name == "tau" else int
    return write_csv(path, header, ((cast(r.param), r.error, r.order) for r in table.rows))


def write_fields(path, state: State) -> Path:
    coords = [c.ravel() for c in state.grid.nodes()]
    cols = coords + [f.ravel() for f in state.fields()] + [phi_magnitude(state).ravel()]
    return write_csv(path, fields_header(state.grid.dim), zip(*cols))


def write_metadata(path, config: RunConfig, **extra) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = config.to_dict()
    data.update(extra)
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return path


def read_config_file(path: str | os.PathLike) -> dict[str, str]:
    """Flat ``key = value`` lines; ``#`` comments; dashes and underscores interchangeable."""
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    text = Path(path).read_text()
    parser.read_string("[run]\n" + text)
    return {key.replace("-", "_"): value.strip() for key, value in parser["run"].items()}
