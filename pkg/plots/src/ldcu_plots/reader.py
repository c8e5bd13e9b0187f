"""Parser for solver snapshot CSV files.

A snapshot file starts with ``#``-prefixed ``key=value`` header lines
(``problem``, ``scheme``, ``time``, ``nx``, ``ny``, ``dx``, ``dy``,
``gamma``, then ``columns``), followed by one comma-separated row per
cell.  One-dimensional files carry ``ny=1`` and columns
``x,rho,u,p,E,flag``; two-dimensional files carry columns
``x,y,rho,u,v,p,E,flag_x,flag_y`` with the x index varying slowest.

This module parses that format from scratch so rendering stands on the
file contract alone.  Every malformed input raises :class:`ParseError`
pointing at the offending line.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np

__all__ = ["ParseError", "Snapshot", "read_snapshot"]

_REQUIRED_KEYS = ("problem", "scheme", "time", "nx", "ny", "dx", "dy", "gamma")
_INT_KEYS = ("nx", "ny")
_FLOAT_KEYS = ("time", "dx", "dy", "gamma")
_FLAG_COLUMNS = ("flag", "flag_x", "flag_y")


class ParseError(Exception):
    """A snapshot file that does not follow the on-disk contract.

    Carries the offending ``path`` and 1-based ``line`` number (``None``
    when the problem is not tied to a single line, e.g. a mismatch
    between two otherwise valid files).
    """

    def __init__(self, path: str | Path, line: int | None, message: str):
        self.path = str(path)
        self.line = line
        where = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class Snapshot:
    """One parsed snapshot file."""

    path: str
    problem: str
    scheme: str
    time: float
    nx: int
    ny: int
    dx: float
    dy: float
    gamma: float
    columns: tuple[str, ...]
    data: Mapping[str, np.ndarray]

    @property
    def is_2d(self) -> bool:
        return self.ny > 1

    def field2d(self, name: str) -> np.ndarray:
        """Return column ``name`` reshaped to ``(nx, ny)``."""
        if not self.is_2d:
            raise ValueError("field2d requires a two-dimensional snapshot")
        return np.asarray(self.data[name]).reshape(self.nx, self.ny)


def _parse_header(path: str | Path, lines: list[str]) -> tuple[dict, tuple[str, ...], int]:
    meta: dict[str, str] = {}
    columns: tuple[str, ...] | None = None
    n_header = 0
    for number, raw in enumerate(lines, start=1):
        if not raw.startswith("#"):
            break
        n_header = number
        body = raw[1:].strip()
        if not body:
            continue
        if "=" not in body:
            raise ParseError(path, number, f"header line is not key=value: {body!r}")
        key, _, value = body.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "columns":
            columns = tuple(name.strip() for name in value.split(","))
        else:
            meta[key] = value

    missing = [key for key in _REQUIRED_KEYS if key not in meta]
    if missing:
        raise ParseError(path, max(n_header, 1), f"missing header keys: {', '.join(missing)}")
    if columns is None:
        raise ParseError(path, max(n_header, 1), "missing columns header line")

    parsed: dict[str, object] = {"problem": meta["problem"], "scheme": meta["scheme"]}
    for key in _INT_KEYS:
        try:
            parsed[key] = int(meta[key])
        except ValueError:
            raise ParseError(path, n_header, f"header key {key}={meta[key]!r} is not an integer") from None
    for key in _FLOAT_KEYS:
        try:
            parsed[key] = float(meta[key])
        except ValueError:
            raise ParseError(path, n_header, f"header key {key}={meta[key]!r} is not a number") from None
    return parsed, columns, n_header


def read_snapshot(path: str | Path) -> Snapshot:
    """Parse one snapshot file, raising :class:`ParseError` on any defect."""
    path = Path(path)
    if not path.exists():
        raise ParseError(path, None, "file does not exist")
    lines = path.read_text().splitlines()
    if not lines:
        raise ParseError(path, 1, "file is empty")

    meta, columns, n_header = _parse_header(path, lines)
    nx, ny = meta["nx"], meta["ny"]
    if nx < 1 or ny < 1:
        raise ParseError(path, n_header, f"grid sizes must be positive, got nx={nx} ny={ny}")

    rows: list[list[float]] = []
    for index in range(n_header, len(lines)):
        line = lines[index].strip()
        if not line:
            continue
        if line.startswith("#"):
            raise ParseError(path, index + 1, "header line after start of data")
        parts = line.split(",")
        if len(parts) != len(columns):
            raise ParseError(
                path, index + 1,
                f"row has {len(parts)} fields, expected {len(columns)} ({','.join(columns)})",
            )
        try:
            rows.append([float(token) for token in parts])
        except ValueError:
            bad = next(tok for tok in parts if not _is_number(tok))
            raise ParseError(path, index + 1, f"field {bad!r} is not a number") from None

    expected = nx * ny
    if len(rows) != expected:
        raise ParseError(
            path, len(lines),
            f"{len(rows)} data rows, expected nx*ny = {expected}",
        )

    table = np.asarray(rows, dtype=float).reshape(expected, len(columns))
    data = {}
    for j, name in enumerate(columns):
        column = table[:, j]
        data[name] = column.astype(bool) if name in _FLAG_COLUMNS else column
    return Snapshot(
        path=str(path),
        problem=meta["problem"],
        scheme=meta["scheme"],
        time=meta["time"],
        nx=nx,
        ny=ny,
        dx=meta["dx"],
        dy=meta["dy"],
        gamma=meta["gamma"],
        columns=columns,
        data=data,
    )


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True
