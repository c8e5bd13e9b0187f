"""Snapshot CSV files: a small, stable on-disk contract.

Layout: a fixed run of ``# key=value`` header lines (problem, scheme,
time, nx, ny, dx, dy, gamma — 1-D files carry ny=1, dy=0), one
``# columns=...`` line naming the data columns, then comma-separated
rows, one per cell.  Floats are written with 17 significant digits so a
round trip is exact; flags are 0/1 integers.  2-D rows are ordered x
outer, y inner.

Columns are ``x,rho,u,p,E,flag`` in 1-D and
``x,y,rho,u,v,p,E,flag_x,flag_y`` in 2-D.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SnapshotFile", "write_snapshot", "read_snapshot"]

_HEADER_KEYS = ("problem", "scheme", "time", "nx", "ny", "dx", "dy", "gamma")
_COLUMNS_1D = ("x", "rho", "u", "p", "E", "flag")
_COLUMNS_2D = ("x", "y", "rho", "u", "v", "p", "E", "flag_x", "flag_y")


@dataclass(frozen=True)
class SnapshotFile:
    """Parsed snapshot: header metadata plus one flat array per column."""

    meta: dict
    columns: tuple
    data: dict

    @property
    def is_2d(self):
        return self.meta["ny"] > 1

    def field2d(self, name):
        """Column reshaped to (nx, ny); 2-D files only."""
        if not self.is_2d:
            raise ValueError("not a 2-D snapshot")
        return self.data[name].reshape(self.meta["nx"], self.meta["ny"])


def _fmt(x):
    return "%.17g" % float(x)


def write_snapshot(path, problem, scheme, snapshot, grid, gas):
    """Write one solver `Snapshot` for `grid` to `path`."""
    U = snapshot.U
    flags = snapshot.flags
    g1 = gas.gamma - 1.0
    rho = U[0]
    if U.shape[0] == 3:
        u = U[1] / rho
        p = g1 * (U[2] - 0.5 * rho * u * u)
        cols = np.column_stack(
            [grid.centers(), rho, u, p, U[2], flags[0].astype(np.int64)]
        )
        names = _COLUMNS_1D
        ny, dy = 1, 0.0
        fmt = ["%.17g"] * 5 + ["%d"]
    else:
        u = U[1] / rho
        v = U[2] / rho
        p = g1 * (U[3] - 0.5 * rho * (u * u + v * v))
        X = np.broadcast_to(grid.xcenters()[:, None], rho.shape)
        Y = np.broadcast_to(grid.ycenters()[None, :], rho.shape)
        cols = np.column_stack(
            [
                X.ravel(),
                Y.ravel(),
                rho.ravel(),
                u.ravel(),
                v.ravel(),
                p.ravel(),
                U[3].ravel(),
                flags[0].astype(np.int64).ravel(),
                flags[1].astype(np.int64).ravel(),
            ]
        )
        names = _COLUMNS_2D
        ny, dy = grid.ny, grid.dy
        fmt = ["%.17g"] * 7 + ["%d", "%d"]
    meta = {
        "problem": problem,
        "scheme": scheme,
        "time": _fmt(snapshot.time),
        "nx": grid.nx,
        "ny": ny,
        "dx": _fmt(grid.dx),
        "dy": _fmt(dy),
        "gamma": _fmt(gas.gamma),
    }
    with open(path, "w") as f:
        for key in _HEADER_KEYS:
            f.write(f"# {key}={meta[key]}\n")
        f.write(f"# columns={','.join(names)}\n")
        np.savetxt(f, cols, fmt=fmt, delimiter=",")
    return path


def read_snapshot(path):
    """Parse a snapshot file back into arrays; floats round-trip exactly."""
    meta = {}
    columns = None
    nheader = 0
    with open(path) as f:
        for line in f:
            if not line.startswith("#"):
                break
            nheader += 1
            body = line[1:].strip()
            if "=" not in body:
                raise ValueError(f"{path}: malformed header line {nheader}: {line!r}")
            key, _, value = body.partition("=")
            key = key.strip()
            if key == "columns":
                columns = tuple(value.strip().split(","))
            else:
                meta[key] = value.strip()
    missing = [k for k in _HEADER_KEYS if k not in meta]
    if missing or columns is None:
        raise ValueError(f"{path}: header missing {missing or ['columns']}")
    for key in ("time", "dx", "dy", "gamma"):
        meta[key] = float(meta[key])
    for key in ("nx", "ny"):
        meta[key] = int(meta[key])
    raw = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    if raw.shape[1] != len(columns):
        raise ValueError(
            f"{path}: {raw.shape[1]} data columns but header names {len(columns)}"
        )
    expected = meta["nx"] * meta["ny"]
    if raw.shape[0] != expected:
        raise ValueError(f"{path}: {raw.shape[0]} rows, expected {expected}")
    data = {}
    for k, name in enumerate(columns):
        col = raw[:, k]
        data[name] = col.astype(bool) if name.startswith("flag") else col
    return SnapshotFile(meta=meta, columns=columns, data=data)
