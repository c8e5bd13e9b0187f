"""Shared fixtures: hand-written snapshot files in the documented format."""

from __future__ import annotations

import numpy as np
import pytest


def format_snapshot_1d(
    *,
    problem: str = "sod",
    scheme: str = "ldcu",
    time: float = 0.2,
    x: np.ndarray,
    rho: np.ndarray,
    u: np.ndarray | None = None,
    p: np.ndarray | None = None,
    flag: np.ndarray | None = None,
    gamma: float = 1.4,
) -> str:
    x = np.asarray(x, dtype=float)
    n = x.size
    u = np.zeros(n) if u is None else np.asarray(u, dtype=float)
    p = np.ones(n) if p is None else np.asarray(p, dtype=float)
    rho = np.asarray(rho, dtype=float)
    flag = np.zeros(n, dtype=int) if flag is None else np.asarray(flag, dtype=int)
    energy = p / (gamma - 1.0) + 0.5 * rho * u**2
    dx = float(x[1] - x[0]) if n > 1 else 1.0
    lines = [
        f"# problem={problem}",
        f"# scheme={scheme}",
        f"# time={time:.17g}",
        f"# nx={n}",
        "# ny=1",
        f"# dx={dx:.17g}",
        "# dy=0",
        f"# gamma={gamma:.17g}",
        "# columns=x,rho,u,p,E,flag",
    ]
    for j in range(n):
        lines.append(
            f"{x[j]:.17g},{rho[j]:.17g},{u[j]:.17g},{p[j]:.17g},{energy[j]:.17g},{flag[j]:d}"
        )
    return "\n".join(lines) + "\n"


def format_snapshot_2d(
    *,
    problem: str = "rp2d",
    scheme: str = "a-mm",
    time: float = 1.0,
    x: np.ndarray,
    y: np.ndarray,
    rho: np.ndarray,
    flag_x: np.ndarray | None = None,
    flag_y: np.ndarray | None = None,
    gamma: float = 1.4,
) -> str:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rho = np.asarray(rho, dtype=float)
    nx, ny = x.size, y.size
    assert rho.shape == (nx, ny)
    flag_x = np.zeros((nx, ny), dtype=int) if flag_x is None else np.asarray(flag_x, dtype=int)
    flag_y = np.zeros((nx, ny), dtype=int) if flag_y is None else np.asarray(flag_y, dtype=int)
    dx = float(x[1] - x[0]) if nx > 1 else 1.0
    dy = float(y[1] - y[0]) if ny > 1 else 1.0
    pressure = 1.0
    lines = [
        f"# problem={problem}",
        f"# scheme={scheme}",
        f"# time={time:.17g}",
        f"# nx={nx}",
        f"# ny={ny}",
        f"# dx={dx:.17g}",
        f"# dy={dy:.17g}",
        f"# gamma={gamma:.17g}",
        "# columns=x,y,rho,u,v,p,E,flag_x,flag_y",
    ]
    for j in range(nx):
        for k in range(ny):
            energy = pressure / (gamma - 1.0)
            lines.append(
                f"{x[j]:.17g},{y[k]:.17g},{rho[j, k]:.17g},0,0,{pressure:.17g},"
                f"{energy:.17g},{flag_x[j, k]:d},{flag_y[j, k]:d}"
            )
    return "\n".join(lines) + "\n"


@pytest.fixture
def snapshot_1d(tmp_path):
    """A small one-dimensional snapshot file with a density step."""
    x = np.linspace(0.0125, 0.9875, 40)
    rho = np.where(x < 0.5, 1.0, 0.125)
    path = tmp_path / "step-ldcu.csv"
    path.write_text(format_snapshot_1d(x=x, rho=rho))
    return path


@pytest.fixture
def snapshot_2d(tmp_path):
    """A small two-dimensional snapshot with directional flag masks."""
    x = np.linspace(0.1, 1.1, 6)
    y = np.linspace(0.125, 0.875, 4)
    xx = x[:, None]
    yy = y[None, :]
    rho = 1.0 + 0.5 * np.sin(xx) * np.cos(yy)
    flag_x = (xx + 0.0 * yy > 0.6).astype(int)
    flag_y = (0.0 * xx + yy > 0.5).astype(int)
    path = tmp_path / "quad-a-mm.csv"
    path.write_text(format_snapshot_2d(x=x, y=y, rho=rho, flag_x=flag_x, flag_y=flag_y))
    return path
