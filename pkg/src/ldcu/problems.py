"""Catalog of ready-made test problems and a one-call solver factory.

Initial data are sampled pointwise at cell centers in primitive
variables (rho, u[, v], p) and converted to conserved cell values.
`build` wires a catalog entry into a configured `Solver`; every tunable
has a per-problem default that a caller can override.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .euler import PRESSURE_FLOOR, GasModel, conserved_from_primitive
from .indicators import MMConfig, WLRConfig
from .limiters import MINMOD2, OVERCOMPRESSIVE
from .stepper import (
    BoundarySpec,
    Dirichlet,
    Free,
    Grid1D,
    Grid2D,
    SolidWall,
    Solver,
)

__all__ = ["ProblemSpec", "PROBLEMS", "problem_names", "get_problem",
           "make_grid", "build", "smooth_advect_density"]


@dataclass(frozen=True)
class ProblemSpec:
    """Static description of one catalog problem."""

    name: str
    dim: int
    domain: tuple            # (x0, x1) or (x0, x1, y0, y1)
    default_nx: int
    t_final: float
    bc: BoundarySpec
    wlr_threshold: float     # default constant for the weak-residual detector
    gamma: float = 1.4
    gravity: float = 0.0
    symmetry: str | None = None
    snapshot_times: tuple = ()
    strict_default: bool = True
    init: Callable = field(repr=False, compare=False, default=None)

    @property
    def aspect(self):
        """Cell-count ratio ny/nx that keeps cells square."""
        if self.dim == 1:
            return None
        x0, x1, y0, y1 = self.domain
        return (y1 - y0) / (x1 - x0)


# -- initial states ------------------------------------------------------

def _sod(grid, gas):
    x = grid.centers()
    left = x < 0.5
    V = np.empty((3, x.size))
    V[0] = np.where(left, 1.0, 0.125)
    V[1] = 0.0
    V[2] = np.where(left, 1.0, 0.1)
    return conserved_from_primitive(V, gas)


def smooth_advect_density(x, t):
    """Exact density of the smooth advection wave at time t (u=1, p=1)."""
    return 1.0 + 0.5 * np.sin(2.0 * np.pi * (np.asarray(x) - t))


def _smooth_advect(grid, gas):
    x = grid.centers()
    V = np.empty((3, x.size))
    V[0] = smooth_advect_density(x, 0.0)
    V[1] = 1.0
    V[2] = 1.0
    return conserved_from_primitive(V, gas)


def _titarev_toro(grid, gas):
    x = grid.centers()
    left = x < -4.5
    V = np.empty((3, x.size))
    V[0] = np.where(left, 1.51695, 1.0 + 0.1 * np.sin(20.0 * x))
    V[1] = np.where(left, 0.523346, 0.0)
    V[2] = np.where(left, 1.805, 1.0)
    return conserved_from_primitive(V, gas)


def _shu_osher(grid, gas):
    x = grid.centers()
    left = x < -4.0
    V = np.empty((3, x.size))
    V[0] = np.where(left, 27.0 / 7.0, 1.0 + 0.2 * np.sin(5.0 * x))
    V[1] = np.where(left, 4.0 * np.sqrt(35.0) / 9.0, 0.0)
    V[2] = np.where(left, 31.0 / 3.0, 1.0)
    return conserved_from_primitive(V, gas)


def _blast(grid, gas):
    x = grid.centers()
    V = np.empty((3, x.size))
    V[0] = 1.0
    V[1] = 0.0
    V[2] = np.where(x < 0.1, 1000.0, np.where(x < 0.9, 0.01, 100.0))
    return conserved_from_primitive(V, gas)


def _rp2d(grid, gas):
    # quadrant states (rho, u, v, p), split at (1, 1)
    x = grid.xcenters()[:, None]
    y = grid.ycenters()[None, :]
    right = np.broadcast_to(x >= 1.0, (grid.nx, grid.ny))
    top = np.broadcast_to(y >= 1.0, (grid.nx, grid.ny))
    V = np.empty((4, grid.nx, grid.ny))
    quads = [
        (right & top, (1.5, 0.0, 0.0, 1.5)),
        (~right & top, (0.5323, 1.206, 0.0, 0.3)),
        (~right & ~top, (0.138, 1.206, 1.206, 0.029)),
        (right & ~top, (0.5323, 0.0, 1.206, 0.3)),
    ]
    for mask, state in quads:
        for k, val in enumerate(state):
            V[k][mask] = val
    return conserved_from_primitive(V, gas)


def _implosion(grid, gas):
    x = grid.xcenters()[:, None]
    y = grid.ycenters()[None, :]
    inner = (x + y) < 0.15
    V = np.empty((4, grid.nx, grid.ny))
    V[0] = np.where(inner, 0.125, 1.0)
    V[1] = 0.0
    V[2] = 0.0
    V[3] = np.where(inner, 0.14, 1.0)
    return conserved_from_primitive(V, gas)


def _rayleigh_taylor(grid, gas):
    x = grid.xcenters()[:, None]
    y = grid.ycenters()[None, :]
    heavy = y < 0.5
    V = np.empty((4, grid.nx, grid.ny))
    V[0] = np.where(heavy, 2.0, 1.0)
    V[3] = np.where(heavy, 2.0 * y + 1.0, y + 1.5)
    c = np.sqrt(gas.gamma * V[3] / V[0])
    V[1] = 0.0
    V[2] = -0.025 * c * np.cos(8.0 * np.pi * x)
    return conserved_from_primitive(V, gas)


# -- catalog -------------------------------------------------------------

_G53 = 5.0 / 3.0
# fixed-state boundaries hold the undisturbed hydrostatic end states
_RT_BOTTOM = Dirichlet((2.0, 0.0, 0.0, 1.0 / (_G53 - 1.0)))
_RT_TOP = Dirichlet((1.0, 0.0, 0.0, 2.5 / (_G53 - 1.0)))

_SPECS = [
    ProblemSpec(
        name="sod", dim=1, domain=(0.0, 1.0), default_nx=400, t_final=0.2,
        bc=BoundarySpec(Free(), Free()), wlr_threshold=1.0, init=_sod,
    ),
    ProblemSpec(
        name="smooth-advect", dim=1, domain=(-1.0, 2.0), default_nx=300,
        t_final=0.25, bc=BoundarySpec(Free(), Free()), wlr_threshold=1.0,
        init=_smooth_advect,
    ),
    ProblemSpec(
        name="titarev-toro", dim=1, domain=(-10.0, 5.0), default_nx=1200,
        t_final=5.0, bc=BoundarySpec(Free(), Free()), wlr_threshold=0.1,
        init=_titarev_toro,
    ),
    ProblemSpec(
        name="shu-osher", dim=1, domain=(-5.0, 15.0), default_nx=800,
        t_final=5.0, bc=BoundarySpec(Free(), Free()), wlr_threshold=0.35,
        init=_shu_osher,
    ),
    # the colliding blast waves transiently drive one cell's stage
    # pressure a hair negative at any practical CFL, so this problem
    # defaults to floored (non-strict) evaluations
    ProblemSpec(
        name="blast", dim=1, domain=(0.0, 1.0), default_nx=400,
        t_final=0.038, bc=BoundarySpec(SolidWall(), SolidWall()),
        wlr_threshold=0.1, strict_default=False, init=_blast,
    ),
    ProblemSpec(
        name="rp2d", dim=2, domain=(0.0, 1.2, 0.0, 1.2), default_nx=1000,
        t_final=1.0, bc=BoundarySpec(Free(), Free(), Free(), Free()),
        wlr_threshold=4.0, init=_rp2d,
    ),
    ProblemSpec(
        name="implosion", dim=2, domain=(0.0, 0.5, 0.0, 0.5),
        default_nx=1000, t_final=2.5,
        bc=BoundarySpec(SolidWall(), SolidWall(), SolidWall(), SolidWall()),
        wlr_threshold=5.0, symmetry="diagonal", init=_implosion,
    ),
    ProblemSpec(
        name="rayleigh-taylor", dim=2, domain=(0.0, 0.25, 0.0, 1.0),
        default_nx=256, t_final=2.95,
        bc=BoundarySpec(SolidWall(), SolidWall(), _RT_BOTTOM, _RT_TOP),
        wlr_threshold=3.0, gamma=_G53, gravity=1.0, symmetry="mirror",
        snapshot_times=(1.95, 2.95), init=_rayleigh_taylor,
    ),
]

PROBLEMS = {spec.name: spec for spec in _SPECS}


def problem_names():
    return tuple(PROBLEMS)


def get_problem(name):
    try:
        return PROBLEMS[name]
    except KeyError:
        raise ValueError(
            f"unknown problem {name!r}; choose from {', '.join(PROBLEMS)}"
        ) from None


def make_grid(spec, nx=None, ny=None):
    """Grid for `spec`, default resolution unless overridden.

    When only nx is given for a 2-D problem, ny follows the domain
    aspect ratio so cells stay square.
    """
    nx = spec.default_nx if nx is None else int(nx)
    if spec.dim == 1:
        x0, x1 = spec.domain
        return Grid1D(x0, x1, nx)
    x0, x1, y0, y1 = spec.domain
    if ny is None:
        ny = round(nx * spec.aspect)
    return Grid2D(x0, x1, y0, y1, nx, int(ny))


def build(
    name,
    nx=None,
    ny=None,
    scheme="ldcu",
    wlr_threshold=None,
    wlr_values="minus",
    mm_delta=1e-4,
    cfl=0.4,
    rough=OVERCOMPRESSIVE,
    smooth=MINMOD2,
    q2d="analog",
    dt_rule="min",
    strict=None,
    first_order=False,
    symmetry="auto",
    floor=PRESSURE_FLOOR,
):
    """Configured solver for a catalog problem.

    symmetry "auto" applies the problem's natural projection (if any),
    "off"/None disables it, any explicit mode is passed through.
    strict None takes the problem's default.
    """
    spec = get_problem(name)
    grid = make_grid(spec, nx, ny)
    gas = GasModel(gamma=spec.gamma)
    U0 = spec.init(grid, gas)
    if symmetry == "auto":
        sym = spec.symmetry
    elif symmetry in (None, "off", "none"):
        sym = None
    else:
        sym = symmetry
    C = spec.wlr_threshold if wlr_threshold is None else float(wlr_threshold)
    if strict is None:
        strict = spec.strict_default
    return Solver(
        grid,
        U0,
        spec.bc,
        gas=gas,
        scheme=scheme,
        mm=MMConfig(delta=mm_delta),
        wlr=WLRConfig(threshold=C, values=wlr_values),
        cfl=cfl,
        rough=rough,
        smooth=smooth,
        q2d=q2d,
        dt_rule=dt_rule,
        strict=strict,
        first_order=first_order,
        gravity=spec.gravity,
        symmetry=sym,
        floor=floor,
    )
