"""Adaptive low-dissipation central-upwind solver for the Euler equations.

The package provides a finite-volume solver for the 1-D and 2-D
compressible Euler equations with three scheme variants: the baseline
low-dissipation central-upwind scheme with a dissipative limiter, and
two adaptive variants that switch flagged cells to an overcompressive
limiter, driven either by a slope-comparison indicator (``a-mm``) or by
a weak-residual indicator (``a-wlr``).

Typical use::

    from ldcu import build

    solver = build("sod", nx=400, scheme="a-wlr")
    snapshots = solver.run(0.2)

The ``ldcu`` command-line tool wraps :func:`ldcu.problems.build` and
writes snapshot CSV files; see the project README.
"""

from .analysis import (
    NonMonotoneWindow,
    contact_width,
    convergence_orders,
    l1_between_resolutions,
    l1_error,
    restrict,
)
from .euler import (
    EulerError,
    GasModel,
    NonPositiveDensity,
    NonPositivePressure,
    conserved_from_primitive,
    pressure,
    primitive_from_conserved,
    sound_speed,
)
from .limiters import MINMOD2, OVERCOMPRESSIVE, LimiterParams, minmod, sbm_phi
from .problems import (
    PROBLEMS,
    ProblemSpec,
    build,
    get_problem,
    make_grid,
    problem_names,
)
from .snapshot import SnapshotFile, read_snapshot, write_snapshot
from .stepper import SCHEMES, Grid1D, Grid2D, Snapshot, Solver

__all__ = [
    "EulerError",
    "GasModel",
    "Grid1D",
    "Grid2D",
    "LimiterParams",
    "MINMOD2",
    "NonMonotoneWindow",
    "NonPositiveDensity",
    "NonPositivePressure",
    "OVERCOMPRESSIVE",
    "PROBLEMS",
    "ProblemSpec",
    "SCHEMES",
    "Snapshot",
    "SnapshotFile",
    "Solver",
    "build",
    "conserved_from_primitive",
    "contact_width",
    "convergence_orders",
    "get_problem",
    "l1_between_resolutions",
    "l1_error",
    "make_grid",
    "minmod",
    "pressure",
    "primitive_from_conserved",
    "problem_names",
    "read_snapshot",
    "restrict",
    "sbm_phi",
    "sound_speed",
    "write_snapshot",
]

__version__ = "0.1.0"
