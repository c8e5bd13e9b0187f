"""Time integration: ghost cells, SSP-RK3 stages, and the run driver.

State arrays keep interior cell averages; each stage pads them with two
ghost layers, fills the ghosts from the boundary conditions, sweeps the
reconstruction/flux kernels, and assembles the flux divergence.
Roughness flags are computed once per step from the step-start state
and frozen across the three stages.  Solid walls mirror interior flags
into the ghost layers so the limiter choice is symmetric across the
wall and wall fluxes cancel exactly.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .euler import (
    EulerError,
    GasModel,
    PRESSURE_FLOOR,
    check_density,
    eigenvalues,
    pressure,
)
from .indicators import MMConfig, WLRConfig, WlrHistory1D, WlrHistory2D, mm_flags_1d, mm_flags_2d
from .limiters import MINMOD2, OVERCOMPRESSIVE
from .reconstruct import InterfaceValues1D

NGHOST = 2

SCHEMES = ("ldcu", "a-mm", "a-wlr")


class InvalidStateAtStage(EulerError):
    """A Runge-Kutta stage produced or consumed an unphysical state."""

    def __init__(self, stage, time, detail):
        self.stage = stage
        self.time = time
        super().__init__(f"stage {stage} at t={time:.6g}: {detail}")


class ZeroWaveSpeed(EulerError):
    """No signal speed to base a time step on."""


@dataclass(frozen=True)
class Grid1D:
    x0: float
    x1: float
    nx: int

    def __post_init__(self):
        if self.nx < 3 or self.x1 <= self.x0:
            raise ValueError("need x1 > x0 and at least 3 cells")

    @property
    def dx(self):
        return (self.x1 - self.x0) / self.nx

    def centers(self):
        return self.x0 + (np.arange(self.nx) + 0.5) * self.dx


@dataclass(frozen=True)
class Grid2D:
    x0: float
    x1: float
    y0: float
    y1: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 3 or self.ny < 3 or self.x1 <= self.x0 or self.y1 <= self.y0:
            raise ValueError("need positive extents and at least 3 cells per side")

    @property
    def dx(self):
        return (self.x1 - self.x0) / self.nx

    @property
    def dy(self):
        return (self.y1 - self.y0) / self.ny

    def xcenters(self):
        return self.x0 + (np.arange(self.nx) + 0.5) * self.dx

    def ycenters(self):
        return self.y0 + (np.arange(self.ny) + 0.5) * self.dy


class Free:
    """Outflow: ghost cells copy the nearest interior cell."""

    def __repr__(self):
        return "Free()"


class SolidWall:
    """Reflecting wall: mirrored interior with negated normal momentum."""

    def __repr__(self):
        return "SolidWall()"


@dataclass(frozen=True)
class Dirichlet:
    """Ghost cells pinned to a fixed conserved state."""

    state: tuple

    def __post_init__(self):
        object.__setattr__(self, "state", tuple(float(s) for s in self.state))


@dataclass(frozen=True)
class BoundarySpec:
    left: object
    right: object
    bottom: object = None
    top: object = None


def _fill_axis(P, side, bc, axis, mom):
    """Fill two ghost slots on one side along axis; mom is the index of
    the momentum component normal to that boundary."""
    sl = [slice(None)] * P.ndim

    def at(i):
        s = list(sl)
        s[axis] = i
        return tuple(s)

    n = P.shape[axis]
    if side == "lo":
        g0, g1, i0, i1 = 0, 1, 2, 3
    else:
        g0, g1, i0, i1 = n - 1, n - 2, n - 3, n - 4
    if isinstance(bc, Free):
        P[at(g1)] = P[at(i0)]
        P[at(g0)] = P[at(i0)]
    elif isinstance(bc, SolidWall):
        P[at(g1)] = P[at(i0)]
        P[at(g0)] = P[at(i1)]
        for g in (g0, g1):
            idx = at(g)
            idx = (mom,) + idx[1:]
            P[idx] = -P[idx]
    elif isinstance(bc, Dirichlet):
        st = np.array(bc.state)
        shape = (P.shape[0],) + (1,) * (P.ndim - 2)
        P[at(g0)] = st.reshape(shape)
        P[at(g1)] = st.reshape(shape)
    else:
        raise TypeError(f"unknown boundary condition {bc!r}")


def fill_ghosts_1d(P, bc):
    """Fill both ghost pairs of a padded (3, nx+4) array in place."""
    _fill_axis(P, "lo", bc.left, 1, 1)
    _fill_axis(P, "hi", bc.right, 1, 1)


def fill_ghosts_2d(P, bc):
    """Fill ghosts of a padded (4, nx+4, ny+4) array in place.

    y boundaries first, then x across the full y range, so corner
    ghosts inherit the x rule applied to y-filled columns.
    """
    _fill_axis(P, "lo", bc.bottom, 2, 2)
    _fill_axis(P, "hi", bc.top, 2, 2)
    _fill_axis(P, "lo", bc.left, 1, 1)
    _fill_axis(P, "hi", bc.right, 1, 1)


def _pad_flags_axis(F, side, bc, axis):
    """Mirror interior flags into wall ghosts; other BCs stay smooth."""
    if not isinstance(bc, SolidWall):
        return
    sl = [slice(None)] * F.ndim

    def at(i):
        s = list(sl)
        s[axis] = i
        return tuple(s)

    n = F.shape[axis]
    if side == "lo":
        F[at(1)] = F[at(2)]
        F[at(0)] = F[at(3)]
    else:
        F[at(n - 2)] = F[at(n - 3)]
        F[at(n - 1)] = F[at(n - 4)]


def pad_flags_1d(flags, bc, nx):
    """Interior flags (nx,) -> padded uint8 (nx+4,), BC aware."""
    out = np.zeros(nx + 4, dtype=np.uint8)
    if flags is not None:
        out[2:-2] = np.asarray(flags).astype(np.uint8)
    _pad_flags_axis(out, "lo", bc.left, 0)
    _pad_flags_axis(out, "hi", bc.right, 0)
    return out


def pad_flags_2d(flags, bc, nx, ny, axis):
    """Interior flags (nx, ny) -> padded uint8 for the given sweep axis.

    Only the sweep direction needs ghost flags (the transverse ghost
    entries are never read), mirrored at solid walls.
    """
    out = np.zeros((nx + 4, ny + 4), dtype=np.uint8)
    if flags is not None:
        out[2:-2, 2:-2] = np.asarray(flags).astype(np.uint8)
    if axis == 0:
        _pad_flags_axis(out, "lo", bc.left, 0)
        _pad_flags_axis(out, "hi", bc.right, 0)
    else:
        _pad_flags_axis(out, "lo", bc.bottom, 1)
        _pad_flags_axis(out, "hi", bc.top, 1)
    return out


def enforce_symmetry(U, mode):
    """Project the state onto a discrete symmetry, in place.

    "diagonal" averages the field with its transpose image (momenta
    swap roles); "mirror" averages with the x-reversed image (normal
    momentum antisymmetrized).  Both projections are exact involutions
    in floating point.
    """
    if mode is None:
        return U
    if mode == "diagonal":
        if U.shape[1] != U.shape[2]:
            raise ValueError("diagonal symmetry needs a square grid")
        rho, mx, my, E = U
        U[0] = 0.5 * (rho + rho.T)
        new_mx = 0.5 * (mx + my.T)
        new_my = 0.5 * (my + mx.T)
        U[1] = new_mx
        U[2] = new_my
        U[3] = 0.5 * (E + E.T)
        return U
    if mode == "mirror":
        U[0] = 0.5 * (U[0] + U[0][::-1, :])
        U[1] = 0.5 * (U[1] - U[1][::-1, :])
        U[2] = 0.5 * (U[2] + U[2][::-1, :])
        U[3] = 0.5 * (U[3] + U[3][::-1, :])
        return U
    raise ValueError(f"unknown symmetry mode {mode!r}")


def max_wave_speeds(U, gas, floor=None):
    """Largest rightward/leftward signal speeds per direction from cell
    averages; returns a tuple with one (a_max) entry per dimension."""
    out = []
    for axis in range(U.shape[0] - 2):
        lam = eigenvalues(U, gas, axis=axis, floor=floor)
        out.append(max(float(np.max(lam[-1])), -float(np.min(lam[0])), 0.0))
    return tuple(out)


@dataclass
class StepRecord:
    time: float
    dt: float
    rough_fraction: float
    floored: int


@dataclass
class Snapshot:
    time: float
    U: np.ndarray
    flags: tuple  # one interior bool array per sweep direction


@dataclass
class RunStats:
    steps: int = 0
    floored: int = 0
    star_nonpositive: int = 0
    records: list = field(default_factory=list)


class Solver:
    """Adaptive central-upwind solver for 1-D and 2-D problems.

    scheme "ldcu" reconstructs every cell with the dissipative preset,
    "a-mm" and "a-wlr" switch flagged cells to the overcompressive one
    using the minmod or weak-local-residual detector.  strict mode
    aborts on any unphysical state; otherwise evaluations are floored
    and counted in stats.
    """

    def __init__(
        self,
        grid,
        U0,
        bc,
        gas=GasModel(),
        scheme="ldcu",
        mm=MMConfig(),
        wlr=WLRConfig(),
        cfl=0.4,
        rough=OVERCOMPRESSIVE,
        smooth=MINMOD2,
        q2d="analog",
        dt_rule="min",
        strict=True,
        first_order=False,
        gravity=0.0,
        symmetry=None,
        floor=PRESSURE_FLOOR,
        t0=0.0,
    ):
        if scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
        if q2d not in ("analog", "zero"):
            raise ValueError(f"q2d must be analog or zero, got {q2d!r}")
        if dt_rule not in ("min", "sum"):
            raise ValueError(f"dt_rule must be min or sum, got {dt_rule!r}")
        if not 0.0 < cfl <= 1.0:
            raise ValueError(f"cfl must be in (0, 1], got {cfl}")
        self.grid = grid
        self.dim = 1 if isinstance(grid, Grid1D) else 2
        U0 = np.ascontiguousarray(U0, dtype=np.float64)
        expect = (3, grid.nx) if self.dim == 1 else (4, grid.nx, grid.ny)
        if U0.shape != expect:
            raise ValueError(f"initial state shape {U0.shape}, expected {expect}")
        self.U = U0.copy()
        self.bc = bc
        self.gas = gas
        self.scheme = scheme
        self.mm = mm
        self.wlr = wlr
        self.cfl = cfl
        self.rough = rough
        self.smooth = smooth
        self.q2d = q2d
        self.dt_rule = dt_rule
        self.strict = strict
        self.first_order = first_order
        self.gravity = gravity
        self.symmetry = symmetry
        self.floor = float(floor)
        self.t = float(t0)
        self.stats = RunStats()
        if self.dim == 1:
            self._pad = np.empty((3, grid.nx + 4))
            self._history = WlrHistory1D(values=wlr.values) if scheme == "a-wlr" else None
            self.last_flags = (np.zeros(grid.nx, dtype=bool),)
        else:
            self._pad = np.empty((4, grid.nx + 4, grid.ny + 4))
            self._history = WlrHistory2D() if scheme == "a-wlr" else None
            self.last_flags = (
                np.zeros((grid.nx, grid.ny), dtype=bool),
                np.zeros((grid.nx, grid.ny), dtype=bool),
            )
        if strict:
            self._check_state(self.U, 0, "initial data")

    @property
    def wlr_history(self):
        """Rolling residual history (a-wlr scheme only, else None)."""
        return self._history

    # -- validity ------------------------------------------------------

    def _check_state(self, U, stage, what):
        try:
            check_density(U)
            pressure(U, self.gas, floor=None)
        except EulerError as e:
            raise InvalidStateAtStage(stage, self.t, f"{what}: {e}") from e

    def _check_diag(self, diag, stage):
        nfloor, ibad, istar = diag
        if self.strict and (nfloor > 0 or istar >= 0):
            raise InvalidStateAtStage(
                stage, self.t,
                f"floored {nfloor} point values (first at flat interface {ibad}), "
                f"nonpositive intermediate density at {istar}",
            )
        self.stats.floored += nfloor
        if istar >= 0:
            self.stats.star_nonpositive += 1

    # -- flags ---------------------------------------------------------

    def _compute_flags(self, P):
        """Interior rough flags for this step, one array per direction."""
        g = self.grid
        if self.scheme == "ldcu":
            if self.dim == 1:
                return (np.zeros(g.nx, dtype=bool),)
            return (np.zeros((g.nx, g.ny), dtype=bool),) * 2
        if self.scheme == "a-mm":
            if self.dim == 1:
                return (mm_flags_1d(P[0], self.mm.delta),)
            return mm_flags_2d(P[0], self.mm.delta)
        # a-wlr: smooth until two history levels exist
        if not self._history.ready:
            if self.dim == 1:
                return (np.zeros(g.nx, dtype=bool),)
            return (np.zeros((g.nx, g.ny), dtype=bool),) * 2
        if self.dim == 1:
            return (self._history.flags(g.dx, self.wlr.threshold),)
        f = self._history.flags(g.dx, g.dy, self.wlr.threshold)
        return (f, f)

    # -- right-hand sides ----------------------------------------------

    def _fill(self, Uin):
        core = (slice(None),) + (slice(2, -2),) * self.dim
        self._pad[core] = Uin
        if self.dim == 1:
            fill_ghosts_1d(self._pad, self.bc)
        else:
            fill_ghosts_2d(self._pad, self.bc)
        return self._pad

    def _rhs_1d(self, P, pflags, stage, record):
        g = self.grid
        n_ifc = g.nx + 1
        if self.first_order:
            Um = np.ascontiguousarray(P[:, 1:-2])
            Up = np.ascontiguousarray(P[:, 2:-1])
        else:
            Um = np.empty((3, n_ifc))
            Up = np.empty((3, n_ifc))
            _kernels.recon_1d(
                P[0], P[1], P[2], self.gas.gamma, self.floor, pflags,
                self.rough.theta, self.rough.tau, self.smooth.theta, self.smooth.tau,
                Um, Up,
            )
        if record and self._history is not None:
            self._history.record(InterfaceValues1D(Um, Up), self.t)
        F = np.empty((3, n_ifc))
        self._check_diag(
            _kernels.flux_1d(Um, Up, self.gas.gamma, self.floor, F), stage
        )
        return -(F[:, 1:] - F[:, :-1]) / g.dx

    def _rhs_2d(self, P, pfx, pfy, stage):
        g = self.grid
        q_mode = 1 if self.q2d == "analog" else 0
        gam, fl = self.gas.gamma, self.floor
        if self.first_order:
            xm = np.ascontiguousarray(P[:, 1:-2, 2:-2])
            xp = np.ascontiguousarray(P[:, 2:-1, 2:-2])
        else:
            xm = np.empty((4, g.nx + 1, g.ny))
            xp = np.empty((4, g.nx + 1, g.ny))
            _kernels.recon2d_x(
                P[0], P[1], P[2], P[3], gam, fl, pfx,
                self.rough.theta, self.rough.tau, self.smooth.theta, self.smooth.tau,
                xm, xp,
            )
        Fx = np.empty((4, g.nx + 1, g.ny))
        self._check_diag(_kernels.flux2d_x(xm, xp, gam, fl, q_mode, Fx), stage)

        # y sweep runs through the x kernels on momentum-swapped,
        # transposed views (exact direction symmetry)
        W = np.ascontiguousarray(P[[0, 2, 1, 3]].transpose(0, 2, 1))
        if self.first_order:
            ym = np.ascontiguousarray(W[:, 1:-2, 2:-2])
            yp = np.ascontiguousarray(W[:, 2:-1, 2:-2])
        else:
            ym = np.empty((4, g.ny + 1, g.nx))
            yp = np.empty((4, g.ny + 1, g.nx))
            _kernels.recon2d_x(
                W[0], W[1], W[2], W[3], gam, fl, np.ascontiguousarray(pfy.T),
                self.rough.theta, self.rough.tau, self.smooth.theta, self.smooth.tau,
                ym, yp,
            )
        Gw = np.empty((4, g.ny + 1, g.nx))
        self._check_diag(_kernels.flux2d_x(ym, yp, gam, fl, q_mode, Gw), stage)
        Fy = Gw[[0, 2, 1, 3]].transpose(0, 2, 1)

        rhs = -(Fx[:, 1:, :] - Fx[:, :-1, :]) / g.dx - (Fy[:, :, 1:] - Fy[:, :, :-1]) / g.dy
        if self.gravity != 0.0:
            core = P[:, 2:-2, 2:-2]
            rhs[2] += self.gravity * core[0]
            rhs[3] += self.gravity * core[2]
        return rhs

    # -- stepping ------------------------------------------------------

    def cfl_dt(self):
        """Admissible time step from the current cell averages."""
        floor = None if self.strict else self.floor
        speeds = max_wave_speeds(self.U, self.gas, floor=floor)
        g = self.grid
        if self.dim == 1:
            (a,) = speeds
            if a <= 0.0:
                raise ZeroWaveSpeed(f"max signal speed {a} at t={self.t:.6g}")
            return self.cfl * g.dx / a
        a, b = speeds
        if max(a, b) <= 0.0:
            raise ZeroWaveSpeed(f"max signal speeds {(a, b)} at t={self.t:.6g}")
        if self.dt_rule == "min":
            dts = []
            if a > 0.0:
                dts.append(g.dx / a)
            if b > 0.0:
                dts.append(g.dy / b)
            return self.cfl * min(dts)
        return self.cfl / (a / g.dx + b / g.dy)

    def step(self, dt, land_on=None):
        """One SSP-RK3 step; lands exactly on land_on when given."""
        if dt <= 0.0:
            raise ValueError(f"dt must be positive, got {dt}")
        Un = self.U
        P = self._fill(Un)
        flags = self._compute_flags(P)
        self.last_flags = flags
        if self.dim == 1:
            # a-wlr history is recorded inside the stage-1 sweep
            pf = (pad_flags_1d(flags[0], self.bc, self.grid.nx),)
        else:
            pf = (
                pad_flags_2d(flags[0], self.bc, self.grid.nx, self.grid.ny, axis=0),
                pad_flags_2d(flags[1], self.bc, self.grid.nx, self.grid.ny, axis=1),
            )
            if self._history is not None:
                self._history.record(P, self.t)

        def rhs(Q, stage, prefilled=False, record=False):
            Pq = P if prefilled else self._fill(Q)
            if self.dim == 1:
                return self._rhs_1d(Pq, pf[0], stage, record)
            return self._rhs_2d(Pq, pf[0], pf[1], stage)

        U1 = Un + dt * rhs(Un, 1, prefilled=True, record=True)
        if self.strict:
            self._check_state(U1, 1, "stage value")
        U2 = 0.75 * Un + 0.25 * (U1 + dt * rhs(U1, 2))
        if self.strict:
            self._check_state(U2, 2, "stage value")
        Unew = Un / 3.0 + (2.0 / 3.0) * (U2 + dt * rhs(U2, 3))
        if self.strict:
            self._check_state(Unew, 3, "stage value")
        if self.dim == 2:
            enforce_symmetry(Unew, self.symmetry)
        self.U = Unew
        self.t = float(land_on) if land_on is not None else self.t + dt
        self.stats.steps += 1
        rough = float(np.mean(np.logical_or.reduce(flags))) if len(flags) > 1 else float(np.mean(flags[0]))
        self.stats.records.append(StepRecord(self.t, dt, rough, self.stats.floored))
        return self

    def run(self, t_final, snapshot_times=()):
        """Advance to t_final, returning a Snapshot at each requested
        time (and at t_final)."""
        eps = 1e-12
        events = sorted(set(float(s) for s in snapshot_times) | {float(t_final)})
        out = []
        for ev in events:
            tol = eps * max(1.0, abs(ev))
            if ev < self.t - tol:
                raise ValueError(f"snapshot time {ev} lies before t={self.t}")
            while self.t < ev - tol:
                dt = self.cfl_dt()
                if self.t + dt >= ev - tol:
                    self.step(ev - self.t, land_on=ev)
                else:
                    self.step(dt)
            out.append(
                Snapshot(self.t, self.U.copy(), tuple(f.copy() for f in self.last_flags))
            )
        return out
