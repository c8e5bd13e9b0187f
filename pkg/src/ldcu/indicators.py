"""Smoothness indicators that drive the adaptive limiter switch.

Two detectors mark cells as rough (candidates for the overcompressive
limiter):

* the minmod indicator compares the limited density difference of each
  cell against its neighbors and flags strict local maxima;
* the weak-local-residual indicator measures how badly point values
  sampled at the two previous time levels violate the weak form of the
  mass equation; the residual scales like the mesh width at shocks but
  like its fourth power in smooth regions, so a mesh-squared threshold
  separates the two.

Flag arrays cover interior cells only and are frozen for all stages of
a time step.  Residual helpers are pure so they can be fed manufactured
histories.
"""

from dataclasses import dataclass

import numpy as np

from .limiters import minmod


@dataclass(frozen=True)
class MMConfig:
    delta: float = 1e-4  # absolute margin a local maximum must clear

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError(f"delta must be non-negative, got {self.delta}")


@dataclass(frozen=True)
class WLRConfig:
    threshold: float = 1.0  # C in the |residual| > C dx^2 test
    values: str = "minus"  # which one-sided interface values feed the history

    def __post_init__(self):
        if self.threshold <= 0:
            raise ValueError(f"threshold must be positive, got {self.threshold}")
        if self.values not in ("minus", "plus", "avg"):
            raise ValueError(f"values must be minus/plus/avg, got {self.values!r}")


def mm_flags_1d(rho, delta=1e-4):
    """Rough-cell flags from padded densities (N+4,) -> (N,) bool."""
    rho = np.asarray(rho, dtype=np.float64)
    d = np.diff(rho)
    s = np.abs(minmod(d[1:], d[:-1]))  # s[i] belongs to padded cell i+1
    return s[1:-1] > np.maximum(s[:-2], s[2:]) + delta


def mm_flags_2d(rho, delta=1e-4):
    """Direction-split flags from padded densities (N+4, M+4).

    Returns (x_flags, y_flags), each (N, M) bool, from 1-D detections
    along the respective axis.
    """
    rho = np.asarray(rho, dtype=np.float64)
    dx_ = np.diff(rho[:, 2:-2], axis=0)
    sx = np.abs(minmod(dx_[1:], dx_[:-1]))
    x_flags = sx[1:-1] > np.maximum(sx[:-2], sx[2:]) + delta
    dy_ = np.diff(rho[2:-2, :], axis=1)
    sy = np.abs(minmod(dy_[:, 1:], dy_[:, :-1]))
    y_flags = sy[:, 1:-1] > np.maximum(sy[:, :-2], sy[:, 2:]) + delta
    return x_flags, y_flags


def _edge_pad_1d(a):
    return np.concatenate([a[:1], a, a[-1:]])


def wlr_residuals_1d(rho_new, mom_new, rho_old, mom_old, dx, dt):
    """Weak residual of the mass equation at the N+1 interfaces.

    Inputs are interface point values at the two previous time levels
    (new = later); dt is the time between them.  Endpoint stencils reuse
    the outermost interface value.
    """
    dr = _edge_pad_1d(np.asarray(rho_new) - np.asarray(rho_old))
    mn = _edge_pad_1d(np.asarray(mom_new))
    mo = _edge_pad_1d(np.asarray(mom_old))
    return (dx / 6.0) * (dr[2:] + 4.0 * dr[1:-1] + dr[:-2]) + (dt / 4.0) * (
        (mn[2:] - mn[:-2]) + (mo[2:] - mo[:-2])
    )


def wlr_smooth_1d(eps):
    """(1, 4, 1)/6 smoothing with copied endpoints."""
    e = _edge_pad_1d(np.asarray(eps))
    return (e[:-2] + 4.0 * e[1:-1] + e[2:]) / 6.0


def wlr_flags_1d(eps_bar, dx, threshold):
    """Cell j is rough when either bounding residual beats C dx^2."""
    a = np.abs(np.asarray(eps_bar))
    return np.maximum(a[:-1], a[1:]) > threshold * dx * dx


def corner_values(A):
    """Averages of each 2x2 cell block: (nx, ny) -> (nx-1, ny-1)."""
    return 0.25 * (A[:-1, :-1] + A[1:, :-1] + A[:-1, 1:] + A[1:, 1:])


def _simpson2(A):
    """Unnormalized (1,4,1) x (1,4,1) 9-point sum."""
    return (
        A[:-2, :-2]
        + A[2:, :-2]
        + A[:-2, 2:]
        + A[2:, 2:]
        + 4.0 * (A[1:-1, :-2] + A[1:-1, 2:] + A[:-2, 1:-1] + A[2:, 1:-1])
        + 16.0 * A[1:-1, 1:-1]
    )


def wlr_residuals_2d(rho_new, mx_new, my_new, rho_old, mx_old, my_old, dx, dy, dt):
    """Weak residual at cell corners.

    Inputs are corner values on the extended corner grid (N+3, M+3),
    one ring beyond the physical corners; output covers the physical
    (N+1, M+1) corners.  The time-difference part uses the tensor
    Simpson stencil; the flux parts use centered differences of the
    sum over both time levels, Simpson-averaged transversally.
    """
    delta = max(dt, dx, dy)
    upart = _simpson2(np.asarray(rho_new) - np.asarray(rho_old))
    m = np.asarray(mx_new) + np.asarray(mx_old)
    fpart = (
        (m[2:, :-2] - m[:-2, :-2])
        + 4.0 * (m[2:, 1:-1] - m[:-2, 1:-1])
        + (m[2:, 2:] - m[:-2, 2:])
    )
    g = np.asarray(my_new) + np.asarray(my_old)
    gpart = (
        (g[:-2, 2:] - g[:-2, :-2])
        + 4.0 * (g[1:-1, 2:] - g[1:-1, :-2])
        + (g[2:, 2:] - g[2:, :-2])
    )
    return (
        (dx * dy / (36.0 * delta)) * upart
        + (dy * dt / (12.0 * delta)) * fpart
        + (dx * dt / (12.0 * delta)) * gpart
    )


def wlr_smooth_2d(eps):
    """Normalized tensor-Simpson smoothing with copied edges."""
    e = np.pad(np.asarray(eps), 1, mode="edge")
    return _simpson2(e) / 36.0


def wlr_flags_2d(eps_bar, dx, dy, threshold):
    """Cell is rough when any of its four corners beats the threshold."""
    a = np.abs(np.asarray(eps_bar))
    m = np.maximum(
        np.maximum(a[:-1, :-1], a[1:, :-1]), np.maximum(a[:-1, 1:], a[1:, 1:])
    )
    return m > threshold * max(dx, dy) ** 2


class WlrHistory1D:
    """Rolling two-level store of interface values for the residual."""

    def __init__(self, values="minus"):
        if values not in ("minus", "plus", "avg"):
            raise ValueError(f"values must be minus/plus/avg, got {values!r}")
        self.values = values
        self._levels = []

    def record(self, interface_values, time):
        """Store (rho, momentum) interface values of one time level."""
        if self.values == "minus":
            pick = interface_values.minus
        elif self.values == "plus":
            pick = interface_values.plus
        else:
            pick = 0.5 * (interface_values.minus + interface_values.plus)
        self._levels.append((float(time), pick[0].copy(), pick[1].copy()))
        del self._levels[:-2]

    @property
    def ready(self):
        return len(self._levels) == 2

    def smoothed_residuals(self, dx):
        """Smoothed interface residuals (N+1,) from the stored levels."""
        (t_old, r_old, m_old), (t_new, r_new, m_new) = self._levels
        eps = wlr_residuals_1d(r_new, m_new, r_old, m_old, dx, t_new - t_old)
        return wlr_smooth_1d(eps)

    def flags(self, dx, threshold):
        """Rough-cell flags (N,) from the stored levels."""
        return wlr_flags_1d(self.smoothed_residuals(dx), dx, threshold)


class WlrHistory2D:
    """Rolling two-level store of corner values for the residual."""

    def __init__(self):
        self._levels = []

    def record(self, U_padded, time):
        """Store corner averages of rho and both momenta from padded
        cell averages (4, N+4, M+4)."""
        self._levels.append(
            (
                float(time),
                corner_values(U_padded[0]),
                corner_values(U_padded[1]),
                corner_values(U_padded[2]),
            )
        )
        del self._levels[:-2]

    @property
    def ready(self):
        return len(self._levels) == 2

    def flags(self, dx, dy, threshold):
        """Rough-cell flags (N, M) from the stored levels."""
        (t_old, r_old, mx_old, my_old), (t_new, r_new, mx_new, my_new) = self._levels
        eps = wlr_residuals_2d(
            r_new, mx_new, my_new, r_old, mx_old, my_old, dx, dy, t_new - t_old
        )
        return wlr_flags_2d(wlr_smooth_2d(eps), dx, dy, threshold)
