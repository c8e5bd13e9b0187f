"""Low-dissipation central-upwind numerical fluxes.

Built from one-sided interface values: local one-sided speeds from the
extreme eigenvalues clamped to zero, the intermediate state U*, a
built-in anti-diffusion correction q limited by the density jump, and
the upwind-weighted flux combination.  These are plain numpy
compositions; the time stepper uses the compiled equivalents in
`_kernels` and the test suite holds the two routes together.
"""

import numpy as np

from .euler import EulerError, PRESSURE_FLOOR, flux as physical_flux, eigenvalues, sound_speed
from .limiters import minmod

GAP_GUARD = 1e-12


class NonPositiveStarDensity(EulerError):
    """Intermediate density came out non-positive."""


def local_speeds(Um, Up, gas, axis=0, floor=None):
    """One-sided speed bounds (a_plus >= 0, a_minus <= 0) per interface."""
    lm = eigenvalues(Um, gas, axis=axis, floor=floor)
    lp = eigenvalues(Up, gas, axis=axis, floor=floor)
    a_plus = np.maximum(np.maximum(lm[-1], lp[-1]), 0.0)
    a_minus = np.minimum(np.minimum(lm[0], lp[0]), 0.0)
    return a_plus, a_minus


def intermediate_state(Um, Up, a_plus, a_minus, gas, axis=0, floor=None):
    """U* = [a+ U+ - a- U- - (F(U+) - F(U-))] / (a+ - a-).

    Requires a strictly positive speed gap everywhere.
    """
    gap = a_plus - a_minus
    if np.any(gap <= 0.0):
        raise ValueError("intermediate_state needs a_plus - a_minus > 0")
    Fm = physical_flux(Um, gas, axis=axis, floor=floor)
    Fp = physical_flux(Up, gas, axis=axis, floor=floor)
    return (a_plus * Up - a_minus * Um - (Fp - Fm)) / gap


def antidiffusion(Um, Up, Ustar, a_plus, a_minus, valid=None):
    """Anti-diffusion correction q.

    The magnitude is minmod(-a^-(rho* - rho^-), a^+(rho^+ - rho*)) and
    the correction acts along (1, velocities, |velocity|^2/2) of the
    intermediate state.  `valid` masks interfaces to correct (the rest
    get q = 0 and are exempt from the positivity requirement).
    """
    rs = Ustar[0]
    if valid is None:
        valid = np.ones(rs.shape, dtype=bool)
    if np.any((rs <= 0.0) & valid):
        idx = np.argmax((rs <= 0.0) & valid)
        raise NonPositiveStarDensity(
            f"intermediate density {rs.ravel()[idx]:.3e} at flat index {idx}"
        )
    safe_rs = np.where(valid, rs, 1.0)
    mq = np.where(valid, minmod(-a_minus * (rs - Um[0]), a_plus * (Up[0] - rs)), 0.0)
    vel = Ustar[1:-1] / safe_rs
    ek = 0.5 * np.sum(vel * vel, axis=0)
    return mq * np.concatenate([
        np.ones((1,) + rs.shape), vel, ek[np.newaxis]
    ])


def ldcu_flux(Um, Up, gas, axis=0, q_mode="analog", floor=PRESSURE_FLOOR):
    """Numerical flux through each interface from one-sided values.

    q_mode "analog" applies the anti-diffusion correction, "zero" drops
    it.  Interfaces whose speed gap degenerates (possible only for
    near-zero sound speeds) fall back to the central average flux.
    """
    if q_mode not in ("analog", "zero"):
        raise ValueError(f"unknown q_mode {q_mode!r}")
    Um = np.asarray(Um, dtype=np.float64)
    Up = np.asarray(Up, dtype=np.float64)
    Fm = physical_flux(Um, gas, axis=axis, floor=floor)
    Fp = physical_flux(Up, gas, axis=axis, floor=floor)
    a_plus, a_minus = local_speeds(Um, Up, gas, axis=axis, floor=floor)
    gap = a_plus - a_minus
    cref = 0.5 * (sound_speed(Um, gas, floor=floor) + sound_speed(Up, gas, floor=floor))
    degenerate = gap <= GAP_GUARD * (gap + cref)
    igap = 1.0 / np.where(degenerate, 1.0, gap)
    F = (a_plus * Fm - a_minus * Fp) * igap + (a_plus * a_minus * igap) * (Up - Um)
    if q_mode == "analog":
        Ustar = (a_plus * Up - a_minus * Um - (Fp - Fm)) * igap
        F = F + antidiffusion(Um, Up, Ustar, a_plus, a_minus, valid=~degenerate)
    return np.where(degenerate, 0.5 * (Fm + Fp), F)
