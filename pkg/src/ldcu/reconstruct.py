"""Second-order characteristic reconstruction at cell interfaces.

Cell averages are projected onto the characteristic variables of the
linearization at the arithmetic-mean state of each interface pair,
limited slopes are built per cell in those variables, and the two
one-sided point values are transformed back.  Cells carrying a
roughness flag limit with the `rough` parameters (overcompressive by
default), the rest with `smooth` (Minmod2).  Arrays follow the
convention of `euler`: components first, two ghost layers on every
spatial side.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .euler import PRESSURE_FLOOR, char_basis, GasModel
from .limiters import LimiterParams, MINMOD2, OVERCOMPRESSIVE, limited_slope

NGHOST = 2

# momentum-swap permutation used to run y-direction sweeps through the
# x-direction kernels: G(U) = S F(S U) with S = _SWAP indexing
_SWAP = np.array([0, 2, 1, 3])


@dataclass(frozen=True)
class InterfaceValues1D:
    """One-sided point values at the nx+1 interior interfaces."""

    minus: np.ndarray  # (3, nx+1), left-biased value U^-
    plus: np.ndarray  # (3, nx+1), right-biased value U^+


@dataclass(frozen=True)
class InterfaceValues2D:
    x_minus: np.ndarray  # (4, nx+1, ny)
    x_plus: np.ndarray
    y_minus: np.ndarray  # (4, nx, ny+1)
    y_plus: np.ndarray


def _padded_flags(flags, padded_shape):
    """uint8 flag array on the padded grid; ghosts default to smooth."""
    out = np.zeros(padded_shape, dtype=np.uint8)
    if flags is None:
        return out
    flags = np.asarray(flags)
    if flags.shape == padded_shape:
        return flags.astype(np.uint8)
    core = tuple(slice(NGHOST, n - NGHOST) for n in padded_shape)
    if flags.shape != out[core].shape:
        raise ValueError(
            f"flags shape {flags.shape} matches neither the padded grid "
            f"{padded_shape} nor its interior"
        )
    out[core] = flags.astype(np.uint8)
    return out


def _matrix_recon_1d(U, flags, gas, rough, smooth, bases):
    d, npad = U.shape
    nifc = npad - 3
    Um = np.empty((d, nifc))
    Up = np.empty((d, nifc))
    for a in range(nifc):
        if bases is None:
            basis = char_basis(U[:, a + 1], U[:, a + 2], gas)
            R, Rinv = basis.R, basis.Rinv
        else:
            R, Rinv = bases[a]
        W = Rinv @ U[:, a : a + 4]
        pl = rough if flags[a + 1] else smooth
        pr = rough if flags[a + 2] else smooth
        sl = limited_slope(W[:, 0], W[:, 1], W[:, 2], 1.0, pl)
        sr = limited_slope(W[:, 1], W[:, 2], W[:, 3], 1.0, pr)
        Um[:, a] = R @ (W[:, 1] + 0.5 * sl)
        Up[:, a] = R @ (W[:, 2] - 0.5 * sr)
    return Um, Up


def reconstruct_1d(
    U,
    flags=None,
    gas=GasModel(),
    rough=OVERCOMPRESSIVE,
    smooth=MINMOD2,
    bases=None,
    floor=PRESSURE_FLOOR,
):
    """Interface point values from padded 1-D cell averages.

    U has shape (3, nx + 4).  flags marks rough cells (interior-sized or
    padded); unflagged cells limit with `smooth`, flagged with `rough`.
    `bases` optionally injects per-interface (R, Rinv) pairs, switching
    to a plain matrix implementation (slow; meant for cross-checking the
    compiled path and for basis-scaling experiments).
    """
    U = np.ascontiguousarray(U, dtype=np.float64)
    if U.ndim != 2 or U.shape[0] != 3 or U.shape[1] < 4:
        raise ValueError(f"expected (3, nx+4) cell averages, got {U.shape}")
    pflags = _padded_flags(flags, (U.shape[1],))
    if bases is not None:
        Um, Up = _matrix_recon_1d(U, pflags, gas, rough, smooth, bases)
        return InterfaceValues1D(Um, Up)
    nifc = U.shape[1] - 3
    Um = np.empty((3, nifc))
    Up = np.empty((3, nifc))
    _kernels.recon_1d(
        U[0], U[1], U[2], gas.gamma, float(floor), pflags,
        rough.theta, rough.tau, smooth.theta, smooth.tau, Um, Up,
    )
    return InterfaceValues1D(Um, Up)


def _matrix_recon_2d(U, xflags, yflags, gas, rough, smooth):
    d, nxp, nyp = U.shape
    nx, ny = nxp - 4, nyp - 4
    xm = np.empty((d, nx + 1, ny))
    xp = np.empty((d, nx + 1, ny))
    ym = np.empty((d, nx, ny + 1))
    yp = np.empty((d, nx, ny + 1))
    for k in range(ny):
        col = U[:, :, k + NGHOST]
        fl = xflags[:, k + NGHOST]
        for a in range(nx + 1):
            basis = char_basis(col[:, a + 1], col[:, a + 2], gas, axis=0)
            W = basis.Rinv @ col[:, a : a + 4]
            pl = rough if fl[a + 1] else smooth
            pr = rough if fl[a + 2] else smooth
            sl = limited_slope(W[:, 0], W[:, 1], W[:, 2], 1.0, pl)
            sr = limited_slope(W[:, 1], W[:, 2], W[:, 3], 1.0, pr)
            xm[:, a, k] = basis.R @ (W[:, 1] + 0.5 * sl)
            xp[:, a, k] = basis.R @ (W[:, 2] - 0.5 * sr)
    for j in range(nx):
        row = U[:, j + NGHOST, :]
        fl = yflags[j + NGHOST, :]
        for b in range(ny + 1):
            basis = char_basis(row[:, b + 1], row[:, b + 2], gas, axis=1)
            W = basis.Rinv @ row[:, b : b + 4]
            pl = rough if fl[b + 1] else smooth
            pr = rough if fl[b + 2] else smooth
            sl = limited_slope(W[:, 0], W[:, 1], W[:, 2], 1.0, pl)
            sr = limited_slope(W[:, 1], W[:, 2], W[:, 3], 1.0, pr)
            ym[:, j, b] = basis.R @ (W[:, 1] + 0.5 * sl)
            yp[:, j, b] = basis.R @ (W[:, 2] - 0.5 * sr)
    return InterfaceValues2D(xm, xp, ym, yp)


def reconstruct_2d(
    U,
    x_flags=None,
    y_flags=None,
    gas=GasModel(),
    rough=OVERCOMPRESSIVE,
    smooth=MINMOD2,
    use_kernels=True,
    floor=PRESSURE_FLOOR,
):
    """Interface point values from padded 2-D cell averages.

    U has shape (4, nx + 4, ny + 4).  x_flags/y_flags mark cells rough
    for the respective sweep direction.  use_kernels=False runs the
    per-interface matrix route (slow reference).
    """
    U = np.ascontiguousarray(U, dtype=np.float64)
    if U.ndim != 3 or U.shape[0] != 4 or min(U.shape[1:]) < 5:
        raise ValueError(f"expected (4, nx+4, ny+4) cell averages, got {U.shape}")
    pxf = _padded_flags(x_flags, U.shape[1:])
    pyf = _padded_flags(y_flags, U.shape[1:])
    if not use_kernels:
        return _matrix_recon_2d(U, pxf, pyf, gas, rough, smooth)
    nx, ny = U.shape[1] - 4, U.shape[2] - 4
    xm = np.empty((4, nx + 1, ny))
    xp = np.empty((4, nx + 1, ny))
    _kernels.recon2d_x(
        U[0], U[1], U[2], U[3], gas.gamma, float(floor), pxf,
        rough.theta, rough.tau, smooth.theta, smooth.tau, xm, xp,
    )
    # y sweep through the x kernel: swap momenta and transpose so the
    # sweep direction becomes the leading (contiguous-inner) axis
    W = np.ascontiguousarray(U[_SWAP].transpose(0, 2, 1))
    fyT = np.ascontiguousarray(pyf.T)
    ym_w = np.empty((4, ny + 1, nx))
    yp_w = np.empty((4, ny + 1, nx))
    _kernels.recon2d_x(
        W[0], W[1], W[2], W[3], gas.gamma, float(floor), fyT,
        rough.theta, rough.tau, smooth.theta, smooth.tau, ym_w, yp_w,
    )
    ym = np.ascontiguousarray(ym_w[_SWAP].transpose(0, 2, 1))
    yp = np.ascontiguousarray(yp_w[_SWAP].transpose(0, 2, 1))
    return InterfaceValues2D(xm, xp, ym, yp)
