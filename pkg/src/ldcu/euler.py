"""Ideal-gas Euler equations: state algebra, physical fluxes, eigenstructure.

Conserved states are ndarrays with the component axis first:

    1-D: (rho, rho*u, E)            shape (3, ...)
    2-D: (rho, rho*u, rho*v, E)     shape (4, ...)

Primitive states use the same layout with (rho, u[, v], p).  All functions
broadcast over trailing axes, so a single state is shape (3,) or (4,) and a
field is (3, nx) / (4, nx, ny).
"""

import numpy as np
from dataclasses import dataclass

PRESSURE_FLOOR = 1e-12


class EulerError(Exception):
    pass


class NonPositiveDensity(EulerError):
    pass


class NonPositivePressure(EulerError):
    pass


class DegenerateBasis(EulerError):
    pass


@dataclass(frozen=True)
class GasModel:
    """Ideal gas with a constant ratio of specific heats."""

    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ValueError("gamma must exceed 1, got %r" % (self.gamma,))


def _kinetic(U):
    # 0.5*|m|^2/rho for either 3- or 4-component states
    mom2 = U[1] * U[1]
    if U.shape[0] == 4:
        mom2 = mom2 + U[2] * U[2]
    return 0.5 * mom2 / U[0]


def pressure(U, gas, floor=None):
    """Gas pressure p = (gamma - 1)(E - 0.5*rho*|u|^2).

    With floor=None any non-positive value raises NonPositivePressure;
    passing a float clips to that floor instead (lenient mode).
    """
    p = (gas.gamma - 1.0) * (U[-1] - _kinetic(U))
    if floor is None:
        if np.any(p <= 0.0):
            idx = np.unravel_index(int(np.argmin(p)), np.shape(p)) if np.ndim(p) else ()
            raise NonPositivePressure("non-positive pressure %r at cell %r" % (float(np.min(p)), idx))
    else:
        p = np.maximum(p, floor)
    return p


def check_density(U):
    if np.any(U[0] <= 0.0):
        idx = np.unravel_index(int(np.argmin(U[0])), np.shape(U[0])) if np.ndim(U[0]) else ()
        raise NonPositiveDensity("non-positive density %r at cell %r" % (float(np.min(U[0])), idx))


def primitive_from_conserved(U, gas, floor=None):
    """Convert conserved (rho, m[, n], E) to primitive (rho, u[, v], p)."""
    check_density(U)
    V = np.empty_like(np.asarray(U, dtype=float))
    V[0] = U[0]
    for k in range(1, U.shape[0] - 1):
        V[k] = U[k] / U[0]
    V[-1] = pressure(U, gas, floor=floor)
    return V


def conserved_from_primitive(V, gas):
    """Convert primitive (rho, u[, v], p) to conserved (rho, m[, n], E)."""
    V = np.asarray(V, dtype=float)
    U = np.empty_like(V)
    U[0] = V[0]
    vel2 = V[1] * V[1]
    U[1] = V[0] * V[1]
    if V.shape[0] == 4:
        U[2] = V[0] * V[2]
        vel2 = vel2 + V[2] * V[2]
    U[-1] = V[-1] / (gas.gamma - 1.0) + 0.5 * V[0] * vel2
    return U


def sound_speed(U, gas, floor=None):
    """c = sqrt(gamma*p/rho)."""
    check_density(U)
    return np.sqrt(gas.gamma * pressure(U, gas, floor=floor) / U[0])


def flux(U, gas, axis=0, floor=None):
    """Physical flux along `axis` (0 = x, 1 = y; 1-D states use axis=0).

    1-D: F = (m, m*u + p, u*(E + p)).
    2-D axis 0: F = (m, m*u + p, n*u, u*(E + p)); axis 1 swaps the roles
    of the two momentum components.
    """
    d = U.shape[0]
    if axis not in (0, 1) or (d == 3 and axis != 0):
        raise ValueError("bad flux axis %r for %d-component state" % (axis, d))
    p = pressure(U, gas, floor=floor)
    n = 1 + axis            # index of the normal momentum component
    un = U[n] / U[0]
    F = np.empty_like(np.asarray(U, dtype=float))
    F[0] = U[n]
    for k in range(1, d - 1):
        F[k] = U[k] * un
    F[n] += p
    F[-1] = un * (U[-1] + p)
    return F


def eigenvalues(U, gas, axis=0, floor=None):
    """Jacobian eigenvalues along `axis`, ascending: (un - c, un[, un], un + c)."""
    d = U.shape[0]
    c = sound_speed(U, gas, floor=floor)
    un = U[1 + axis] / U[0]
    lam = np.empty((d,) + np.shape(un))
    lam[0] = un - c
    for k in range(1, d - 1):
        lam[k] = un
    lam[-1] = un + c
    return lam


def jacobian(U, gas, axis=0):
    """Flux Jacobian dF/dU at a single state, as a (d, d) matrix."""
    d = U.shape[0]
    g1 = gas.gamma - 1.0
    rho = U[0]
    if d == 3:
        u = U[1] / rho
        E = U[2]
        H = (E + pressure(U, gas)) / rho
        ek = 0.5 * u * u
        return np.array([
            [0.0, 1.0, 0.0],
            [g1 * ek - u * u, (3.0 - gas.gamma) * u, g1],
            [u * (g1 * ek - H), H - g1 * u * u, gas.gamma * u],
        ])
    u = U[1] / rho
    v = U[2] / rho
    E = U[3]
    H = (E + pressure(U, gas)) / rho
    ek = 0.5 * (u * u + v * v)
    if axis == 0:
        return np.array([
            [0.0, 1.0, 0.0, 0.0],
            [g1 * ek - u * u, (3.0 - gas.gamma) * u, -g1 * v, g1],
            [-u * v, v, u, 0.0],
            [u * (g1 * ek - H), H - g1 * u * u, -g1 * u * v, gas.gamma * u],
        ])
    return np.array([
        [0.0, 0.0, 1.0, 0.0],
        [-u * v, v, u, 0.0],
        [g1 * ek - v * v, -g1 * u, (3.0 - gas.gamma) * v, g1],
        [v * (g1 * ek - H), -g1 * u * v, H - g1 * v * v, gas.gamma * v],
    ])


@dataclass(frozen=True)
class CharBasis:
    """Right/left eigenvector matrices of the interface Jacobian.

    Columns of R (rows of Rinv) are ordered by ascending eigenvalue.  Any
    per-column rescaling of R with the inverse scaling on Rinv represents
    the same basis; reconstruction results are invariant under it.
    """

    R: np.ndarray
    Rinv: np.ndarray


def char_basis(UL, UR, gas, axis=0):
    """Characteristic basis at the arithmetic-mean state of UL, UR.

    The interface Jacobian is evaluated at (UL + UR)/2 (a plain average,
    not a Roe mean).  Raises DegenerateBasis if the mean state has
    non-positive density or pressure.

    Returns
    -------
    CharBasis with R (right eigenvectors as columns) and Rinv = R^-1.
    """
    Ua = 0.5 * (np.asarray(UL, dtype=float) + np.asarray(UR, dtype=float))
    d = Ua.shape[0]
    g1 = gas.gamma - 1.0
    rho = Ua[0]
    if rho <= 0.0:
        raise DegenerateBasis("mean state has non-positive density %r" % (rho,))
    p = g1 * (Ua[-1] - _kinetic(Ua))
    if p <= 0.0:
        raise DegenerateBasis("mean state has non-positive pressure %r" % (p,))
    c = np.sqrt(gas.gamma * p / rho)
    c2 = c * c
    H = (Ua[-1] + p) / rho
    if d == 3:
        u = Ua[1] / rho
        ek = 0.5 * u * u
        R = np.array([
            [1.0, 1.0, 1.0],
            [u - c, u, u + c],
            [H - u * c, ek, H + u * c],
        ])
        Rinv = np.array([
            [g1 * ek + u * c, -g1 * u - c, g1],
            [2.0 * (c2 - g1 * ek), 2.0 * g1 * u, -2.0 * g1],
            [g1 * ek - u * c, -g1 * u + c, g1],
        ]) / (2.0 * c2)
        return CharBasis(R, Rinv)
    u = Ua[1] / rho
    v = Ua[2] / rho
    ek = 0.5 * (u * u + v * v)
    if axis == 0:
        un, ut, nmom, tmom = u, v, 1, 2
    elif axis == 1:
        un, ut, nmom, tmom = v, u, 2, 1
    else:
        raise ValueError("axis must be 0 or 1")
    R = np.zeros((4, 4))
    Rinv = np.zeros((4, 4))
    # acoustic (un - c), entropy, shear, acoustic (un + c)
    R[0] = (1.0, 1.0, 0.0, 1.0)
    R[nmom] = (un - c, un, 0.0, un + c)
    R[tmom] = (ut, ut, 1.0, ut)
    R[3] = (H - un * c, ek, ut, H + un * c)
    i2c2 = 0.5 / c2
    Rinv[0, 0] = (g1 * ek + un * c) * i2c2
    Rinv[0, nmom] = (-g1 * un - c) * i2c2
    Rinv[0, tmom] = -g1 * ut * i2c2
    Rinv[0, 3] = g1 * i2c2
    Rinv[1, 0] = (c2 - g1 * ek) / c2
    Rinv[1, nmom] = g1 * un / c2
    Rinv[1, tmom] = g1 * ut / c2
    Rinv[1, 3] = -g1 / c2
    Rinv[2, 0] = -ut
    Rinv[2, tmom] = 1.0
    Rinv[3, 0] = (g1 * ek - un * c) * i2c2
    Rinv[3, nmom] = (-g1 * un + c) * i2c2
    Rinv[3, tmom] = -g1 * ut * i2c2
    Rinv[3, 3] = g1 * i2c2
    return CharBasis(R, Rinv)
