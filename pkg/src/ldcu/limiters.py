"""Slope limiters: the two-parameter SBM family and minmod helpers.

The family is

    phi_{theta,tau}(r) = 0                              r <= 0
                         min(r*theta, 1 + tau*(r - 1))  0 < r <= 1
                         r * phi_{theta,tau}(1/r)       r > 1

so every member satisfies phi(1) = 1 and the symmetry phi(r) = r*phi(1/r).
Two presets matter in practice: an overcompressive member used inside
detected rough regions, and a dissipative member equivalent to the
classical two-parameter minmod slope everywhere else.
"""

import numpy as np
from dataclasses import dataclass


@dataclass(frozen=True)
class LimiterParams:
    theta: float
    tau: float

    def __post_init__(self):
        if not 1.0 <= self.theta <= 2.0:
            raise ValueError("theta must lie in [1, 2], got %r" % (self.theta,))
        if not -1.0 <= self.tau <= 1.0:
            raise ValueError("tau must lie in [-1, 1], got %r" % (self.tau,))


OVERCOMPRESSIVE = LimiterParams(theta=2.0, tau=-0.25)
MINMOD2 = LimiterParams(theta=2.0, tau=0.5)

# relative threshold for treating a slope-ratio denominator as zero
DENOM_GUARD = 1e-12


def minmod(*args):
    """minmod(a1, ..., an): min of the args if all positive, max if all
    negative, else 0.  Works elementwise on broadcastable arrays."""
    a = np.broadcast_arrays(*[np.asarray(x, dtype=float) for x in args])
    lo = np.minimum.reduce(a)
    hi = np.maximum.reduce(a)
    out = np.where(lo > 0.0, lo, 0.0) + np.where(hi < 0.0, hi, 0.0)
    if out.ndim == 0:
        return float(out)
    return out


def sbm_phi(r, params):
    """Evaluate phi_{theta,tau} elementwise.  r must be finite."""
    r = np.asarray(r, dtype=float)
    th, ta = params.theta, params.tau
    low = np.minimum(r * th, 1.0 + ta * (r - 1.0))          # 0 < r <= 1
    high = np.minimum(th, r + ta * (1.0 - r))               # r > 1, equals r*phi(1/r)
    out = np.where(r <= 0.0, 0.0, np.where(r <= 1.0, low, high))
    if out.ndim == 0:
        return float(out)
    return out


def limited_slope(gm, g0, gp, dx, params):
    """SBM slope of the middle cell from three consecutive cell values.

    Returns phi((gp - g0)/(g0 - gm)) * (g0 - gm) / dx, with the slope
    forced to zero when the denominator is at round-off scale:
    |g0 - gm| <= 1e-12 * max(|gm|, |g0|, |gp|, 1).
    """
    gm = np.asarray(gm, dtype=float)
    g0 = np.asarray(g0, dtype=float)
    gp = np.asarray(gp, dtype=float)
    den = g0 - gm
    num = gp - g0
    scale = np.maximum.reduce([np.abs(gm), np.abs(g0), np.abs(gp),
                               np.ones_like(den)])
    ok = np.abs(den) > DENOM_GUARD * scale
    r = np.where(ok, num, 0.0) / np.where(ok, den, 1.0)
    out = np.where(ok, sbm_phi(r, params) * den, 0.0) / dx
    if out.ndim == 0:
        return float(out)
    return out


def minmod2_slope(gm, g0, gp, dx):
    """Classical two-parameter minmod slope with factor 2:

        minmod(2*(g0 - gm)/dx, (gp - gm)/(2*dx), 2*(gp - g0)/dx)

    Algebraically identical to limited_slope with the MINMOD2 preset
    (up to the vanishing-denominator guard).
    """
    gm = np.asarray(gm, dtype=float)
    g0 = np.asarray(g0, dtype=float)
    gp = np.asarray(gp, dtype=float)
    return minmod(2.0 * (g0 - gm) / dx,
                  (gp - gm) / (2.0 * dx),
                  2.0 * (gp - g0) / dx)
