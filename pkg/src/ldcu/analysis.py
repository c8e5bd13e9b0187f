"""Error norms, interface-sharpness measurement, and convergence rates."""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "NonMonotoneWindow",
    "l1_error",
    "restrict",
    "l1_between_resolutions",
    "contact_width",
    "convergence_orders",
]


class NonMonotoneWindow(ValueError):
    """The windowed profile reverses direction, so level crossings are
    ambiguous."""


def _window_mask(x, window):
    if window is None:
        return np.ones(np.asarray(x).size, dtype=bool)
    lo, hi = window
    if not hi > lo:
        raise ValueError(f"empty window {window!r}")
    return (x >= lo) & (x <= hi)


def l1_error(x, q, ref, dx, window=None):
    """Discrete L1 distance dx * sum |q - ref| over cells with centers
    in `window` (whole domain when None).

    `ref` is either a callable evaluated at the cell centers or an
    array of matching length.
    """
    x = np.asarray(x, dtype=float)
    q = np.asarray(q, dtype=float)
    r = np.asarray(ref(x) if callable(ref) else ref, dtype=float)
    if r.shape != q.shape:
        raise ValueError(f"reference shape {r.shape} != data shape {q.shape}")
    m = _window_mask(x, window)
    return float(dx * np.abs(q - r)[m].sum())


def restrict(q_fine, ratio):
    """Average `ratio` consecutive fine cells onto each coarse cell."""
    q = np.asarray(q_fine, dtype=float)
    r = int(ratio)
    if r < 1 or q.size % r:
        raise ValueError(f"cannot restrict {q.size} cells by ratio {ratio}")
    return q.reshape(-1, r).mean(axis=1)


def l1_between_resolutions(x_coarse, q_coarse, q_fine, dx_coarse, window=None):
    """L1 distance between a coarse profile and a fine-grid reference on
    the same domain; the fine data are conservatively averaged down."""
    nc = np.asarray(q_coarse).size
    nf = np.asarray(q_fine).size
    if nf % nc:
        raise ValueError(f"fine resolution {nf} is not a multiple of {nc}")
    return l1_error(x_coarse, q_coarse, restrict(q_fine, nf // nc), dx_coarse, window)


def _crossing(v, level):
    # first index-space position where the nondecreasing profile
    # reaches `level`, linearly interpolated between cell centers
    k = int(np.argmax(v >= level))
    if k == 0:
        return 0.0
    return k - 1 + (level - v[k - 1]) / (v[k] - v[k - 1])


def contact_width(x, q, window, tol=0.1):
    """Number of cells spanned by the 10%-90% transition inside `window`.

    The window's end values set the levels; crossing positions are
    interpolated in index space on the running-max envelope of the
    profile and the span is rounded up, so an ideal single-cell jump
    measures 1 and a linear ramp over n cells measures ceil(0.8 n).
    The envelope makes the measurement immune to the small wiggles a
    scheme leaves near a transition, but a profile dipping below its
    envelope by more than `tol` of the span is rejected — the window
    does not isolate one monotone transition.
    """
    x = np.asarray(x, dtype=float)
    q = np.asarray(q, dtype=float)
    w = q[_window_mask(x, window)]
    if w.size < 2:
        raise ValueError("window holds fewer than two cells")
    span = w[-1] - w[0]
    if span == 0.0:
        raise NonMonotoneWindow("windowed profile is flat")
    v = w if span > 0 else -w  # orient increasing
    env = np.maximum.accumulate(v)
    dip = float((env - v).max())
    if dip > tol * abs(span):
        raise NonMonotoneWindow(
            f"profile reverses by {dip:.3g}, more than {tol:g} of its "
            f"{abs(span):.3g} span"
        )
    lo = v[0] + 0.1 * abs(span)
    hi = v[0] + 0.9 * abs(span)
    return int(math.ceil(_crossing(env, hi) - _crossing(env, lo)))


def convergence_orders(sizes, errors):
    """Observed orders log(e_k / e_{k+1}) / log(n_{k+1} / n_k)."""
    n = np.asarray(sizes, dtype=float)
    e = np.asarray(errors, dtype=float)
    if n.shape != e.shape or n.size < 2:
        raise ValueError("need matching sizes and errors, at least two of each")
    if (e <= 0).any():
        raise ValueError("errors must be positive to measure an order")
    return tuple(
        float(np.log(e[k] / e[k + 1]) / np.log(n[k + 1] / n[k]))
        for k in range(n.size - 1)
    )
