"""Figure rendering for snapshot files.

Three plot kinds cover the solver's output:

* :func:`plot_line` — overlaid density-versus-x curves from one or more
  one-dimensional snapshots sharing a domain, optionally restricted to a
  zoom window.
* :func:`plot_pcolor` — a pseudocolor density map of one
  two-dimensional snapshot.
* :func:`plot_flags` — the limiter-switch masks of one two-dimensional
  snapshot as binary images; directionally split indicators get one
  panel per sweep direction, isotropic indicators a single panel.

Every function saves the figure to ``out`` and returns the
:class:`matplotlib.figure.Figure` so callers (and tests) can inspect it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .reader import ParseError, Snapshot, read_snapshot

__all__ = ["PlotSpec", "plot_line", "plot_pcolor", "plot_flags", "render"]

_KINDS = ("line", "line-zoom", "pcolor", "flags")

_LINE_STYLES = ("-", "--", "-.", ":")


@dataclass(frozen=True)
class PlotSpec:
    """A complete description of one figure to render.

    ``kind`` selects the renderer: ``line`` and ``line-zoom`` overlay
    one-dimensional density profiles (``line-zoom`` additionally
    requires ``zoom``), ``pcolor`` draws a two-dimensional density map,
    and ``flags`` draws the limiter-switch masks.  ``inputs`` lists the
    snapshot files and ``out`` the image file to write.
    """

    kind: str
    inputs: tuple[str, ...]
    out: str
    zoom: tuple[float, float] | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown plot kind {self.kind!r}; choose from {', '.join(_KINDS)}")
        if not self.inputs:
            raise ValueError("at least one input snapshot is required")
        if self.kind == "line-zoom" and self.zoom is None:
            raise ValueError("line-zoom requires a zoom window")
        if self.kind in ("pcolor", "flags") and len(self.inputs) != 1:
            raise ValueError(f"{self.kind} takes exactly one input snapshot")
        if self.zoom is not None and not self.zoom[0] < self.zoom[1]:
            raise ValueError(f"zoom window must satisfy lo < hi, got {self.zoom}")


def _load(snapshots: Iterable[Snapshot | str | Path]) -> list[Snapshot]:
    loaded = []
    for item in snapshots:
        loaded.append(item if isinstance(item, Snapshot) else read_snapshot(item))
    return loaded


def _curve_label(snap: Snapshot) -> str:
    return snap.scheme.upper()


def plot_line(
    snapshots: Sequence[Snapshot | str | Path],
    out: str | Path,
    zoom: tuple[float, float] | None = None,
):
    """Overlay density profiles from one-dimensional snapshots.

    All snapshots must share the same spatial domain; a mismatch raises
    :class:`ParseError` naming the offending file.  With ``zoom`` the
    view is restricted to ``[lo, hi]`` in x.
    """
    snaps = _load(snapshots)
    if not snaps:
        raise ValueError("at least one snapshot is required")
    for snap in snaps:
        if snap.is_2d:
            raise ParseError(snap.path, None, "line plots require one-dimensional snapshots")

    first = snaps[0]
    for snap in snaps[1:]:
        if snap.nx != first.nx or not np.isclose(snap.dx, first.dx, rtol=1e-12, atol=0.0) \
                or not np.allclose(snap.data["x"][[0, -1]], first.data["x"][[0, -1]], rtol=1e-12, atol=1e-300):
            raise ParseError(
                snap.path, None,
                f"domain does not match {first.path} "
                f"(nx={snap.nx} vs {first.nx}, x range "
                f"[{snap.data['x'][0]:g}, {snap.data['x'][-1]:g}] vs "
                f"[{first.data['x'][0]:g}, {first.data['x'][-1]:g}])",
            )

    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for i, snap in enumerate(snaps):
        ax.plot(
            snap.data["x"],
            snap.data["rho"],
            _LINE_STYLES[i % len(_LINE_STYLES)],
            linewidth=1.2,
            label=_curve_label(snap),
        )
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.set_title(f"{first.problem}  t = {first.time:g}")
    if len(snaps) > 1:
        ax.legend()
    if zoom is not None:
        lo, hi = zoom
        ax.set_xlim(lo, hi)
        x = first.data["x"]
        inside = (x >= lo) & (x <= hi)
        if inside.any():
            stacked = np.concatenate([s.data["rho"][inside] for s in snaps])
            pad = 0.05 * (stacked.max() - stacked.min() or 1.0)
            ax.set_ylim(stacked.min() - pad, stacked.max() + pad)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    return fig


def _mesh_edges(centers: np.ndarray, spacing: float) -> np.ndarray:
    return np.concatenate([centers - 0.5 * spacing, [centers[-1] + 0.5 * spacing]])


def _panel_height(width: float, snap: Snapshot) -> float:
    aspect = snap.ny * snap.dy / (snap.nx * snap.dx)
    return min(max(width * aspect, 2.5), 10.0)


def plot_pcolor(snapshot: Snapshot | str | Path, out: str | Path):
    """Draw the density field of a two-dimensional snapshot."""
    (snap,) = _load([snapshot])
    if not snap.is_2d:
        raise ParseError(snap.path, None, "pcolor plots require a two-dimensional snapshot")

    rho = snap.field2d("rho")
    x = snap.field2d("x")[:, 0]
    y = snap.field2d("y")[0, :]
    fig, ax = plt.subplots(figsize=(6.0, _panel_height(6.0, snap)))
    mesh = ax.pcolormesh(_mesh_edges(x, snap.dx), _mesh_edges(y, snap.dy), rho.T, shading="flat")
    ax.set_aspect("equal")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"{snap.problem}  {snap.scheme.upper()}  t = {snap.time:g}")
    fig.colorbar(mesh, ax=ax, shrink=0.85)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    return fig


def plot_flags(snapshot: Snapshot | str | Path, out: str | Path):
    """Draw limiter-switch masks of a two-dimensional snapshot.

    When the x- and y-sweep masks differ anywhere the figure gets one
    panel per direction; identical masks (an isotropic indicator) are
    drawn as a single panel.  An all-false mask renders as a blank
    panel.
    """
    (snap,) = _load([snapshot])
    if not snap.is_2d:
        raise ParseError(snap.path, None, "flag plots require a two-dimensional snapshot")

    flag_x = snap.field2d("flag_x")
    flag_y = snap.field2d("flag_y")
    directional = bool(np.any(flag_x != flag_y))
    masks = [(flag_x, "flagged cells (x sweep)"), (flag_y, "flagged cells (y sweep)")] if directional \
        else [(flag_x, "flagged cells")]

    x = snap.field2d("x")[:, 0]
    y = snap.field2d("y")[0, :]
    extent = (x[0] - 0.5 * snap.dx, x[-1] + 0.5 * snap.dx, y[0] - 0.5 * snap.dy, y[-1] + 0.5 * snap.dy)
    fig, axes = plt.subplots(
        1, len(masks), figsize=(5.0 * len(masks), _panel_height(5.0, snap)), squeeze=False
    )
    for ax, (mask, title) in zip(axes[0], masks):
        ax.imshow(
            mask.T,
            origin="lower",
            extent=extent,
            cmap="Greys",
            vmin=0.0,
            vmax=1.0,
            interpolation="nearest",
            aspect="equal",
        )
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_title(title)
    fig.suptitle(f"{snap.problem}  {snap.scheme.upper()}  t = {snap.time:g}")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    return fig


def render(spec: PlotSpec):
    """Render one :class:`PlotSpec` and return the figure."""
    if spec.kind in ("line", "line-zoom"):
        return plot_line(spec.inputs, spec.out, zoom=spec.zoom)
    if spec.kind == "pcolor":
        return plot_pcolor(spec.inputs[0], spec.out)
    return plot_flags(spec.inputs[0], spec.out)
