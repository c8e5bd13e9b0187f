"""Command-line interface for rendering snapshot figures.

Subcommands mirror the plot kinds: ``line`` overlays one-dimensional
density profiles, ``pcolor`` draws a two-dimensional density map, and
``flags`` draws limiter-switch masks.  ``render`` reads a complete plot
description from a flat ``key=value`` config file (keys ``kind``,
``inputs``, ``out``, ``zoom``), with command-line flags overriding the
file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .figures import PlotSpec, render

__all__ = ["main", "load_config"]


def _window(text: str) -> tuple[float, float]:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 2:
        raise ValueError(f"expected two numbers 'lo,hi', got {text!r}")
    lo, hi = float(parts[0]), float(parts[1])
    return lo, hi


def load_config(path: str | Path) -> dict[str, str]:
    """Read a flat ``key=value`` config file (blank lines and ``#`` comments skipped)."""
    options: dict[str, str] = {}
    for number, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{number}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        options[key.strip()] = value.strip()
    return options


def _spec_from_config(options: dict[str, str], args: argparse.Namespace) -> PlotSpec:
    known = {"kind", "inputs", "out", "zoom"}
    unknown = set(options) - known
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")

    kind = args.kind or options.get("kind")
    out = args.out or options.get("out")
    inputs = tuple(args.inputs) if args.inputs else tuple(
        p for p in options.get("inputs", "").replace(",", " ").split() if p
    )
    zoom_text = args.zoom if args.zoom is not None else options.get("zoom")
    if kind is None:
        raise ValueError("no plot kind given (config key 'kind' or --kind)")
    if out is None:
        raise ValueError("no output path given (config key 'out' or --out)")
    if not inputs:
        raise ValueError("no input snapshots given (config key 'inputs' or positional arguments)")
    zoom = _window(zoom_text) if zoom_text else None
    return PlotSpec(kind=kind, inputs=inputs, out=out, zoom=zoom)


def _cmd_line(args: argparse.Namespace) -> int:
    zoom = _window(args.zoom) if args.zoom else None
    kind = "line-zoom" if zoom is not None else "line"
    spec = PlotSpec(kind=kind, inputs=tuple(args.inputs), out=args.out, zoom=zoom)
    render(spec)
    print(spec.out)
    return 0


def _cmd_single(args: argparse.Namespace, kind: str) -> int:
    spec = PlotSpec(kind=kind, inputs=(args.input,), out=args.out)
    render(spec)
    print(spec.out)
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    options = load_config(args.config) if args.config else {}
    spec = _spec_from_config(options, args)
    render(spec)
    print(spec.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ldcu-plots",
        description="Render figures from solver snapshot CSV files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    line = sub.add_parser("line", help="overlay density profiles from 1-D snapshots")
    line.add_argument("inputs", nargs="+", metavar="SNAPSHOT", help="snapshot CSV files to overlay")
    line.add_argument("--out", required=True, help="image file to write")
    line.add_argument("--zoom", help="restrict the view to 'lo,hi' in x")
    line.set_defaults(func=_cmd_line)

    pcolor = sub.add_parser("pcolor", help="density map of a 2-D snapshot")
    pcolor.add_argument("input", metavar="SNAPSHOT", help="snapshot CSV file")
    pcolor.add_argument("--out", required=True, help="image file to write")
    pcolor.set_defaults(func=lambda args: _cmd_single(args, "pcolor"))

    flags = sub.add_parser("flags", help="limiter-switch masks of a 2-D snapshot")
    flags.add_argument("input", metavar="SNAPSHOT", help="snapshot CSV file")
    flags.add_argument("--out", required=True, help="image file to write")
    flags.set_defaults(func=lambda args: _cmd_single(args, "flags"))

    rend = sub.add_parser("render", help="render a plot described by a key=value config file")
    rend.add_argument("--config", help="flat key=value plot description")
    rend.add_argument("--kind", choices=["line", "line-zoom", "pcolor", "flags"],
                      help="override the config plot kind")
    rend.add_argument("--out", help="override the config output path")
    rend.add_argument("--zoom", help="override the config zoom window 'lo,hi'")
    rend.add_argument("inputs", nargs="*", metavar="SNAPSHOT",
                      help="override the config input snapshots")
    rend.set_defaults(func=_cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # argparse handles its own usage errors
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
