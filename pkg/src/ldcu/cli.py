"""Command-line front end.

Subcommands: ``run`` advances a catalog problem and writes snapshot CSV
files plus a manifest of every tunable; ``l1`` and ``contact-width``
measure existing snapshot files; ``convergence`` runs a resolution
sweep against an exact solution.

``run`` options can come from a flat ``key=value`` config file
(``--config``); explicit command-line flags win over the file, which
wins over built-in defaults.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import problems
from .analysis import (
    contact_width,
    convergence_orders,
    l1_between_resolutions,
    l1_error,
)
from .snapshot import read_snapshot, write_snapshot

# problems with a closed-form solution usable as an error reference:
# name -> callable (x, t) -> density
EXACT_DENSITY = {"smooth-advect": problems.smooth_advect_density}


def _bool(raw):
    s = str(raw).strip().lower()
    if s in ("1", "true", "on", "yes"):
        return True
    if s in ("0", "false", "off", "no"):
        return False
    raise ValueError(f"expected on/off, got {raw!r}")


def _floats(raw):
    return tuple(float(tok) for tok in str(raw).split(",") if tok.strip())


def _window(raw):
    if raw is None:
        return None
    vals = _floats(raw)
    if len(vals) != 2:
        raise ValueError(f"window needs two numbers lo,hi, got {raw!r}")
    return vals


def load_config(path):
    """Flat key=value file; blank lines and '#' comments are skipped."""
    opts = {}
    with open(path) as f:
        for num, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{num}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            opts[key.strip()] = value.strip()
    return opts


_RUN_OPTS = {
    "problem": str,
    "scheme": str,
    "nx": int,
    "ny": int,
    "t-final": float,
    "snapshots": _floats,
    "wlr-threshold": float,
    "wlr-values": str,
    "mm-delta": float,
    "cfl": float,
    "q2d": str,
    "dt-rule": str,
    "strict": _bool,
    "first-order": _bool,
    "symmetry": str,
    "out": str,
    "prefix": str,
}

# strict has no entry here: its default is per-problem
_RUN_DEFAULTS = {
    "scheme": "ldcu",
    "wlr-values": "minus",
    "mm-delta": 1e-4,
    "cfl": 0.4,
    "q2d": "analog",
    "dt-rule": "min",
    "first-order": False,
    "symmetry": "auto",
    "out": ".",
}


def _merged_run_options(args):
    opts = dict(_RUN_DEFAULTS)
    if args.config is not None:
        for key, raw in load_config(args.config).items():
            if key not in _RUN_OPTS:
                raise ValueError(f"{args.config}: unknown option {key!r}")
            opts[key] = _RUN_OPTS[key](raw)
    for key, convert in _RUN_OPTS.items():
        val = getattr(args, key.replace("-", "_"))
        if val is not None:
            opts[key] = convert(val)
    if "problem" not in opts:
        raise ValueError("no problem selected; pass --problem or a config file")
    return opts


def _fmt(value):
    if isinstance(value, bool):
        return "on" if value else "off"
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _write_manifest(path, solver, opts, t_final, snaps, files):
    g = solver.grid
    rows = [
        ("problem", opts["problem"]),
        ("scheme", solver.scheme),
        ("nx", g.nx),
        ("ny", g.ny if solver.dim == 2 else 1),
        ("dx", g.dx),
        ("dy", g.dy if solver.dim == 2 else 0.0),
        ("gamma", solver.gas.gamma),
        ("cfl", solver.cfl),
        ("dt-rule", solver.dt_rule),
        ("q2d", solver.q2d),
        ("strict", solver.strict),
        ("first-order", solver.first_order),
        ("mm-delta", solver.mm.delta),
        ("wlr-threshold", solver.wlr.threshold),
        ("wlr-values", solver.wlr.values),
        ("theta-rough", solver.rough.theta),
        ("tau-rough", solver.rough.tau),
        ("theta-smooth", solver.smooth.theta),
        ("tau-smooth", solver.smooth.tau),
        ("gravity", solver.gravity),
        ("symmetry", solver.symmetry or "off"),
        ("pressure-floor", solver.floor),
        ("t-final", t_final),
        ("snapshots", ",".join(_fmt(t) for t in snaps)),
        ("steps", solver.stats.steps),
        ("floored-evaluations", solver.stats.floored),
        ("star-state-fallbacks", solver.stats.star_nonpositive),
        ("files", ",".join(os.path.basename(f) for f in files)),
    ]
    with open(path, "w") as f:
        for key, value in rows:
            f.write(f"{key}={_fmt(value)}\n")
    return path


def _cmd_run(args):
    opts = _merged_run_options(args)
    spec = problems.get_problem(opts["problem"])
    solver = problems.build(
        opts["problem"],
        nx=opts.get("nx"),
        ny=opts.get("ny"),
        scheme=opts["scheme"],
        wlr_threshold=opts.get("wlr-threshold"),
        wlr_values=opts["wlr-values"],
        mm_delta=opts["mm-delta"],
        cfl=opts["cfl"],
        q2d=opts["q2d"],
        dt_rule=opts["dt-rule"],
        strict=opts.get("strict"),
        first_order=opts["first-order"],
        symmetry=opts["symmetry"],
    )
    t_final = opts.get("t-final", spec.t_final)
    requested = opts.get("snapshots", spec.snapshot_times)
    tol = 1e-12 * max(1.0, abs(t_final))
    snaps = tuple(t for t in requested if t <= t_final + tol)
    for t in requested:
        if t > t_final + tol:
            print(f"note: dropping snapshot t={t:g} past t-final={t_final:g}",
                  file=sys.stderr)
    results = solver.run(t_final, snaps)
    os.makedirs(opts["out"], exist_ok=True)
    prefix = opts.get("prefix", f"{opts['problem']}-{opts['scheme']}")
    files = []
    for snap in results:
        name = f"{prefix}-t{snap.time:.6g}.csv"
        path = os.path.join(opts["out"], name)
        write_snapshot(path, opts["problem"], solver.scheme, snap, solver.grid,
                       solver.gas)
        files.append(path)
    manifest = _write_manifest(
        os.path.join(opts["out"], f"{prefix}-manifest.txt"),
        solver, opts, t_final, [s.time for s in results], files,
    )
    for path in files + [manifest]:
        print(path)
    return 0


def _require_1d(snap, path):
    if snap.meta["ny"] > 1:
        raise ValueError(f"{path}: profile measurements need a 1-D snapshot")


def _cmd_l1(args):
    if (args.reference is None) == (args.exact is None):
        raise ValueError("give exactly one reference: a snapshot file or --exact")
    window = _window(args.window)
    coarse = read_snapshot(args.snapshot)
    _require_1d(coarse, args.snapshot)
    x = coarse.data["x"]
    q = coarse.data[args.field]
    if args.exact is not None:
        if args.exact not in EXACT_DENSITY:
            known = ", ".join(EXACT_DENSITY)
            raise ValueError(f"no exact solution for {args.exact!r} (have: {known})")
        if args.field != "rho":
            raise ValueError("exact references cover the density field only")
        f = EXACT_DENSITY[args.exact]
        t = coarse.meta["time"]
        err = l1_error(x, q, lambda xs: f(xs, t), coarse.meta["dx"], window)
    else:
        fine = read_snapshot(args.reference)
        _require_1d(fine, args.reference)
        dt = abs(fine.meta["time"] - coarse.meta["time"])
        if dt > 1e-9 * max(1.0, abs(coarse.meta["time"])):
            raise ValueError(
                f"snapshot times differ: {coarse.meta['time']} vs {fine.meta['time']}"
            )
        ext_c = coarse.meta["nx"] * coarse.meta["dx"]
        ext_f = fine.meta["nx"] * fine.meta["dx"]
        if abs(ext_c - ext_f) > 1e-9 * ext_c:
            raise ValueError("snapshots cover different domains")
        err = l1_between_resolutions(x, q, fine.data[args.field],
                                     coarse.meta["dx"], window)
    print("%.17g" % err)
    return 0


def _cmd_contact_width(args):
    snap = read_snapshot(args.snapshot)
    _require_1d(snap, args.snapshot)
    width = contact_width(snap.data["x"], snap.data[args.field],
                          _window(args.window), tol=args.tol)
    print(width)
    return 0


def _cmd_convergence(args):
    if args.problem not in EXACT_DENSITY:
        known = ", ".join(EXACT_DENSITY)
        raise ValueError(f"no exact solution for {args.problem!r} (have: {known})")
    sizes = tuple(int(tok) for tok in args.sizes.split(",") if tok.strip())
    if len(sizes) < 2:
        raise ValueError("need at least two sizes, e.g. --sizes 100,200")
    window = _window(args.window)
    exact = EXACT_DENSITY[args.problem]
    errors = []
    for nx in sizes:
        solver = problems.build(args.problem, nx=nx, scheme=args.scheme,
                                cfl=args.cfl)
        t_final = args.t_final
        if t_final is None:
            t_final = problems.get_problem(args.problem).t_final
        solver.run(t_final)
        x = solver.grid.centers()
        err = l1_error(x, solver.U[0], lambda xs: exact(xs, solver.t),
                       solver.grid.dx, window)
        errors.append(err)
    orders = convergence_orders(sizes, errors)
    print(f"{'nx':>8}  {'l1(rho)':>13}  {'order':>6}")
    for k, (nx, err) in enumerate(zip(sizes, errors)):
        tail = f"{orders[k - 1]:6.3f}" if k else " " * 6
        print(f"{nx:>8}  {err:13.6e}  {tail}")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="ldcu",
        description="Adaptive central-upwind solver for the Euler equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="advance a catalog problem, write snapshots")
    run.add_argument("--config", help="key=value options file")
    run.add_argument("--problem", choices=problems.problem_names())
    run.add_argument("--scheme", choices=("ldcu", "a-mm", "a-wlr"))
    run.add_argument("--nx", type=int)
    run.add_argument("--ny", type=int)
    run.add_argument("--t-final", type=float)
    run.add_argument("--snapshots", help="comma-separated output times")
    run.add_argument("--wlr-threshold", type=float,
                     help="weak-residual flag threshold constant")
    run.add_argument("--wlr-values", choices=("minus", "plus", "avg"))
    run.add_argument("--mm-delta", type=float)
    run.add_argument("--cfl", type=float)
    run.add_argument("--q2d", choices=("analog", "zero"))
    run.add_argument("--dt-rule", choices=("min", "sum"))
    run.add_argument("--strict", metavar="on|off")
    run.add_argument("--first-order", metavar="on|off")
    run.add_argument("--symmetry",
                     choices=("auto", "off", "none", "diagonal", "mirror"))
    run.add_argument("--out", help="output directory")
    run.add_argument("--prefix", help="output file prefix")
    run.set_defaults(func=_cmd_run)

    l1 = sub.add_parser("l1", help="L1 distance between snapshots")
    l1.add_argument("snapshot", help="coarse snapshot CSV")
    l1.add_argument("reference", nargs="?", help="fine snapshot CSV")
    l1.add_argument("--exact", help="use a problem's exact solution instead")
    l1.add_argument("--field", default="rho")
    l1.add_argument("--window", help="restrict to lo,hi in x")
    l1.set_defaults(func=_cmd_l1)

    cw = sub.add_parser("contact-width",
                        help="cells spanned by a monotone transition")
    cw.add_argument("snapshot")
    cw.add_argument("--window", required=True, help="lo,hi in x")
    cw.add_argument("--field", default="rho")
    cw.add_argument("--tol", type=float, default=0.1,
                    help="largest tolerated reversal, as a fraction of the span")
    cw.set_defaults(func=_cmd_contact_width)

    conv = sub.add_parser("convergence", help="resolution sweep vs exact solution")
    conv.add_argument("--problem", default="smooth-advect")
    conv.add_argument("--scheme", default="ldcu",
                      choices=("ldcu", "a-mm", "a-wlr"))
    conv.add_argument("--sizes", required=True, help="comma-separated cell counts")
    conv.add_argument("--window", help="lo,hi in x")
    conv.add_argument("--cfl", type=float, default=0.4)
    conv.add_argument("--t-final", type=float)
    conv.set_defaults(func=_cmd_convergence)
    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # CLI boundary: report, don't trace
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
