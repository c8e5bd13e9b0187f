import numpy as np
import pytest

from ldcu.cli import load_config, main
from ldcu.problems import build, smooth_advect_density
from ldcu.snapshot import read_snapshot, write_snapshot
from ldcu.stepper import Grid1D, Snapshot


# -- snapshot files ------------------------------------------------------

def _run_and_write(tmp_path, name, nx, t_final, scheme="ldcu"):
    solver = build(name, nx=nx, scheme=scheme)
    snap = solver.run(t_final)[-1]
    path = tmp_path / f"{name}-{nx}-t{t_final:g}.csv"
    write_snapshot(path, name, scheme, snap, solver.grid, solver.gas)
    return solver, snap, path


def test_snapshot_roundtrip_1d(tmp_path):
    solver, snap, path = _run_and_write(tmp_path, "sod", 32, 0.02, scheme="a-mm")
    out = read_snapshot(path)
    assert out.meta["problem"] == "sod"
    assert out.meta["scheme"] == "a-mm"
    assert out.meta["time"] == snap.time
    assert out.meta["nx"] == 32 and out.meta["ny"] == 1
    assert out.meta["dx"] == solver.grid.dx and out.meta["dy"] == 0.0
    assert out.meta["gamma"] == solver.gas.gamma
    assert out.columns == ("x", "rho", "u", "p", "E", "flag")
    # 17-digit output round-trips doubles exactly
    assert np.array_equal(out.data["x"], solver.grid.centers())
    assert np.array_equal(out.data["rho"], snap.U[0])
    assert np.array_equal(out.data["E"], snap.U[2])
    u = snap.U[1] / snap.U[0]
    assert np.array_equal(out.data["u"], u)
    g1 = solver.gas.gamma - 1.0
    p = g1 * (snap.U[2] - 0.5 * snap.U[0] * u * u)
    assert np.array_equal(out.data["p"], p)
    assert out.data["flag"].dtype == bool
    assert np.array_equal(out.data["flag"], snap.flags[0])


def test_snapshot_roundtrip_2d(tmp_path):
    solver = build("implosion", nx=12)
    solver.step(solver.cfl_dt())
    snap = Snapshot(solver.t, solver.U.copy(),
                    tuple(f.copy() for f in solver.last_flags))
    path = tmp_path / "imp.csv"
    write_snapshot(path, "implosion", "ldcu", snap, solver.grid, solver.gas)
    out = read_snapshot(path)
    assert out.is_2d
    assert out.meta["nx"] == 12 and out.meta["ny"] == 12
    assert out.columns == ("x", "y", "rho", "u", "v", "p", "E", "flag_x", "flag_y")
    assert np.array_equal(out.field2d("rho"), snap.U[0])
    assert np.array_equal(out.field2d("E"), snap.U[3])
    # rows run x outer, y inner
    x = solver.grid.xcenters()
    y = solver.grid.ycenters()
    assert np.array_equal(out.data["x"][: y.size], np.full(y.size, x[0]))
    assert np.array_equal(out.data["y"][: y.size], y)


def test_snapshot_header_layout(tmp_path):
    _, _, path = _run_and_write(tmp_path, "sod", 16, 0.01)
    lines = path.read_text().splitlines()
    keys = [ln.split("=")[0] for ln in lines[:9]]
    assert keys == ["# problem", "# scheme", "# time", "# nx", "# ny",
                    "# dx", "# dy", "# gamma", "# columns"]
    assert not lines[9].startswith("#")
    assert len(lines) == 9 + 16


def test_read_snapshot_validates(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("# problem=x\n# columns=x,rho\n0,1\n")
    with pytest.raises(ValueError, match="missing"):
        read_snapshot(p)
    _, _, good = _run_and_write(tmp_path, "sod", 16, 0.01)
    lines = good.read_text().splitlines()
    (tmp_path / "short.csv").write_text("\n".join(lines[:-2]) + "\n")
    with pytest.raises(ValueError, match="rows"):
        read_snapshot(tmp_path / "short.csv")


# -- run subcommand ------------------------------------------------------

def test_cli_run_writes_snapshot_and_manifest(tmp_path, capsys):
    rc = main(["run", "--problem", "sod", "--nx", "32", "--t-final", "0.02",
               "--out", str(tmp_path)])
    assert rc == 0
    printed = capsys.readouterr().out.splitlines()
    csv = tmp_path / "sod-ldcu-t0.02.csv"
    manifest = tmp_path / "sod-ldcu-manifest.txt"
    assert csv.exists() and manifest.exists()
    assert str(csv) in printed and str(manifest) in printed
    out = read_snapshot(csv)
    assert out.meta["nx"] == 32
    assert out.meta["time"] == pytest.approx(0.02, abs=0)
    m = load_config(manifest)
    assert m["problem"] == "sod"
    assert m["scheme"] == "ldcu"
    assert float(m["gamma"]) == 1.4
    assert float(m["cfl"]) == 0.4
    assert float(m["wlr-threshold"]) == 1.0
    assert float(m["theta-rough"]) == 2.0
    assert float(m["tau-rough"]) == -0.25
    assert float(m["tau-smooth"]) == 0.5
    assert int(m["steps"]) > 0
    assert int(m["floored-evaluations"]) == 0
    assert m["strict"] == "on"
    assert m["files"] == "sod-ldcu-t0.02.csv"


def test_cli_config_file_with_overrides(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# small smoke run\n"
        "problem=sod\n"
        "scheme=a-mm\n"
        "nx=24\n"
        "t-final=0.01\n"
        f"out={tmp_path}\n"
    )
    rc = main(["run", "--config", str(cfg), "--nx", "48"])
    assert rc == 0
    out = read_snapshot(tmp_path / "sod-a-mm-t0.01.csv")
    assert out.meta["nx"] == 48  # flag beats config
    assert out.meta["scheme"] == "a-mm"


def test_cli_run_snapshot_list_and_prefix(tmp_path):
    rc = main(["run", "--problem", "sod", "--nx", "24", "--t-final", "0.02",
               "--snapshots", "0.01,0.02", "--prefix", "probe",
               "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "probe-t0.01.csv").exists()
    assert (tmp_path / "probe-t0.02.csv").exists()
    m = load_config(tmp_path / "probe-manifest.txt")
    assert m["files"] == "probe-t0.01.csv,probe-t0.02.csv"


def test_cli_run_drops_snapshots_past_t_final(tmp_path, capsys):
    rc = main(["run", "--problem", "sod", "--nx", "24", "--t-final", "0.01",
               "--snapshots", "0.005,0.5", "--out", str(tmp_path)])
    assert rc == 0
    err = capsys.readouterr().err
    assert "dropping snapshot" in err
    assert (tmp_path / "sod-ldcu-t0.005.csv").exists()
    assert not (tmp_path / "sod-ldcu-t0.5.csv").exists()


def test_cli_errors_exit_nonzero(tmp_path, capsys):
    rc = main(["run", "--problem", "sod", "--cfl", "7", "--out", str(tmp_path)])
    assert rc == 1
    assert "error:" in capsys.readouterr().err
    rc = main(["run", "--out", str(tmp_path)])
    assert rc == 1
    assert "no problem selected" in capsys.readouterr().err


def test_cli_rejects_unknown_config_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("problem=sod\nxn=40\n")
    rc = main(["run", "--config", str(cfg)])
    assert rc == 1
    assert "unknown option 'xn'" in capsys.readouterr().err


# -- measurement subcommands ---------------------------------------------

def test_cli_l1_against_exact(tmp_path, capsys):
    solver = build("smooth-advect", nx=96)
    snap = solver.run(0.05)[-1]
    path = tmp_path / "adv.csv"
    write_snapshot(path, "smooth-advect", "ldcu", snap, solver.grid, solver.gas)
    rc = main(["l1", str(path), "--exact", "smooth-advect", "--window", "0,1"])
    assert rc == 0
    err = float(capsys.readouterr().out)
    x = solver.grid.centers()
    m = (x >= 0) & (x <= 1)
    expect = solver.grid.dx * np.abs(
        snap.U[0] - smooth_advect_density(x, snap.time)
    )[m].sum()
    assert err == pytest.approx(expect, rel=1e-12)
    assert 0 < err < 1e-2


def test_cli_l1_between_files(tmp_path, capsys):
    _, _, coarse = _run_and_write(tmp_path, "sod", 32, 0.05)
    solver = build("sod", nx=64)
    snap = solver.run(0.05)[-1]
    fine = tmp_path / "sod64.csv"
    write_snapshot(fine, "sod", "ldcu", snap, solver.grid, solver.gas)
    rc = main(["l1", str(coarse), str(fine)])
    assert rc == 0
    assert float(capsys.readouterr().out) > 0

    # mismatched times are refused
    _, _, other = _run_and_write(tmp_path, "sod", 64, 0.03)
    rc = main(["l1", str(coarse), str(other)])
    assert rc == 1
    assert "times differ" in capsys.readouterr().err

    rc = main(["l1", str(coarse), str(fine), "--exact", "smooth-advect"])
    assert rc == 1
    assert "exactly one reference" in capsys.readouterr().err


def _write_profile(tmp_path, rho, name="prof.csv"):
    n = rho.size
    grid = Grid1D(0.0, float(n), n)
    U = np.stack([rho, np.zeros(n), np.full(n, 2.5)])
    snap = Snapshot(0.0, U, (np.zeros(n, dtype=bool),))
    path = tmp_path / name
    from ldcu.euler import GasModel

    write_snapshot(path, "synthetic", "ldcu", snap, grid, GasModel())
    return path


def test_cli_contact_width(tmp_path, capsys):
    rho = np.where(np.arange(40) < 20, 1.0, 3.0)
    path = _write_profile(tmp_path, rho)
    rc = main(["contact-width", str(path), "--window", "10,30"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "1"

    ramp = np.concatenate([np.ones(15), 1 + np.linspace(0, 1, 11), 2 * np.ones(15)])
    path = _write_profile(tmp_path, ramp, "ramp.csv")
    rc = main(["contact-width", str(path), "--window", "0,41"])
    assert rc == 0
    assert capsys.readouterr().out.strip() == "8"

    bump = np.ones(40)
    bump[20] = 2.0
    path = _write_profile(tmp_path, bump, "bump.csv")
    rc = main(["contact-width", str(path), "--window", "0,40"])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_cli_convergence_table(capsys):
    rc = main(["convergence", "--problem", "smooth-advect", "--scheme", "ldcu",
               "--sizes", "64,128", "--window", "0,1", "--t-final", "0.05"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["nx", "l1(rho)", "order"]
    assert len(lines) == 3
    order = float(lines[2].split()[-1])
    assert order > 1.3
