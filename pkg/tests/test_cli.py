import json

import numpy as np
import pytest

from cadmia import io
from cadmia.cli import main, parse_levels
from cadmia.config import bundled_config


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def manifest(path):
    return json.loads((path / "manifest.json").read_text())


def test_nondim(capsys):
    code, out, _ = run(capsys, "nondim", "--config", "bundled:bct")
    assert code == 0
    d = json.loads(out)
    assert d["nu"] == 0.25 and abs(d["mu"] - 153.37) < 0.01 and abs(d["xi"] - 3713.2) < 0.1


def test_simulate_artifacts(tmp_path, capsys):
    out = tmp_path / "run"
    code, _, _ = run(capsys, "simulate", "--config", "bundled:bct", "--dz", "1/40",
                     "--out", str(out), "--psi", "0.9,0.5")
    assert code == 0
    m = manifest(out)
    assert set(m["artifacts"]) == {"field.csv", "cumulative.csv", "front_psi0.9.csv",
                                   "front_psi0.5.csv", "front_fits.csv"}
    for name, digest in m["artifacts"].items():
        assert io.sha256_file(out / name) == digest
    assert m["grid"]["nz"] == 40 and m["scheme"] == "PC"
    data = np.loadtxt(out / "field.csv", delimiter=",", skiprows=1)
    c = data[:, 2].reshape(41, 41)
    assert np.all(np.diff(c, axis=0) <= 0) and np.all(c > 0)
    assert np.all(data[:, 2] + data[:, 3] == 1.0)


def test_simulate_reproducible(tmp_path, capsys):
    for d in ("a", "b"):
        assert run(capsys, "simulate", "--config", "bundled:uvt", "--dz", "1/20",
                   "--out", str(tmp_path / d))[0] == 0
    assert manifest(tmp_path / "a")["artifacts"] == manifest(tmp_path / "b")["artifacts"]


def test_xi_zero_override(tmp_path, capsys):
    cfg = bundled_config("bct")
    cfg["irradiance"] = "bundled:bct_irradiance.csv"
    cfg["override_xi"] = 0
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    out = tmp_path / "o"
    assert run(capsys, "simulate", "--config", str(p), "--dz", "1/10", "--out", str(out))[0] == 0
    data = np.loadtxt(out / "field.csv", delimiter=",", skiprows=1)
    assert np.all(data[:, 2] == 1.0)
    _, rows = io.read_table(out / "cumulative.csv")
    assert all(float(r[1]) == pytest.approx(1.1, rel=1e-15) for r in rows)


def test_wpt_sheet_dump(tmp_path, capsys):
    out = tmp_path / "o"
    assert run(capsys, "simulate", "--config", "bundled:wpt_sheet", "--dz", "1/100",
               "--out", str(out), "--dump", "binary")[0] == 0
    c = io.read_field_binary(out / "field.bin")
    z = np.arange(101) / 100
    assert np.all(c[:, z > 3e-4 / 7e-3] == 1.0)
    assert np.all(c[-1, z <= 3e-4 / 7e-3] < 1.0)


def test_front_command(tmp_path, capsys):
    out = tmp_path / "o"
    assert run(capsys, "front", "--config", "bundled:bct", "--dz", "1/50", "--out", str(out),
               "--psi", "0.8")[0] == 0
    hdr, rows = io.read_table(out / "front_fits.csv")
    assert hdr == ["psi", "a", "b", "mean_fit_error"] and len(rows) == 1
    assert set(manifest(out)["artifacts"]) == {"front_psi0.8.csv", "front_fits.csv"}


def test_convergence(tmp_path, capsys):
    out = tmp_path / "o"
    assert run(capsys, "convergence", "--levels", "2:4", "--ref-level", "6",
               "--out", str(out))[0] == 0
    hdr, rows = io.read_table(out / "convergence.csv")
    assert hdr == ["step", "E_P", "E_C", "rho_P", "rho_C"]
    assert len(rows) == 3 and rows[0][3:] == ["", ""]
    assert 1.8 < float(rows[2][4]) < 2.2
    assert (out / "work_precision.csv").exists()


def test_convergence_single_level(tmp_path, capsys):
    out = tmp_path / "o"
    assert run(capsys, "convergence", "--levels", "3", "--ref-level", "5",
               "--out", str(out))[0] == 0
    _, rows = io.read_table(out / "convergence.csv")
    assert len(rows) == 1 and rows[0][3:] == ["", ""]


def test_convergence_bad_reference(tmp_path, capsys):
    code, _, err = run(capsys, "convergence", "--levels", "3:5", "--ref-level", "5",
                       "--out", str(tmp_path / "o"))
    assert code == 2 and json.loads(err)["error"] == "GridError"
    assert not (tmp_path / "o").exists()


def test_sensitivity_oat(tmp_path, capsys):
    out = tmp_path / "o"
    assert run(capsys, "sensitivity", "oat", "--dz", "1/10", "--out", str(out))[0] == 0
    hdr, rows = io.read_table(out / "sensitivity_oat.csv")
    assert hdr == ["param", "delta", "C", "dC"] and len(rows) == 61


def test_sensitivity_sweep_resume(tmp_path, capsys):
    out = tmp_path / "o"
    assert run(capsys, "sensitivity", "sweep", "--dz", "1/4", "--jobs", "2",
               "--out", str(out))[0] == 0
    path = out / "sweep_cube.csv"
    lines = path.read_text().splitlines()
    assert len(lines) == 8001
    path.write_text("\n".join(lines[:4001]) + "\n")
    assert run(capsys, "sensitivity", "sweep", "--dz", "1/4", "--jobs", "1",
               "--out", str(out))[0] == 0
    assert path.read_text().splitlines() == lines


@pytest.mark.parametrize("argv,code,kind", [
    (["simulate", "--config", "bundled:bct", "--dz", "0.3"], 2, "GridError"),
    (["simulate", "--config", "bundled:nothing"], 2, "ConfigError"),
    (["simulate", "--config", "bundled:bct", "--dz", "1/30000"], 4, "CapacityError"),
    (["simulate", "--config", "bundled:bct", "--psi", "1.5"], 2, "UsageError"),
    (["nondim"], 2, "UsageError"),
])
def test_errors(tmp_path, capsys, argv, code, kind):
    c, _, err = run(capsys, *argv, "--out", str(tmp_path / "o"))
    assert c == code
    assert json.loads(err)["error"] == kind
    assert not (tmp_path / "o").exists()


def test_fixture_error(tmp_path, capsys):
    cfg = bundled_config("bct")
    bad = tmp_path / "refl.csv"
    io.write_curve_csv(bad, [(380, 0.5), (512.331, 1.5)], "reflectance", "1")
    cfg["reflectance"] = str(bad)
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    c, _, err = run(capsys, "nondim", "--config", str(p))
    assert c == 3 and json.loads(err)["error"] == "FixtureError"


def test_unknown_key_exit(tmp_path, capsys):
    cfg = bundled_config("bct")
    cfg["xi_override"] = 0
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps(cfg))
    assert run(capsys, "nondim", "--config", str(p))[0] == 2


def test_bad_usage(capsys):
    assert main(["frobnicate"]) == 2


def test_parse_levels():
    assert parse_levels("3:6") == [3, 4, 5, 6]
    assert parse_levels("3,5") == [3, 5]
