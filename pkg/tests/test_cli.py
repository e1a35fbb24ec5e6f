import math
import subprocess
import sys

import numpy as np
import pytest

from exho import cli
from exho.dynamics import DensityField, count_peaks, read_table
from exho.verify import Check

GRID = ["--xmin", "-40", "--xmax", "40", "--nx", "8001"]


def run(*argv):
    return cli.main([str(a) for a in argv])


def test_parse_z():
    assert cli.parse_z("15,0") == 15
    assert cli.parse_z("-3,2.5") == complex(-3, 2.5)
    assert cli.parse_z("4") == 4
    with pytest.raises(Exception):
        cli.parse_z("1,2,3")


def test_density_ctilde_summary(tmp_path, capsys):
    out = tmp_path / "d.csv"
    assert run("density", "--ladder", "ctilde", "--mu", "-3", "--z", "15,0", "--t", math.pi / 24, *GRID,
               "--out", out) == 0
    line = capsys.readouterr().out
    assert "peaks_t0=3" in line and "norm_deficit=" in line
    f = DensityField.from_csv(out)
    assert len(count_peaks(f.values[:, 0], f.x)) == 3


def test_density_a_single_peak(tmp_path):
    out = tmp_path / "a.csv"
    assert run("density", "--ladder", "a", "--z", "15,0", "--t", 0, "--out", out) == 0
    table = read_table(out)
    x, rho = table["x"], table["rho"]
    peaks = count_peaks(rho, x)
    assert len(peaks) == 1 and x[peaks[0]] == pytest.approx(15.0, abs=0.02)


def test_density_lowest_weight_is_static(tmp_path):
    out = tmp_path / "c.csv"
    assert run("density", "--ladder", "c", "--mu", "-3", "--z", "0,0", "--t-samples", 4,
               "--xmin", -10, "--xmax", 10, "--nx", 201, "--out", out) == 0
    f = DensityField.from_csv(out)
    assert f.values.shape == (201, 4)
    np.testing.assert_allclose(f.values, f.values[:, :1].repeat(4, axis=1), atol=1e-14)


def test_density_writes_coefficients(tmp_path):
    out, coeffs = tmp_path / "d.csv", tmp_path / "k.csv"
    assert run("density", "--ladder", "c", "--mu", "1", "--z=-2,1", "--t", 0, "--nx", 101,
               "--out", out, "--coeffs-out", coeffs) == 0
    assert coeffs.read_text().startswith("k,nu,log_mag,phase\n")


def test_energy_curves(tmp_path):
    out = tmp_path / "e.csv"
    assert run("energy", "--nz", 16, "--out", out) == 0
    a = read_table(tmp_path / "e_a.csv")
    assert a["energy"][-1] == pytest.approx(231.0, rel=1e-10)
    ct = read_table(tmp_path / "e_ctilde-3.csv")
    c = read_table(tmp_path / "e_c-3.csv")
    assert ct["energy"][-1] == pytest.approx(675.0, rel=1e-10)
    assert c["energy"][-1] < 675.0
    assert np.all(np.diff(c["energy"]) >= 0)


def test_energy_single_ladder(tmp_path):
    out = tmp_path / "e.csv"
    assert run("energy", "--ladder", "ctilde", "--mu", "2", "--nz", 4, "--zmax", 3, "--out", out) == 0
    t = read_table(out)
    np.testing.assert_allclose(t["energy"], 10 + 3 * t["z_abs"] ** 2, rtol=1e-12)


def test_overlap_columns(tmp_path):
    out = tmp_path / "o.csv"
    assert run("overlap", "--ladder", "a", "--ladder", "c", "--mu", "-3", "--zmax", 3, "--nz", 4,
               "--out", out) == 0
    a = read_table(tmp_path / "o_a.csv")
    assert a["D"][0] == 1.0 and a["D"][-1] == pytest.approx(1.234e-4, rel=1e-3)
    c = read_table(tmp_path / "o_c-3.csv")
    assert (tmp_path / "o_c-3.csv").read_text().startswith("z_abs,D\n")
    assert c["D"][0] == 1.0 and np.all(np.abs(c["D"]) <= 1)


def test_cat_odd_nodal_trace(tmp_path):
    out = tmp_path / "cat.csv"
    assert run("cat", "--ladder", "c", "--mu", "-3", "--z", "15,0", "--parity", "odd", "--t-samples", 16,
               "--xmin", -20, "--xmax", 20, "--nx", 401, "--out", out) == 0
    trace = read_table(tmp_path / "cat_nodal.csv")
    assert trace["rho_at_0"].size == 16 and np.max(trace["rho_at_0"]) <= 1e-10


def test_cat_even_interferes_at_origin(tmp_path):
    out, nodal = tmp_path / "even.csv", tmp_path / "trace.csv"
    assert run("cat", "--ladder", "a", "--z", "15,0", "--parity", "even", "--t-samples", 64,
               "--xmin", -20, "--xmax", 20, "--nx", 401, "--out", out, "--nodal-out", nodal) == 0
    rho0 = read_table(nodal)["rho_at_0"]
    assert rho0.max() > 2 * rho0.min()


def test_cat_parities_differ(tmp_path):
    common = ["--ladder", "a", "--z", "2,0", "--t", 0.3, "--xmin", -8, "--xmax", 8, "--nx", 161]
    assert run("cat", *common, "--parity", "even", "--out", tmp_path / "e.csv") == 0
    assert run("cat", *common, "--parity", "odd", "--out", tmp_path / "o.csv") == 0
    assert not np.allclose(read_table(tmp_path / "e.csv")["rho"], read_table(tmp_path / "o.csv")["rho"])


@pytest.mark.parametrize("argv", [
    ["cat", "--ladder", "a", "--z", "0,0", "--parity", "odd", "--t", "0", "--nx", "11"],
    ["density", "--nx", "1"],
    ["density", "--xmin", "3", "--xmax", "-3"],
    ["density", "--ladder", "a", "--ladder", "c"],
    ["density", "--t-samples", "0"],
    ["energy", "--nz", "1"],
    ["density", "--kmax", "0"],
])
def test_config_errors_exit_2(tmp_path, argv):
    assert run(*argv, "--out", tmp_path / "x.csv") == 2


def test_missing_output_directory_exits_2(tmp_path):
    assert run("density", "--t", 0, "--nx", 11, "--out", tmp_path / "nope" / "d.csv") == 2


def test_truncation_cap_exits_3(tmp_path, capsys):
    assert run("density", "--ladder", "ctilde", "--mu", "-3", "--z", "15,0", "--t", 0, "--kmax", 50,
               "--out", tmp_path / "d.csv") == 3
    assert "50" in capsys.readouterr().err


def test_deterministic_output(tmp_path):
    args = ["density", "--ladder", "c", "--mu", "2", "--z", "3,1", "--t-samples", 3, "--nx", 301]
    assert run(*args, "--out", tmp_path / "1.csv") == 0
    assert run(*args, "--out", tmp_path / "2.csv") == 0
    assert (tmp_path / "1.csv").read_bytes() == (tmp_path / "2.csv").read_bytes()


def test_csv_round_trip_is_exact(tmp_path):
    out = tmp_path / "d.csv"
    assert run("density", "--ladder", "a", "--z", "1.5,0.5", "--t", 0.1, "--xmin", -5, "--xmax", 5,
               "--nx", 11, "--out", out) == 0
    f = DensityField.from_csv(out)
    out2 = tmp_path / "d2.csv"
    f.to_csv(out2)
    assert out.read_bytes() == out2.read_bytes()


def test_verify_passes(tmp_path, capsys):
    report = tmp_path / "report.csv"
    assert run("verify", "--out", report) == 0
    lines = report.read_text().splitlines()
    assert lines[0] == "check,measured,tolerance,status,note"
    assert all(",PASS," in line for line in lines[1:])
    assert any("winner=shifted" in line for line in lines)
    assert capsys.readouterr().out.count("PASS") == len(lines) - 1


def test_verify_failure_exits_1(monkeypatch):
    def failing(config, progress=None):
        check = Check("forced", 1.0, 0.0, False)
        if progress:
            progress(check)
        return [check]

    monkeypatch.setattr(cli, "run_checks", failing)
    assert run("verify") == 1


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "exho", "overlap", "--ladder", "a", "--nz", "2",
                           "--out", str(tmp_path / "o.csv")], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "o.csv").exists()
