import json

import pytest

from tau34.cli import main, parse_grid


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParsing:
    def test_grid_linear(self):
        axes = parse_grid("0:1:3")
        assert axes == [[0.0, 0.5, 1.0]]

    def test_grid_log(self):
        axes = parse_grid("1:100:3:log")
        assert axes[0] == pytest.approx([1.0, 10.0, 100.0])

    def test_grid_multi_axis(self):
        axes = parse_grid("0:1:2,5:5:1")
        assert axes == [[0.0, 1.0], [5.0]]

    def test_grid_errors(self):
        from tau34.cli import ConfigError
        for bad in ("0:1:0", "0:1", "a:b:c", "1:2:3:cubic", "-1:1:3:log"):
            with pytest.raises(ConfigError):
                parse_grid(bad)


class TestSigma:
    def test_point_row(self, capsys):
        code, out, _ = run(capsys, "sigma", "--eta", "1", "--mu", "0",
                           "--nu", "0")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "eta,mu,nu,sigma,margin,in_D"
        assert lines[1] == "1,0,0,2.5,3.125,true"

    def test_boundary_row_exit_zero(self, capsys):
        code, out, _ = run(capsys, "sigma", "--eta", "1", "--nu",
                           "1.1574074074074074")
        assert code == 0
        assert out.strip().splitlines()[1].endswith("false")

    def test_empty_grid_exit_two(self, capsys):
        code, _, err = run(capsys, "sigma", "--grid", "0:1:0")
        assert code == 2

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "sigma", "--format", "json")
        rows = json.loads(out)
        assert rows[0]["sigma"] == 2.5

    def test_jobs_parallel_order(self, capsys):
        code, out_seq, _ = run(capsys, "sigma", "--grid", "0.5:2:4")
        code, out_par, _ = run(capsys, "sigma", "--grid", "0.5:2:4",
                               "--jobs", "4")
        assert out_seq == out_par


class TestCertify:
    def test_interior_point_passes(self, capsys):
        code, out, _ = run(capsys, "certify", "--eta", "1", "--mu", "0.1",
                           "--nu", "0.2")
        assert code == 0
        assert ",false" not in out

    def test_corrupt_stokes_fails(self, capsys):
        code, out, _ = run(capsys, "certify", "--eta", "1",
                           "--corrupt-stokes")
        assert code == 1
        assert "stokes-constraint" in out

    def test_boundary_annotated(self, capsys):
        code, out, _ = run(capsys, "certify", "--eta", "1", "--nu",
                           "1.1574074074074074")
        assert code == 0


class TestOutputs:
    def test_deterministic_files(self, tmp_path, capsys):
        f1 = tmp_path / "a.csv"
        f2 = tmp_path / "b.csv"
        for f in (f1, f2):
            code, _, _ = run(capsys, "sigma", "--grid", "0.5:2:5",
                             "--out", str(f))
            assert code == 0
        assert f1.read_bytes() == f2.read_bytes()

    def test_surface_rows(self, capsys):
        code, out, _ = run(capsys, "surface", "--grid", "0.3:2:6,-0.5:0.5:3")
        assert code == 0
        header = out.splitlines()[0].split(",")
        assert header[:3] == ["sigma", "eta", "nu"]
        for line in out.strip().splitlines()[1:-1]:
            d = float(line.split(",")[-1])
            assert d < 1e-8

    def test_pi_rows(self, capsys):
        code, out, _ = run(capsys, "pi", "--x-count", "6")
        assert code == 0
        rows = out.strip().splitlines()[1:]
        resid = [r.split(",")[-1] for r in rows[:6]]
        assert all(float(v) < 1e-8 for v in resid)
        # degeneration constants appended for both strata
        consts = [float(r.split(",")[3]) for r in rows[-2:]]
        assert all(abs(c - 0.4082482904638631) < 1e-6 for c in consts)

    def test_pi_seed_region_exit_two(self, capsys):
        code, _, _ = run(capsys, "pi", "--x-start", "-10")
        assert code == 2


class TestConfigFile:
    def test_file_and_override(self, tmp_path, capsys):
        conf = tmp_path / "run.conf"
        conf.write_text("eta = 2.0\nformat = json\n")
        code, out, _ = run(capsys, "sigma", "--config", str(conf))
        assert json.loads(out)[0]["eta"] == 2.0
        code, out, _ = run(capsys, "sigma", "--config", str(conf),
                           "--eta", "0.5")
        assert json.loads(out)[0]["eta"] == 0.5

    def test_unknown_key_exit_two(self, tmp_path, capsys):
        conf = tmp_path / "bad.conf"
        conf.write_text("volume = 11\n")
        code, _, _ = run(capsys, "sigma", "--config", str(conf))
        assert code == 2


class TestOther:
    def test_tau_columns(self, capsys):
        code, out, _ = run(capsys, "tau", "--eta", "1")
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert float(row[4]) == pytest.approx(-15625.0 / 43008.0)

    def test_parametrix_records(self, capsys):
        code, out, _ = run(capsys, "parametrix", "--kmax", "1")
        assert code == 0
        assert "stokes,planes,0|1" in out
        assert "airy,s_1,5/72" in out

    def test_critical_records(self, capsys):
        code, out, _ = run(capsys, "critical", "--eta", "1")
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert float(row[1]) == pytest.approx((10.0 / 3.0) ** 0.2)
        assert float(row[4]) < 1e-10
