"""Tests for the command-line front end: flags, outputs, manifests, exit codes."""

import json

import pytest

from fwlab.cli import main


def read_manifest(out_path):
    with open(f"{out_path}.manifest.json") as fh:
        return json.load(fh)


class TestSolve:
    def test_slow_start_trajectory(self, tmp_path):
        out = tmp_path / "traj.csv"
        code = main(["solve", "--p", "3", "--rule", "exact", "--x0", "slow:0.75",
                     "--iters", "50", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "t,x1,x2,gamma,h,u,w,y,s"
        first = lines[1].split(",")
        assert float(first[1]) == 0.25
        assert len(lines) == 52  # header + t = 0..50
        manifest = read_manifest(out)
        assert manifest["command"] == "solve"
        assert manifest["config"]["p"] == 3.0
        assert manifest["config"]["u0"] == 0.75
        assert manifest["config"]["rule"] == "exact"
        assert manifest["outputs"] == [str(out)]
        assert manifest["version"]

    def test_point_start_already_optimal(self, tmp_path):
        out = tmp_path / "opt.csv"
        code = main(["solve", "--p", "3", "--x0", "point:1,0", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 2
        assert float(lines[1].split(",")[4]) == 0.0

    def test_short_step_with_heb_is_invalid(self, tmp_path):
        out = tmp_path / "x.csv"
        code = main(["solve", "--p", "3", "--rule", "short", "--theta", "0.25",
                     "--x0", "slow:0.5", "--out", str(out)])
        assert code == 2
        assert not out.exists()

    def test_infeasible_start(self, tmp_path):
        out = tmp_path / "x.csv"
        code = main(["solve", "--p", "3", "--x0", "point:1.01,0", "--out", str(out)])
        assert code == 3

    def test_bad_x0_spec(self, tmp_path):
        out = tmp_path / "x.csv"
        assert main(["solve", "--p", "3", "--x0", "nearby", "--out", str(out)]) == 2

    def test_missing_required_flag(self, capsys, tmp_path):
        assert main(["solve", "--p", "3", "--out", str(tmp_path / "x.csv")]) == 2
        capsys.readouterr()

    def test_byte_identical_reruns(self, tmp_path):
        args = ["solve", "--p", "3", "--x0", "random:42", "--iters", "30"]
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_short_rule_matches_exact_on_quadratic(self, tmp_path):
        a = tmp_path / "exact.csv"
        b = tmp_path / "short.csv"
        assert main(["solve", "--p", "3", "--x0", "slow:0.5", "--iters", "40",
                     "--rule", "exact", "--out", str(a)]) == 0
        assert main(["solve", "--p", "3", "--x0", "slow:0.5", "--iters", "40",
                     "--rule", "short", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_extended_precision_run(self, tmp_path):
        out = tmp_path / "ext.csv"
        code = main(["solve", "--p", "3", "--x0", "slow:0.5", "--iters", "10",
                     "--precision", "extended:128", "--out", str(out)])
        assert code == 0
        assert read_manifest(out)["config"]["precision"] == "extended:128"

    def test_heb_objective_echoed(self, tmp_path):
        out = tmp_path / "heb.csv"
        code = main(["solve", "--p", "3", "--x0", "slow:0.5", "--iters", "10",
                     "--theta", "0.25", "--mu", "2", "--out", str(out)])
        assert code == 0
        manifest = read_manifest(out)
        assert manifest["config"]["theta"] == 0.25
        assert manifest["config"]["mu"] == 2.0


class TestConstants:
    def test_stdout_payload(self, capsys):
        assert main(["constants", "--p", "3"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["C_p"] == pytest.approx(0.8254818, abs=1e-7)
        assert payload["thm_constant"] == pytest.approx(0.408248, abs=1e-6)
        assert payload["a_p"] == pytest.approx(1.362840, abs=1e-6)

    def test_file_output_with_manifest(self, tmp_path, capsys):
        out = tmp_path / "c.json"
        assert main(["constants", "--p", "5", "--out", str(out)]) == 0
        capsys.readouterr()
        payload = json.loads(out.read_text())
        assert payload["thm_constant"] == pytest.approx(0.33645348, abs=1e-6)
        assert read_manifest(out)["command"] == "constants"

    def test_low_p_rejected(self, capsys):
        assert main(["constants", "--p", "2.5"]) == 2
        capsys.readouterr()


class TestFixedpoint:
    def test_curve_rows_meet_tolerance(self, tmp_path):
        out = tmp_path / "curve.csv"
        code = main(["fixedpoint", "--p", "4", "--u-min", "1e-6", "--u-max", "0.1",
                     "--points", "10", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "u,y_star,residual"
        assert len(lines) == 11
        for line in lines[1:]:
            _, _, residual = line.split(",")
            assert abs(float(residual)) <= 1e-12

    def test_infeasible_grid_is_numeric_failure(self, tmp_path):
        out = tmp_path / "curve.csv"
        code = main(["fixedpoint", "--p", "3", "--u-min", "1.5", "--u-max", "2.0",
                     "--points", "3", "--out", str(out)])
        assert code == 4


class TestHeatmapCommand:
    def test_small_grid(self, tmp_path):
        out = tmp_path / "heat.csv"
        code = main(["heatmap", "--p", "3", "--grid", "16", "--target", "1e-3",
                     "--cap", "10000", "--out", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "x1,x2,iters"
        assert 1 < len(lines) <= 16 * 16 + 1
        for line in lines[1:]:
            x1, x2, iters = line.split(",")
            assert (abs(float(x1)) ** 3 + abs(float(x2)) ** 3) ** (1 / 3) < 1.0
            assert int(iters) >= -1

    def test_grid_too_small(self, tmp_path):
        assert main(["heatmap", "--p", "3", "--grid", "4",
                     "--out", str(tmp_path / "h.csv")]) == 2


class TestRates:
    def test_report_fields(self, tmp_path):
        out = tmp_path / "rates.json"
        code = main(["rates", "--p", "3", "--u0", "0.5", "--iters", "2000",
                     "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["expected_slope"] == -1.5
        assert report["p"] == 3.0
        assert report["theta"] == 0.5
        assert report["slope"] == pytest.approx(-1.5, abs=0.1)
        assert report["theorem_constant"] == pytest.approx(0.408248, abs=1e-6)
        assert read_manifest(out)["config"]["T"] == 2000

    def test_heb_report_exponents(self, tmp_path):
        out = tmp_path / "rates_heb.json"
        code = main(["rates", "--p", "3", "--theta", "0.3333333333333333",
                     "--iters", "2000", "--out", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["expected_slope"] == pytest.approx(-2.25, rel=1e-9)
        assert report["upper_bound_slope"] == pytest.approx(-9.0 / 7.0, rel=1e-9)


class TestTopLevel:
    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 2
        capsys.readouterr()

    def test_version_flag(self, capsys):
        assert main(["--version"]) == 0
        assert "fwlab" in capsys.readouterr().out
