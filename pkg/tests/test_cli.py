"""
Tests for the command-line interface
"""

import csv
import io

import pytest

from app import cli
from app.services.verification import CheckResult


class TestGain:
    def test_console_report(self, scenario_file, capsys):
        assert cli.main(["gain", str(scenario_file)]) == 0
        out = capsys.readouterr().out
        assert "H_B" in out
        assert "eavesdropper_dominates" in out

    def test_csv_report(self, scenario_file, capsys):
        assert cli.main(["gain", str(scenario_file), "--csv"]) == 0
        records = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert records[0] == ["quantity", "value"]
        assert dict(records[1:])["degenerate_eavesdropper"] == "false"

    def test_missing_file(self, tmp_path, capsys):
        assert cli.main(["gain", str(tmp_path / "absent.txt")]) == 2
        assert "error:" in capsys.readouterr().err


class TestSweep:
    def test_manual_sweep(self, capsys):
        code = cli.main(["sweep", "--axis", "P_DB", "--start", "0", "--stop", "20", "--steps", "3", "--ratio", "10"])
        assert code == 0
        lines = capsys.readouterr().out.split("\r\n")
        assert lines[0] == "axis_value,lower_raw,upper_raw,lower,upper,branch,gap,error"
        assert lines[1].startswith("0,")
        assert len([line for line in lines if line]) == 4

    def test_preset_to_file(self, tmp_path):
        out = tmp_path / "fig5.csv"
        assert cli.main(["sweep", "--preset", "fig5", "--out", str(out)]) == 0
        records = list(csv.reader(out.open(newline="")))
        assert records[0][-2:] == ["series", "error"]
        assert len(records) == 1 + 2 * 121

    def test_scenario_supplies_channel(self, scenario_file, capsys):
        argv = ["sweep", "--scenario", str(scenario_file), "--axis", "XI", "--start", "0.1", "--stop", "1", "--steps", "4", "--p-db", "40"]
        assert cli.main(argv) == 0
        assert len(capsys.readouterr().out.strip().split("\r\n")) == 5

    def test_unwritable_output(self, tmp_path, capsys):
        out = tmp_path / "missing_dir" / "fig5.csv"
        assert cli.main(["sweep", "--preset", "fig5", "--out", str(out)]) == 2
        assert "cannot write output file" in capsys.readouterr().err

    def test_missing_axis(self, capsys):
        assert cli.main(["sweep", "--start", "0", "--stop", "1"]) == 2

    def test_pdf_preset_rejected(self):
        assert cli.main(["sweep", "--preset", "fig6"]) == 2

    def test_invalid_noise(self):
        assert cli.main(["sweep", "--axis", "P_DB", "--start", "0", "--stop", "1", "--sigma2-b", "-1"]) == 2

    def test_non_finite_argument(self):
        with pytest.raises(SystemExit):
            cli.main(["sweep", "--axis", "P_DB", "--start", "nan", "--stop", "1"])


class TestPdf:
    def test_uniform_density(self, capsys):
        assert cli.main(["pdf", "--alpha", "0.5", "--A", "1e6", "--points", "3"]) == 0
        assert capsys.readouterr().out == "x,f\r\n0,1e-06\r\n500000,1e-06\r\n1000000,1e-06\r\n"

    def test_preset_has_series(self, capsys):
        assert cli.main(["pdf", "--preset", "fig6", "--points", "2"]) == 0
        records = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert records[0] == ["x", "f", "series"]
        assert len(records) == 1 + 5 * 2

    def test_unbounded_alpha(self, capsys):
        assert cli.main(["pdf", "--alpha", "1.0"]) == 2
        assert "alpha = 1" in capsys.readouterr().err

    def test_points(self):
        assert cli.main(["pdf", "--points", "1"]) == 2


class TestTablesAndVerify:
    def test_tables(self, capsys):
        assert cli.main(["tables"]) == 0
        out = capsys.readouterr().out
        assert "PASS" in out and "FAIL" not in out

    def test_tables_csv(self, capsys):
        assert cli.main(["tables", "--csv"]) == 0
        records = list(csv.reader(io.StringIO(capsys.readouterr().out)))
        assert records[0][-1] == "status"
        assert len(records) == 37

    def test_verify_failure_exit_code(self, monkeypatch, capsys):
        monkeypatch.setattr(cli, "run_verification", lambda level, seed: [CheckResult(name="x", passed=False)])
        assert cli.main(["verify"]) == 1
        assert "FAIL  x" in capsys.readouterr().out

    def test_verify_success_exit_code(self, monkeypatch):
        monkeypatch.setattr(cli, "run_verification", lambda level, seed: [CheckResult(name="x", passed=True)])
        assert cli.main(["verify", "--level", "full", "--csv"]) == 0
