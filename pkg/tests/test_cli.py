"""Tests for the command-line interface."""

import json
from datetime import date, timedelta

import numpy as np
import pandas as pd
import pytest
from scipy import integrate

from kdebw.__main__ import buildParser, main

from .conftest import priceCsv

FAST_CONFIG = """\
search:
  hpGridPoints: 40
  curvePoints: 40
  extendPoints: 5
  validationGridPoints: 40
  quadrature:
    points: 801
studySearch:
  hpGridPoints: 40
  curvePoints: 30
  extendPoints: 0
  validationGridPoints: 40
  quadrature:
    points: 801
nullTrials: 1000
"""


def _dailyPrices(start: date, days: int, seed: int = 5) -> list[tuple[str, str]]:
    """Random-walk daily closes from start, one per calendar day."""
    steps = np.random.default_rng(seed).normal(0, 0.03, days)
    prices = 1000 * np.exp(np.cumsum(steps))
    return [((start + timedelta(days=i)).isoformat(), f"{p:.4f}") for i, p in enumerate(prices)]


@pytest.fixture
def config(tmp_path):
    """Settings file with small grids."""
    path = tmp_path / "fast.yaml"
    path.write_text(FAST_CONFIG)
    return path


@pytest.fixture
def sample_csv(tmp_path):
    """Simulated Gaussian sample of 300 values."""
    path = tmp_path / "sample.csv"
    argv = ["simulate", "--dist", "gaussian", "--n", "300", "--seed", "1"]
    assert main([*argv, "--out", str(path)]) == 0
    return path


@pytest.fixture
def prices_csv(tmp_path):
    """Daily prices from 2019-12-31 through 2021-12-31."""
    path = tmp_path / "prices.csv"
    path.write_bytes(priceCsv(_dailyPrices(date(2019, 12, 31), 732)))
    return path


class TestParser:
    """Tests for argument parsing."""

    def test_no_command(self, capsys):
        """Test a bare invocation prints help and fails."""
        assert main([]) == 2
        assert "usage" in capsys.readouterr().err

    def test_unknown_distribution(self, tmp_path):
        """Test invalid choices are usage errors."""
        assert main(["simulate", "--dist", "cauchy", "--out", str(tmp_path / "x.csv")]) == 2

    def test_bad_method(self, sample_csv):
        """Test unknown selectors are rejected by the parser."""
        assert main(["select", "--input", str(sample_csv), "--methods", "cv"]) == 2

    def test_bad_grid(self, sample_csv, tmp_path):
        """Test LO:HI:N validation."""
        out = tmp_path / "d.csv"
        argv = ["density", "--input", str(sample_csv), "--bandwidth", "0.3"]
        assert main([*argv, "--grid", "1:0:10", "--out", str(out)]) == 2

    def test_methods_parsed(self):
        """Test the method list is deduplicated."""
        args = buildParser().parse_args(
            ["select", "--input", "s.csv", "--methods", "c,amise,c"]
        )
        assert [m.value for m in args.methods] == ["complexity", "amise"]


class TestSimulate:
    """Tests for the simulate command."""

    def test_deterministic_output(self, tmp_path):
        """Test the same seed gives byte-identical files."""
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (first, second):
            assert main(["simulate", "--dist", "student5", "--seed", "3", "--out", str(out)]) == 0
        assert first.read_bytes() == second.read_bytes()
        assert len(first.read_text().splitlines()) == 1001

    def test_manifest_written(self, sample_csv):
        """Test the manifest sits beside the output."""
        manifest = json.loads(sample_csv.with_name("sample.csv.manifest.json").read_text())
        assert manifest["command"] == "simulate"
        assert manifest["configSnapshot"]["arguments"]["dist"] == "gaussian"

    def test_invalid_size(self, tmp_path):
        """Test n below 2 is a usage error."""
        out = str(tmp_path / "x.csv")
        assert main(["simulate", "--dist", "gaussian", "--n", "1", "--out", out]) == 2


class TestSelect:
    """Tests for the select command."""

    def test_report(self, sample_csv, config, tmp_path):
        """Test the report lists each method with its complexity."""
        out = tmp_path / "report.json"
        argv = ["--config", str(config), "select", "--input", str(sample_csv)]
        assert main([*argv, "--methods", "c,amise", "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        assert set(report["bandwidths"]) == {"complexity", "amise"}
        hc = report["bandwidths"]["complexity"]
        assert hc["bandwidth"] <= report["hP"]
        assert hc["aboveHp"] is False
        assert 0 <= report["bandwidths"]["amise"]["complexity"] <= 1.0 + 1e-9
        assert report["input"]["n"] == 300
        assert len(report["manifest"]["fingerprint"]) == 16

    def test_stdout(self, sample_csv, config, capsys):
        """Test the report goes to standard output without --out."""
        assert main(["--config", str(config), "select", "--input", str(sample_csv)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert "complexity" in report["bandwidths"]

    def test_validation_required(self, sample_csv):
        """Test pit without a validation file is a usage error."""
        assert main(["select", "--input", str(sample_csv), "--methods", "pit"]) == 2

    def test_missing_input(self, tmp_path):
        """Test an absent input file is a computation error."""
        assert main(["select", "--input", str(tmp_path / "absent.csv")]) == 1

    def test_price_year(self, prices_csv, config, capsys):
        """Test one calendar year of a price file as the sample."""
        argv = ["--config", str(config), "select", "--input", str(prices_csv)]
        assert main([*argv, "--year", "2020", "--methods", "amise"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["input"]["n"] == 366
        assert report["input"]["year"] == 2020


class TestCurveAndDensity:
    """Tests for the curve and density tables."""

    def test_curve_table(self, sample_csv, config, tmp_path):
        """Test columns, flagged rows and a stable manifest."""
        out = tmp_path / "curve.csv"
        argv = ["--config", str(config), "curve", "--input", str(sample_csv), "--out", str(out)]
        assert main([*argv, "--points", "30"]) == 0
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["h", "E_h", "P_h", "C_h", "beyond_hp"]
        assert len(frame) == 35
        assert int(frame["beyond_hp"].sum()) == 5
        assert 0 < frame["C_h"][frame["beyond_hp"] == 0].max() <= 1.0

        manifest = out.with_name("curve.csv.manifest.json")
        first = json.loads(manifest.read_text())["fingerprint"]
        assert main([*argv, "--points", "30"]) == 0
        assert json.loads(manifest.read_text())["fingerprint"] == first

    def test_density_table(self, sample_csv, tmp_path):
        """Test the estimate integrates to one next to the true density."""
        out = tmp_path / "density.csv"
        argv = ["density", "--input", str(sample_csv), "--bandwidth", "0.3"]
        assert main([*argv, "--true-dist", "gaussian", "--out", str(out)]) == 0
        frame = pd.read_csv(out)
        assert list(frame.columns) == ["x", "pdf", "true_pdf"]
        assert len(frame) == 2001
        area = integrate.trapezoid(frame["pdf"], frame["x"])
        assert area == pytest.approx(1.0, abs=1e-4)

    def test_density_explicit_grid(self, sample_csv, tmp_path):
        """Test LO:HI:N sets the evaluation points."""
        out = tmp_path / "density.csv"
        argv = ["density", "--input", str(sample_csv), "--bandwidth", "0.3"]
        assert main([*argv, "--grid=-1:1:5", "--out", str(out)]) == 0
        assert pd.read_csv(out)["x"].tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]

    def test_density_by_method(self, sample_csv, tmp_path):
        """Test a selector can supply the bandwidth."""
        out = tmp_path / "density.csv"
        argv = ["density", "--input", str(sample_csv), "--method", "amise"]
        assert main([*argv, "--out", str(out)]) == 0
        manifest = json.loads(out.with_name("density.csv.manifest.json").read_text())
        assert manifest["configSnapshot"]["arguments"]["bandwidth"] > 0

    def test_non_positive_bandwidth(self, sample_csv, tmp_path):
        """Test --bandwidth must be positive."""
        out = str(tmp_path / "density.csv")
        argv = ["density", "--input", str(sample_csv), "--bandwidth", "-1"]
        assert main([*argv, "--out", out]) == 2


class TestEfficiency:
    """Tests for the efficiency command."""

    def test_one_year(self, prices_csv, config, tmp_path):
        """Test every statistic for one year."""
        out = tmp_path / "eff.json"
        argv = ["--config", str(config), "efficiency", "--input", str(prices_csv)]
        argv += ["--year", "2020", "--h-grid", "0.0001:0.05:10"]
        assert main([*argv, "--out", str(out)]) == 0
        report = json.loads(out.read_text())
        year = report["years"][0]
        assert year["year"] == 2020
        assert year["n"] == 366
        assert len(year["posProb"]) == len(year["infoBits"]) == 10
        assert year["posProb"][0] == pytest.approx(year["posProbCounting"], abs=0.01)
        assert set(year["nullBands"]["quantiles"]) == {"0.95", "0.99", "0.999"}
        assert 0 < year["hurst"]["exponent"] < 1
        assert report["series"]["count"] == 731

    def test_all_years(self, prices_csv, config, capsys):
        """Test every year is reported without --year."""
        argv = ["--config", str(config), "efficiency", "--input", str(prices_csv)]
        assert main([*argv, "--stats", "posprob"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert [y["year"] for y in report["years"]] == [2020, 2021]
        assert "infoBits" not in report["years"][0]

    def test_trailing_single_day_year(self, tmp_path, capsys):
        """Test a year with one return is recorded as an error and the others reported."""
        path = tmp_path / "prices.csv"
        path.write_bytes(priceCsv(_dailyPrices(date(2021, 1, 1), 366)))
        argv = ["efficiency", "--input", str(path), "--stats", "posprob"]
        assert main([*argv, "--null-trials", "1000"]) == 0
        years = json.loads(capsys.readouterr().out)["years"]
        assert [y["year"] for y in years] == [2021, 2022]
        assert years[0]["n"] == 364
        assert "posProb" in years[0]
        assert "error" in years[1]
        assert "posProb" not in years[1]

    def test_short_year_hurst_error(self, tmp_path, capsys):
        """Test a year too short for rescaled range keeps its other statistics."""
        path = tmp_path / "prices.csv"
        path.write_bytes(priceCsv(_dailyPrices(date(2021, 1, 1), 385)))
        argv = ["efficiency", "--input", str(path), "--stats", "posprob,hurst"]
        assert main(argv) == 0
        years = json.loads(capsys.readouterr().out)["years"]
        assert 0 < years[0]["hurst"]["exponent"] < 1
        assert years[1]["n"] == 20
        assert "posProb" in years[1]
        assert "error" in years[1]["hurst"]

    def test_requested_year_failure(self, tmp_path):
        """Test an explicitly requested year that cannot be analysed fails the run."""
        path = tmp_path / "prices.csv"
        path.write_bytes(priceCsv(_dailyPrices(date(2021, 1, 1), 366)))
        assert main(["efficiency", "--input", str(path), "--year", "2022"]) == 1

    def test_unknown_stat(self, prices_csv):
        """Test --stats validation."""
        assert main(["efficiency", "--input", str(prices_csv), "--stats", "entropy"]) == 2

    def test_too_few_trials(self, prices_csv):
        """Test null bands need at least 1000 trials."""
        argv = ["efficiency", "--input", str(prices_csv), "--null-trials", "10"]
        assert main(argv) == 2

    def test_bad_prices(self, tmp_path):
        """Test ingest failures are computation errors."""
        path = tmp_path / "bad.csv"
        path.write_bytes(priceCsv([("2020-01-01", 1), ("2020-01-01", 2)]))
        assert main(["efficiency", "--input", str(path)]) == 1


class TestStudy:
    """Tests for the study command."""

    def test_small_study(self, config, tmp_path):
        """Test runs and summary for a short study."""
        out = tmp_path / "study.json"
        argv = ["--config", str(config), "study", "--dists", "gaussian", "--seeds", "2"]
        argv += ["--n", "200", "--m", "200", "--methods", "c,amise", "--out", str(out)]
        assert main(argv) == 0
        report = json.loads(out.read_text())
        study = report["distributions"]["gaussian"]
        assert study["summary"]["runs"] == 2
        assert [run["seed"] for run in study["runs"]] == [0, 1]
        assert study["summary"]["medians"]["complexity"] > 0
        assert study["summary"]["frequencies"]["pitBelowHc"] is None
        for run in study["runs"]:
            assert run["complexity"]["ise"] > 0
        search = report["manifest"]["configSnapshot"]["settings"]["search"]
        assert search["curvePoints"] == 30
        assert search["extendPoints"] == 0
