"""Tests for the command-line interface."""

from pathlib import Path
from unittest.mock import patch

import numpy as np
import pandas as pd
import pytest

import main
from src.cli import parse_args, read_series, run
from src.models import Command, ModelOrder
from src.services import estimation
from src.utils.errors import SeriesFormatError


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


@pytest.fixture
def simulated_csv(tmp_path):
    """A 178-point series from the reference design written by the simulate command."""
    out = tmp_path / "sim"
    assert run(parse_args(["simulate", "--seed", "7", "--n", "178", "--output", str(out)])) == 0
    return out / "series.csv"


def test_parse_fit_args():
    config = parse_args(["fit", "--order", "1,0,1,1,12", "--input", "rh.csv"])
    assert config.command == Command.FIT
    assert config.order == ModelOrder(p=1, q=0, P=1, Q=1, S=12)
    assert config.input == Path("rh.csv")
    assert config.link == "logit"
    assert config.holdout == 0


def test_parse_simulate_args():
    config = parse_args(["simulate", "--order", "1,1,1,1,12", "--seed", "7", "--n", "500"])
    assert config.command == Command.SIMULATE
    assert config.seed == 7
    assert config.n == 500
    assert config.params.precision == 120.0


@pytest.mark.parametrize(
    "argv",
    [
        ["fit", "--order", "1,0", "--input", "rh.csv"],
        ["fit", "--order", "1,0,1,1,12"],
        ["fit", "--order", "1,0,1,1,12", "--input", "rh.csv", "--bogus"],
        ["simulate", "--order", "2,0,0,0,12"],
        ["forecast", "--order", "1,0,0,0,12", "--input", "rh.csv", "--horizon", "0"],
        ["forecast", "--order", "1,0,0,0,12", "--input", "rh.csv", "--holdout", "9", "--horizon", "5"],
        ["launch"],
    ],
)
def test_usage_errors_exit_with_status_two(argv):
    with pytest.raises(SystemExit) as excinfo:
        parse_args(argv)
    assert excinfo.value.code == 2


def test_read_series_single_column(tmp_path):
    series = read_series(_write(tmp_path / "y.csv", "y\n0.5\n0.6\n"))
    np.testing.assert_array_equal(series.values, [0.5, 0.6])
    assert series.labels is None


def test_read_series_with_dates(tmp_path):
    series = read_series(_write(tmp_path / "y.csv", "date,y\n2001-01-01,0.7\n2001-02-01,0.65\n"))
    assert series.labels == ["2001-01-01", "2001-02-01"]
    np.testing.assert_array_equal(series.values, [0.7, 0.65])


def test_read_series_boundary_value_names_row(tmp_path):
    with pytest.raises(SeriesFormatError, match="row 2") as excinfo:
        read_series(_write(tmp_path / "y.csv", "y\n0.5\n1.0\n0.4\n"))
    assert excinfo.value.row == 2


def test_read_series_unparseable_value(tmp_path):
    with pytest.raises(SeriesFormatError, match="row 1"):
        read_series(_write(tmp_path / "y.csv", "y\nabc\n"))


@pytest.mark.parametrize("text", ["", "y\n", "value\n0.5\n"])
def test_read_series_rejects_empty_or_headerless(tmp_path, text):
    with pytest.raises(SeriesFormatError):
        read_series(_write(tmp_path / "y.csv", text))


def test_simulate_is_byte_identical(tmp_path):
    for name in ("a", "b"):
        argv = ["simulate", "--seed", "3", "--n", "120", "--output", str(tmp_path / name)]
        assert run(parse_args(argv)) == 0
    first = (tmp_path / "a" / "series.csv").read_bytes()
    assert first == (tmp_path / "b" / "series.csv").read_bytes()
    frame = pd.read_csv(tmp_path / "a" / "series.csv")
    assert list(frame.columns) == ["y"]
    assert len(frame) == 120


def test_fit_writes_estimate_table(tmp_path, simulated_csv):
    out = tmp_path / "fit"
    argv = ["fit", "--order", "1,1,1,1,12", "--input", str(simulated_csv), "--output", str(out)]
    assert run(parse_args(argv)) == 0
    table = pd.read_csv(out / "estimates.csv")
    assert list(table["name"]) == ["beta", "phi1", "Phi1", "theta1", "Theta1", "precision"]
    assert {"estimate", "std_error", "z_stat", "p_value"} <= set(table.columns)
    report = (out / "report.txt").read_text()
    assert "Ljung-Box" in report and "Monti" in report and "MAIC" in report
    stats = pd.read_csv(out / "diagnostics.csv")
    assert "seasonality_p_value" in set(stats["statistic"])


def test_fit_outputs_are_reproducible(tmp_path, simulated_csv):
    for name in ("a", "b"):
        argv = ["fit", "--order", "1,0,0,0,12", "--input", str(simulated_csv)]
        assert run(parse_args(argv + ["--output", str(tmp_path / name)])) == 0
    for artifact in ("estimates.csv", "diagnostics.csv", "report.txt"):
        assert (tmp_path / "a" / artifact).read_bytes() == (tmp_path / "b" / artifact).read_bytes()


def test_nonconverged_fit_exit_status(tmp_path, simulated_csv):
    real_fit = estimation.fit

    def failing(*args, **kwargs):
        return real_fit(*args, **kwargs).model_copy(update={"converged": False})

    argv = ["fit", "--order", "1,0,0,0,12", "--input", str(simulated_csv)]
    with patch("src.cli.commands.estimation.fit", side_effect=failing):
        assert run(parse_args(argv + ["--output", str(tmp_path / "a")])) == 3
        allowed = argv + ["--output", str(tmp_path / "b"), "--allow-nonconverged"]
        assert run(parse_args(allowed)) == 0


def test_forecast_with_holdout(tmp_path, simulated_csv):
    out = tmp_path / "fc"
    argv = [
        "forecast",
        "--order", "1,0,1,1,12",
        "--input", str(simulated_csv),
        "--holdout", "10",
        "--horizon", "10",
        "--output", str(out),
    ]
    with patch("src.cli.commands.estimation.fit", wraps=estimation.fit) as fit_spy:
        assert run(parse_args(argv)) == 0
    assert len(fit_spy.call_args.args[1]) == 168
    forecast = pd.read_csv(out / "forecast.csv")
    assert len(forecast) == 10
    assert forecast["mean"].between(0, 1, inclusive="neither").all()
    held = pd.read_csv(simulated_csv)["y"].to_numpy()[-10:]
    np.testing.assert_allclose(forecast["actual"], held)
    accuracy = pd.read_csv(out / "accuracy.csv")
    assert accuracy.loc[0, "mse"] >= 0
    assert len(pd.read_csv(out / "fitted.csv")) == 168 - 13


def test_forecast_carries_date_labels(tmp_path):
    dates = pd.date_range("2000-01-01", periods=60, freq="MS").strftime("%Y-%m-%d")
    noise = np.random.default_rng(0).uniform(-0.05, 0.05, 60)
    values = 0.5 + 0.2 * np.sin(np.arange(60) * np.pi / 6) + noise
    path = tmp_path / "dated.csv"
    pd.DataFrame({"date": dates, "y": values}).to_csv(path, index=False)
    out = tmp_path / "fc"
    argv = ["forecast", "--order", "1,0,0,0,12", "--input", str(path), "--horizon", "2"]
    assert run(parse_args(argv + ["--output", str(out)])) == 0
    forecast = pd.read_csv(out / "forecast.csv")
    assert list(forecast["date"]) == ["2005-01-01", "2005-02-01"]
    assert pd.read_csv(out / "fitted.csv")["date"].iloc[-1] == "2004-12-01"


def test_diagnose_writes_plot_data(tmp_path, simulated_csv):
    out = tmp_path / "diag"
    argv = ["diagnose", "--order", "1,1,1,1,12", "--input", str(simulated_csv), "--output", str(out)]
    assert run(parse_args(argv)) == 0
    residuals = pd.read_csv(out / "residuals.csv")
    assert len(residuals) == 178 - 13
    assert {"standardized", "predictor_scale", "weighted"} <= set(residuals.columns)
    correlogram = pd.read_csv(out / "correlogram.csv")
    assert list(correlogram["lag"]) == list(range(1, 25))
    assert correlogram["upper"].iloc[0] == pytest.approx(1.96 / np.sqrt(165))
    assert (out / "qq.csv").exists()
    assert (out / "density.csv").exists()
    fitted = pd.read_csv(out / "fitted.csv")
    assert list(fitted.columns) == ["t", "y", "fitted"]
    assert list(fitted["t"]) == list(range(14, 179))
    observed = pd.read_csv(simulated_csv)["y"].to_numpy()
    np.testing.assert_allclose(fitted["y"], observed[13:])
    assert fitted["fitted"].between(0, 1, inclusive="neither").all()


def test_mc_study_command(tmp_path):
    out = tmp_path / "mc"
    argv = [
        "mc-study",
        "--study", "estimation",
        "--replications", "2",
        "--sample-sizes", "80",
        "--seed", "4",
        "--output", str(out),
    ]
    assert run(parse_args(argv)) == 0
    table = pd.read_csv(out / "mc_report.csv")
    assert set(table["parameter"]) == {"beta", "phi1", "Phi1", "theta1", "Theta1", "precision"}
    assert (out / "mc_report.txt").read_text().startswith("estimation study, R = 2")


def test_main_returns_exit_status(tmp_path):
    assert main.main(["simulate", "--n", "30", "--output", str(tmp_path)]) == 0


def test_cli_reports_missing_input_file(tmp_path):
    argv = ["beta-sarma", "fit", "--order", "1,0,0,0,12", "--input", str(tmp_path / "none.csv")]
    with patch("sys.argv", argv):
        with pytest.raises(SystemExit) as excinfo:
            main.cli()
    assert excinfo.value.code == 1


def test_fit_with_too_few_portmanteau_lags_fails(tmp_path, simulated_csv):
    out = tmp_path / "fit"
    argv = [
        "beta-sarma", "fit",
        "--order", "1,1,1,1,12",
        "--input", str(simulated_csv),
        "--b", "3",
        "--output", str(out),
    ]
    with patch("sys.argv", argv):
        with pytest.raises(SystemExit) as excinfo:
            main.cli()
    assert excinfo.value.code == 1
    assert not (out / "report.txt").exists()
