"""Command-line front end: argument parsing, series ingestion and command dispatch."""

import argparse
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import ValidationError

from config import get_settings
from src.agents import MonteCarloStudy
from src.core.links import available_links, get_link
from src.models import (
    AcfDenominator,
    CliConfig,
    Command,
    FittedModel,
    McConfig,
    ModelOrder,
    ParamVector,
    PowerScenario,
    ResidualKind,
    SeriesData,
    StudyKind,
    table_one_design,
)
from src.services import diagnostics, estimation, forecast as forecasting
from src.services.simulation import simulate_series
from src.utils import SeriesFormatError, get_logger

from . import reports

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_NOT_CONVERGED = 3


def _float_list(text: str) -> List[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _int_list(text: str) -> List[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per CLI command."""
    parser = argparse.ArgumentParser(
        prog="beta-sarma",
        description="Beta seasonal ARMA models for rates and proportions",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", help="Model order p,q,P,Q,S")
    common.add_argument("--output", type=Path, default=Path("."), help="Output directory")
    common.add_argument("--link", default="logit", choices=available_links(), help="Link function")
    common.add_argument("--seed", type=int, default=0, help="Random seed")
    common.add_argument("--debug", action="store_true", help="Enable debug logging")

    data = argparse.ArgumentParser(add_help=False)
    data.add_argument("--input", type=Path, help="CSV with a 'y' column or 'date,y' columns")
    data.add_argument("--holdout", type=int, default=0, help="Observations reserved at the end")
    data.add_argument("--b", type=int, help="Portmanteau lags (default max(10, 2S))")
    data.add_argument("--level", type=float, default=None, help="Confidence level")
    data.add_argument(
        "--allow-nonconverged",
        action="store_true",
        help="Exit with status 0 even if the optimizer did not converge",
    )
    data.add_argument(
        "--denominator",
        choices=[choice.value for choice in AcfDenominator],
        default=AcfDenominator.FULL.value,
        help="Autocorrelation denominator",
    )

    subparsers.add_parser("fit", parents=[common, data], help="Fit a model and report estimates")
    subparsers.add_parser(
        "diagnose", parents=[common, data], help="Fit a model and write residual diagnostics"
    )
    forecast_parser = subparsers.add_parser(
        "forecast", parents=[common, data], help="Fit a model and forecast ahead"
    )
    forecast_parser.add_argument("--horizon", type=int, default=10, help="Forecast horizon h")

    simulate_parser = subparsers.add_parser(
        "simulate", parents=[common], help="Generate a series from given parameters"
    )
    simulate_parser.add_argument("--n", type=int, default=500, help="Series length")
    simulate_parser.add_argument(
        "--params", help="Comma separated β, φ…, Φ…, θ…, Θ…, ϕ (default: reference design)"
    )

    study_parser = subparsers.add_parser(
        "mc-study", parents=[common], help="Run a Monte Carlo study"
    )
    study_parser.add_argument(
        "--study", choices=[kind.value for kind in StudyKind], default=StudyKind.ESTIMATION.value
    )
    study_parser.add_argument("--replications", type=int, default=500, help="Replications R")
    study_parser.add_argument("--sample-sizes", default="50,100,200,500", help="Comma separated n values")
    study_parser.add_argument("--params", help="True parameters in canonical order")
    study_parser.add_argument(
        "--scenario",
        choices=[scenario.value for scenario in PowerScenario],
        default=PowerScenario.OMITTED_AR.value,
    )
    study_parser.add_argument("--deltas", help="Comma separated δ grid for the power study")
    study_parser.add_argument("--b", type=int, help="Portmanteau lags (default max(10, 2S))")
    study_parser.add_argument("--level", type=float, default=None, help="Confidence level")
    study_parser.add_argument(
        "--workers", type=int, help="Parallel workers (default BSARMA_MC_WORKERS)"
    )
    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> CliConfig:
    """Parse command-line arguments into a validated configuration.

    Usage errors (unknown flags, malformed orders, missing input) exit through
    ``argparse`` with status 2.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    command = Command(args.command)

    if args.order is None:
        if command in (Command.MC_STUDY, Command.SIMULATE):
            order = table_one_design()[0]
        else:
            parser.error("--order is required")
    else:
        try:
            order = ModelOrder.parse(args.order)
        except ValueError as e:
            parser.error(f"malformed order: {e}")

    params = None
    if getattr(args, "params", None):
        try:
            params = ParamVector.from_array(order, _float_list(args.params))
        except ValueError as e:
            parser.error(f"invalid --params: {e}")
    elif command in (Command.MC_STUDY, Command.SIMULATE):
        reference_order, reference_params = table_one_design()
        if order != reference_order:
            parser.error("--params is required unless --order is 1,1,1,1,12")
        params = reference_params

    values = {
        "command": command,
        "order": order,
        "output": args.output,
        "link": args.link,
        "seed": args.seed,
        "debug": args.debug,
        "params": params,
    }
    for name in ("input", "holdout", "b", "horizon", "n", "replications", "workers"):
        value = getattr(args, name, None)
        if value is not None:
            values[name] = value
    if getattr(args, "level", None) is not None:
        values["level"] = args.level
    if getattr(args, "allow_nonconverged", False):
        values["allow_nonconverged"] = True
    if getattr(args, "denominator", None):
        values["denominator"] = args.denominator
    if command == Command.MC_STUDY:
        try:
            values["sample_sizes"] = _int_list(args.sample_sizes)
            if args.deltas:
                values["deltas"] = _float_list(args.deltas)
        except ValueError as e:
            parser.error(f"invalid list: {e}")
        values["study"] = args.study
        values["scenario"] = args.scenario

    try:
        return CliConfig(**values)
    except ValidationError as e:
        parser.error("; ".join(error["msg"] for error in e.errors()))


def read_series(path: Path) -> SeriesData:
    """Read a series CSV with a ``y`` column and an optional ``date`` column.

    Row order is preserved. Rows are numbered from 1, header excluded.

    Raises:
        SeriesFormatError: If the file is empty, lacks a ``y`` column, or a
            value is missing, non-numeric or outside (0, 1)
    """
    try:
        frame = pd.read_csv(path, dtype=str, skip_blank_lines=True)
    except pd.errors.EmptyDataError:
        raise SeriesFormatError(f"{path} is empty")
    if "y" not in frame.columns:
        raise SeriesFormatError(f"{path} has no 'y' column (found {list(frame.columns)})")
    if frame.empty:
        raise SeriesFormatError(f"{path} has no observations")

    values = pd.to_numeric(frame["y"].str.strip(), errors="coerce").to_numpy(dtype=float)
    for row, (raw, value) in enumerate(zip(frame["y"], values), start=1):
        if np.isnan(value):
            raise SeriesFormatError(f"cannot parse y = {raw!r}", row=row)
        if not 0.0 < value < 1.0:
            raise SeriesFormatError(f"y = {raw.strip()} is outside the open interval (0, 1)", row=row)

    labels = None
    if "date" in frame.columns:
        labels = [str(label).strip() for label in frame["date"]]
    return SeriesData(values=values, labels=labels)


class CommandRunner:
    """Executes one validated CLI request and writes its artifacts."""

    def __init__(self, config: CliConfig):
        self.config = config
        self.settings = get_settings()
        self.decimals = self.settings.report_decimals
        self.link = get_link(config.link)
        self.estimation = estimation.EstimationService(self.settings, self.link)
        self.diagnostics = diagnostics.DiagnosticsService(config.b, config.denominator)

    def _output(self, name: str) -> Path:
        return self.config.output / name

    def _emit(self, text: str, name: str) -> None:
        reports.write_text(text, self._output(name))
        print(text, end="")

    def _load(self):
        series = read_series(self.config.input)
        holdout = self.config.holdout
        if holdout >= len(series):
            raise SeriesFormatError(
                f"holdout {holdout} leaves no observations out of {len(series)}"
            )
        if holdout:
            return series.head(len(series) - holdout), series.tail(holdout)
        return series, None

    def _fit(self, series: SeriesData) -> FittedModel:
        return self.estimation.fit(self.config.order, series)

    def _status(self, fitted: FittedModel) -> int:
        if fitted.converged or self.config.allow_nonconverged:
            return EXIT_OK
        logger.error("Optimizer did not converge", message=fitted.message)
        return EXIT_NOT_CONVERGED

    def _fit_report(self, fitted: FittedModel):
        rows = self.estimation.summary(fitted, self.config.level)
        report = self.diagnostics.report(fitted)
        reports.write_csv(reports.estimates_frame(rows), self._output("estimates.csv"))
        reports.write_csv(reports.diagnostics_frame(report), self._output("diagnostics.csv"))
        self._emit(reports.fit_report(fitted, rows, report, self.decimals), "report.txt")
        return rows, report

    def fit(self) -> int:
        series, _ = self._load()
        fitted = self._fit(series)
        self._fit_report(fitted)
        return self._status(fitted)

    def diagnose(self) -> int:
        series, _ = self._load()
        fitted = self._fit(series)
        self._fit_report(fitted)

        columns = self.diagnostics.residual_table(fitted)
        frame = pd.DataFrame(columns)
        frame.insert(0, "t", np.arange(fitted.burn_in + 1, fitted.n + 1))
        reports.write_csv(frame, self._output("residuals.csv"))
        reports.write_csv(
            reports.fitted_frame(fitted, forecasting.fitted_values(fitted)),
            self._output("fitted.csv"),
        )

        weighted = columns[ResidualKind.WEIGHTED.value]
        reports.write_csv(self.diagnostics.correlogram(fitted), self._output("correlogram.csv"))

        theoretical, sample = diagnostics.qq_coordinates(weighted)
        reports.write_csv(
            pd.DataFrame({"theoretical": theoretical, "sample": sample}), self._output("qq.csv")
        )
        grid, density, normal = diagnostics.residual_density(weighted)
        reports.write_csv(
            pd.DataFrame({"x": grid, "kde": density, "normal": normal}),
            self._output("density.csv"),
        )
        return self._status(fitted)

    def forecast(self) -> int:
        series, held = self._load()
        fitted = self._fit(series)
        result = forecasting.forecast(fitted, self.config.horizon)

        score = None
        actuals = None
        if held is not None:
            actuals = held.values
            score = forecasting.accuracy(result.means[: len(actuals)], actuals)
            if held.labels is not None and len(held.labels) >= result.horizon:
                result = result.model_copy(update={"labels": held.labels[: result.horizon]})

        reports.write_csv(
            reports.fitted_frame(fitted, forecasting.fitted_values(fitted)),
            self._output("fitted.csv"),
        )
        reports.write_csv(reports.forecast_frame(result, actuals), self._output("forecast.csv"))
        if score is not None:
            reports.write_csv(
                pd.DataFrame({"mse": [score.mse], "mape": [score.mape]}),
                self._output("accuracy.csv"),
            )
        self._emit(reports.forecast_table(result, score, self.decimals), "forecast.txt")
        return self._status(fitted)

    def simulate(self) -> int:
        rng = np.random.default_rng(self.config.seed)
        series = simulate_series(self.config.order, self.config.params, self.config.n, rng, link=self.link)
        reports.write_csv(pd.DataFrame({"y": series.values}), self._output("series.csv"))
        logger.info("Series simulated", n=len(series), seed=self.config.seed)
        return EXIT_OK

    def mc_study(self) -> int:
        values = {
            "study": self.config.study,
            "order": self.config.order,
            "true_params": self.config.params,
            "sample_sizes": self.config.sample_sizes,
            "replications": self.config.replications,
            "seed": self.config.seed,
            "link": self.config.link,
            "scenario": self.config.scenario,
            "confidence_level": self.config.level,
            "b": self.config.b,
            "workers": self.config.workers,
        }
        if self.config.deltas:
            values["power_grid"] = self.config.deltas
        report = MonteCarloStudy(McConfig(**values), self.settings).run()
        reports.write_csv(report.to_frame(), self._output("mc_report.csv"))
        self._emit(reports.mc_table(report, self.decimals), "mc_report.txt")
        return EXIT_OK

    def run(self) -> int:
        handlers = {
            Command.FIT: self.fit,
            Command.DIAGNOSE: self.diagnose,
            Command.FORECAST: self.forecast,
            Command.SIMULATE: self.simulate,
            Command.MC_STUDY: self.mc_study,
        }
        return handlers[self.config.command]()


def run(config: CliConfig) -> int:
    """Execute a command and return its exit status."""
    return CommandRunner(config).run()
