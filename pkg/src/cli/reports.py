"""Human-readable tables and CSV artifacts for CLI commands."""

from pathlib import Path
from typing import List, Optional

import numpy as np
import pandas as pd

from src.models import (
    Accuracy,
    DiagnosticReport,
    EstimateRow,
    FittedModel,
    ForecastResult,
    McReport,
)
from src.utils import get_logger

logger = get_logger(__name__)

CSV_FLOAT_FORMAT = "%.17g"


def _number(value: Optional[float], decimals: int) -> str:
    if value is None or (isinstance(value, float) and np.isnan(value)):
        return "-"
    return f"{value:.{decimals}f}"


def write_csv(frame: pd.DataFrame, path: Path) -> Path:
    """Write a table with full float precision and Unix line endings."""
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    logger.debug("artifact written", path=str(path), rows=len(frame))
    return path


def write_text(text: str, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def estimates_frame(rows: List[EstimateRow]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in rows])


def estimates_table(rows: List[EstimateRow], decimals: int = 4) -> str:
    """Estimate, std. error, z stat. and p-value, one line per parameter."""
    header = f"{'':<10}{'Estimate':>12}{'Std. error':>12}{'z stat':>12}{'p-value':>12}"
    lines = [header]
    for row in rows:
        lines.append(
            f"{row.name:<10}"
            + "".join(
                f"{_number(value, decimals):>12}"
                for value in (row.estimate, row.std_error, row.z_stat, row.p_value)
            )
        )
    return "\n".join(lines)


def diagnostics_table(report: DiagnosticReport, decimals: int = 4) -> str:
    """Log-likelihood, deviance, information criteria and test statistics."""
    fmt = lambda value: _number(value, decimals)  # noqa: E731
    lines = [
        f"Log-likelihood      {fmt(report.loglik)}",
        f"Deviance            {fmt(report.deviance.value)}  (scaled {fmt(report.deviance.scaled)})",
        f"MAIC                {fmt(report.criteria.maic)}",
        f"MSIC                {fmt(report.criteria.msic)}",
        f"MHQ                 {fmt(report.criteria.mhq)}",
    ]
    if report.seasonality is not None:
        test = report.seasonality
        lines.append(
            f"Seasonality Wald    {fmt(test.statistic)}  df {test.df}  p-value {fmt(test.p_value)}"
        )
    for result in (report.ljung_box, report.monti):
        if result is not None:
            name = "Ljung-Box" if result.test == "ljung_box" else "Monti"
            lines.append(
                f"{name:<20}{fmt(result.statistic)}  b {result.b}  df {result.df}  "
                f"p-value {fmt(result.p_value)}"
            )
    return "\n".join(lines)


def fit_report(
    fit: FittedModel, rows: List[EstimateRow], report: DiagnosticReport, decimals: int = 4
) -> str:
    """Full text report of a fit."""
    status = "converged" if fit.converged else f"NOT converged ({fit.message})"
    parts = [
        f"{fit.order.label()}  n = {fit.n}  m = {fit.burn_in}  link = {fit.link_name}",
        f"Optimizer: {status} after {fit.iterations} iterations",
        "",
        estimates_table(rows, decimals),
        "",
        diagnostics_table(report, decimals),
    ]
    return "\n".join(parts) + "\n"


def diagnostics_frame(report: DiagnosticReport) -> pd.DataFrame:
    """Machine-readable key/value view of a diagnostic report."""
    records = [
        ("loglik", report.loglik),
        ("deviance", report.deviance.value),
        ("scaled_deviance", report.deviance.scaled),
        ("maic", report.criteria.maic),
        ("msic", report.criteria.msic),
        ("mhq", report.criteria.mhq),
    ]
    if report.seasonality is not None:
        records += [
            ("seasonality_statistic", report.seasonality.statistic),
            ("seasonality_df", float(report.seasonality.df)),
            ("seasonality_p_value", report.seasonality.p_value),
        ]
    for result in (report.ljung_box, report.monti):
        if result is not None:
            records += [
                (f"{result.test}_statistic", result.statistic),
                (f"{result.test}_df", float(result.df)),
                (f"{result.test}_p_value", result.p_value),
            ]
    return pd.DataFrame(records, columns=["statistic", "value"])


def fitted_frame(fit: FittedModel, means: np.ndarray) -> pd.DataFrame:
    """Observed values next to in-sample fitted means, t = m+1..n."""
    start = fit.burn_in
    frame = pd.DataFrame(
        {
            "t": np.arange(start + 1, fit.n + 1),
            "y": fit.series.values[start:],
            "fitted": means,
        }
    )
    if fit.series.labels is not None:
        frame.insert(1, "date", fit.series.labels[start:])
    return frame


def forecast_frame(
    result: ForecastResult, actuals: Optional[np.ndarray] = None
) -> pd.DataFrame:
    frame = pd.DataFrame({"step": np.arange(1, result.horizon + 1), "mean": result.means})
    if result.labels is not None:
        frame.insert(1, "date", result.labels)
    if actuals is not None:
        padded = np.full(result.horizon, np.nan)
        padded[: len(actuals)] = actuals[: result.horizon]
        frame["actual"] = padded
    return frame


def forecast_table(
    result: ForecastResult, score: Optional[Accuracy] = None, decimals: int = 4
) -> str:
    lines = [f"{'Step':>6}  {'Forecast':>10}"]
    for step, mean in enumerate(result.means, start=1):
        label = f"  {result.labels[step - 1]}" if result.labels else ""
        lines.append(f"{step:>6}  {_number(float(mean), decimals):>10}{label}")
    if score is not None:
        lines += ["", f"MSE   {_number(score.mse, decimals + 1)}", f"MAPE  {_number(score.mape, decimals + 1)}"]
    return "\n".join(lines) + "\n"


def mc_table(report: McReport, decimals: int = 4) -> str:
    """Monte Carlo report as a fixed-width table plus failure bookkeeping."""
    frame = report.to_frame()
    body = frame.to_string(index=False, float_format=lambda value: f"{value:.{decimals}f}")
    failures = ", ".join(f"n={n}: {count}" for n, count in sorted(report.failures.items()))
    return (
        f"{report.study.value} study, R = {report.replications}\n{body}\n"
        f"Non-converged replications: {failures or 'none'}\n"
    )
