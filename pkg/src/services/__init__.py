"""Services module: estimation, diagnostics, forecasting and simulation."""

from . import diagnostics, estimation, forecast, simulation
from .diagnostics import DiagnosticsService, acf, diagnose, ljung_box, monti, pacf, residuals
from .estimation import (
    EstimationService,
    confidence_interval,
    fit,
    restore,
    seasonality_test,
    standard_errors,
    starting_values,
    summary_table,
    wald_z,
)
from .forecast import accuracy, fitted_values
from .simulation import simulate_series

__all__ = [
    "DiagnosticsService",
    "EstimationService",
    "accuracy",
    "acf",
    "confidence_interval",
    "diagnose",
    "diagnostics",
    "estimation",
    "fit",
    "fitted_values",
    "forecast",
    "ljung_box",
    "monti",
    "pacf",
    "residuals",
    "restore",
    "seasonality_test",
    "simulate_series",
    "simulation",
    "standard_errors",
    "starting_values",
    "summary_table",
    "wald_z",
]
