"""Data models module."""

from .cli import Command, CliConfig
from .results import (
    Accuracy,
    AcfDenominator,
    Deviance,
    DiagnosticReport,
    EstimateRow,
    FitOptions,
    FittedModel,
    ForecastResult,
    InformationCriteria,
    Interval,
    ResidualKind,
    ResidualSeries,
    SeasonalityTest,
    WhiteNoiseResult,
    ZTest,
)
from .series import BetaParams, EtaJacobian, ModelOrder, ParamVector, PredictorPath, SeriesData
from .study import (
    EstimationRow,
    McConfig,
    McReport,
    PowerScenario,
    RejectionRow,
    StudyKind,
    table_one_design,
)

__all__ = [
    "Accuracy",
    "AcfDenominator",
    "BetaParams",
    "CliConfig",
    "Command",
    "Deviance",
    "DiagnosticReport",
    "EstimateRow",
    "EstimationRow",
    "EtaJacobian",
    "FitOptions",
    "FittedModel",
    "ForecastResult",
    "InformationCriteria",
    "Interval",
    "McConfig",
    "McReport",
    "ModelOrder",
    "ParamVector",
    "PowerScenario",
    "PredictorPath",
    "RejectionRow",
    "ResidualKind",
    "ResidualSeries",
    "SeasonalityTest",
    "SeriesData",
    "StudyKind",
    "WhiteNoiseResult",
    "ZTest",
    "table_one_design",
]
