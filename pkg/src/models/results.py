"""Result models for estimation, diagnostics and forecasting."""

from enum import Enum
from typing import List, NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .series import ModelOrder, ParamVector, PredictorPath, SeriesData


class FitOptions(BaseModel):
    """Optimizer controls for conditional maximum likelihood."""

    model_config = ConfigDict(frozen=True)

    max_iterations: int = Field(default=500, gt=0, description="BFGS iteration cap")
    gradient_tolerance: float = Field(
        default=1e-8, gt=0, description="Max abs score divided by (n − m)"
    )
    step_tolerance: float = Field(default=1e-10, gt=0, description="Relative step tolerance")
    acceptance_tolerance: float = Field(
        default=1e-6,
        gt=0,
        description="Scaled gradient level accepted when the line search stalls",
    )

    @classmethod
    def from_settings(cls, settings) -> "FitOptions":
        """Build options from toolkit settings."""
        return cls(
            max_iterations=settings.max_iterations,
            gradient_tolerance=settings.gradient_tolerance,
            step_tolerance=settings.step_tolerance,
            acceptance_tolerance=settings.acceptance_tolerance,
        )


class FittedModel(BaseModel):
    """Outcome of a conditional maximum likelihood fit."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    order: ModelOrder = Field(..., description="Fitted order")
    estimates: ParamVector = Field(..., description="Conditional MLE")
    covariance: Optional[np.ndarray] = Field(
        default=None, description="Inverse conditional information, None if singular"
    )
    loglik: float = Field(..., description="Maximized conditional log-likelihood")
    path: PredictorPath = Field(..., description="Predictor path at the estimates")
    converged: bool = Field(..., description="Optimizer convergence flag")
    iterations: int = Field(..., ge=0, description="Optimizer iterations")
    series: SeriesData = Field(..., description="Data the model was fitted to")
    link_name: str = Field(default="logit", description="Link function name")
    message: str = Field(default="", description="Optimizer termination message")

    @property
    def covariance_available(self) -> bool:
        return self.covariance is not None

    @property
    def n(self) -> int:
        return len(self.series)

    @property
    def burn_in(self) -> int:
        return self.path.burn_in

    @property
    def n_eff(self) -> int:
        return self.n - self.burn_in

    def parameter_names(self) -> List[str]:
        return ParamVector.names(self.order)


class ResidualKind(str, Enum):
    """Residual definitions."""

    STANDARDIZED = "standardized"
    PREDICTOR_SCALE = "predictor_scale"
    WEIGHTED = "weighted"


class AcfDenominator(str, Enum):
    """Denominator of the sample autocorrelation."""

    FULL = "full"
    TRUNCATED = "truncated"


class ResidualSeries(BaseModel):
    """Residuals for t = m+1..n."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: ResidualKind = Field(..., description="Residual definition")
    values: np.ndarray = Field(..., description="Residual values")

    def __len__(self) -> int:
        return len(self.values)


class WhiteNoiseResult(BaseModel):
    """Portmanteau test outcome."""

    model_config = ConfigDict(frozen=True)

    test: str = Field(..., description="Test name")
    statistic: float = Field(..., ge=0, description="Test statistic")
    b: int = Field(..., ge=1, description="Number of lags tested")
    df: int = Field(..., ge=1, description="Degrees of freedom b − p − q − P − Q")
    p_value: float = Field(..., ge=0, le=1, description="Upper χ² tail probability")


class Interval(NamedTuple):
    lower: float
    upper: float


class ZTest(NamedTuple):
    z: float
    p_value: float


class SeasonalityTest(NamedTuple):
    statistic: float
    df: int
    p_value: float


class Deviance(NamedTuple):
    value: float
    scaled: float


class InformationCriteria(NamedTuple):
    maic: float
    msic: float
    mhq: float


class Accuracy(NamedTuple):
    mse: float
    mape: float


class EstimateRow(BaseModel):
    """One line of the estimate table."""

    name: str
    estimate: float
    std_error: Optional[float] = None
    z_stat: Optional[float] = None
    p_value: Optional[float] = None
    lower: Optional[float] = None
    upper: Optional[float] = None


class DiagnosticReport(BaseModel):
    """Goodness-of-fit summary of a fitted model."""

    loglik: float
    deviance: Deviance
    criteria: InformationCriteria
    ljung_box: Optional[WhiteNoiseResult] = None
    monti: Optional[WhiteNoiseResult] = None
    seasonality: Optional[SeasonalityTest] = None


class ForecastResult(BaseModel):
    """Out-of-sample mean forecasts μ̂_{n+1..n+h}."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    horizon: int = Field(..., ge=1, description="Forecast horizon h")
    means: np.ndarray = Field(..., description="Forecast means in (0, 1)")
    labels: Optional[List[str]] = Field(default=None, description="Labels of forecast steps")
