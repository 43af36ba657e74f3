"""Monte Carlo study configuration and report models."""

from enum import Enum
from typing import Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import get_settings

from .series import ModelOrder, ParamVector


class StudyKind(str, Enum):
    """Monte Carlo study types."""

    ESTIMATION = "estimation"
    SIZE = "size"
    POWER = "power"


class PowerScenario(str, Enum):
    """Misspecification used to generate nonnull data."""

    OMITTED_MA = "omitted_ma"
    OMITTED_AR = "omitted_ar"


def table_one_design() -> tuple:
    """βSARMA(1,1)×(1,1)_12 with γ = (−1, −0.5, 0.3, 0.4, −0.35, 120)."""
    order = ModelOrder(p=1, q=1, P=1, Q=1, S=12)
    params = ParamVector(beta=-1.0, ar=(-0.5,), sar=(0.3,), ma=(0.4,), sma=(-0.35,), precision=120.0)
    return order, params


def _default_order() -> ModelOrder:
    return table_one_design()[0]


def _default_params() -> ParamVector:
    return table_one_design()[1]


class McConfig(BaseModel):
    """Monte Carlo study configuration."""

    model_config = ConfigDict(frozen=True)

    study: StudyKind = Field(default=StudyKind.ESTIMATION, description="Study type")
    order: ModelOrder = Field(default_factory=_default_order, description="Model order")
    true_params: ParamVector = Field(default_factory=_default_params, description="True γ")
    sample_sizes: List[int] = Field(default_factory=lambda: [50, 100, 200, 500])
    replications: int = Field(default=500, ge=1, description="Replications R")
    seed: int = Field(default=2017, ge=0, description="Master seed")
    link: str = Field(default="logit", description="Link function for simulation and fitting")
    scenario: PowerScenario = Field(default=PowerScenario.OMITTED_AR)
    power_grid: List[float] = Field(
        default_factory=lambda: [round(0.05 * i, 2) for i in range(1, 13)]
    )
    nominal_levels: List[float] = Field(default_factory=lambda: [0.10, 0.05, 0.01])
    confidence_level: float = Field(
        default_factory=lambda: get_settings().confidence_level, gt=0, lt=1
    )
    b: Optional[int] = Field(default=None, ge=1, description="Portmanteau lags override")
    warmup: Optional[int] = Field(default=None, ge=0, description="Simulation warm-up override")
    workers: int = Field(
        default_factory=lambda: get_settings().mc_workers, ge=1, description="Parallel workers"
    )

    @model_validator(mode="after")
    def _consistent(self) -> "McConfig":
        self.true_params.check_order(self.order)
        if not self.sample_sizes:
            raise ValueError("at least one sample size is required")
        if any(not 0 < level <= 1 for level in self.nominal_levels):
            raise ValueError("nominal levels must lie in (0, 1]")
        return self


class EstimationRow(BaseModel):
    """Point-estimation summary of one parameter at one sample size."""

    sample_size: int
    parameter: str
    truth: float
    mean: float
    bias: float
    rb: float = Field(..., description="Relative bias in percent, 100·Bias/truth")
    sd: float
    mse: float
    coverage: float = Field(..., description="Empirical coverage of Wald intervals")


class RejectionRow(BaseModel):
    """Rejection rate of one test at one level, sample size and δ."""

    sample_size: int
    test: str
    level: float
    rate: float = Field(..., ge=0, le=1)
    delta: Optional[float] = None


class McReport(BaseModel):
    """Monte Carlo study results."""

    study: StudyKind
    replications: int
    estimation: List[EstimationRow] = Field(default_factory=list)
    rejection: List[RejectionRow] = Field(default_factory=list)
    failures: Dict[int, int] = Field(
        default_factory=dict, description="Non-converged replications per sample size"
    )

    def to_frame(self) -> pd.DataFrame:
        """Report rows as a DataFrame (estimation or rejection rows)."""
        rows = self.estimation if self.study == StudyKind.ESTIMATION else self.rejection
        return pd.DataFrame([row.model_dump() for row in rows])

    def rate(self, test: str, level: float, sample_size: int, delta: Optional[float] = None) -> float:
        """Look up one rejection rate."""
        for row in self.rejection:
            if (
                row.test == test
                and abs(row.level - level) < 1e-12
                and row.sample_size == sample_size
                and (delta is None or (row.delta is not None and abs(row.delta - delta) < 1e-12))
            ):
                return row.rate
        raise KeyError((test, level, sample_size, delta))

    def row(self, parameter: str, sample_size: int) -> EstimationRow:
        """Look up one estimation row."""
        for row in self.estimation:
            if row.parameter == parameter and row.sample_size == sample_size:
                return row
        raise KeyError((parameter, sample_size))
