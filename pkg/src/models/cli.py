"""Command-line configuration model."""

from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import get_settings

from .results import AcfDenominator
from .series import ModelOrder, ParamVector
from .study import PowerScenario, StudyKind


class Command(str, Enum):
    """CLI commands."""

    FIT = "fit"
    FORECAST = "forecast"
    DIAGNOSE = "diagnose"
    SIMULATE = "simulate"
    MC_STUDY = "mc-study"


DATA_COMMANDS = {Command.FIT, Command.FORECAST, Command.DIAGNOSE}


class CliConfig(BaseModel):
    """Validated command-line request."""

    model_config = ConfigDict(frozen=True)

    command: Command = Field(..., description="Command to run")
    input: Optional[Path] = Field(default=None, description="Input CSV path")
    output: Path = Field(default=Path("."), description="Output directory")
    order: ModelOrder = Field(..., description="Model order")
    link: str = Field(default="logit", description="Link function name")
    holdout: int = Field(default=0, ge=0, description="Observations held out for accuracy")
    horizon: int = Field(default=10, ge=1, description="Forecast horizon")
    seed: int = Field(default=0, ge=0, description="Random seed")
    replications: int = Field(default=500, ge=1, description="Monte Carlo replications")
    b: Optional[int] = Field(default=None, ge=1, description="Portmanteau lags override")
    level: float = Field(
        default_factory=lambda: get_settings().confidence_level,
        gt=0,
        lt=1,
        description="Confidence level",
    )
    n: int = Field(default=500, ge=1, description="Simulated series length")
    params: Optional[ParamVector] = Field(default=None, description="Parameters for simulation")
    sample_sizes: List[int] = Field(default_factory=lambda: [50, 100, 200, 500])
    study: StudyKind = Field(default=StudyKind.ESTIMATION)
    scenario: PowerScenario = Field(default=PowerScenario.OMITTED_AR)
    deltas: Optional[List[float]] = Field(default=None, description="Power δ grid")
    workers: int = Field(default_factory=lambda: get_settings().mc_workers, ge=1)
    denominator: AcfDenominator = Field(default=AcfDenominator.FULL)
    allow_nonconverged: bool = Field(default=False)
    debug: bool = Field(default=False)

    @model_validator(mode="after")
    def _requirements(self) -> "CliConfig":
        if self.command in DATA_COMMANDS and self.input is None:
            raise ValueError(f"'{self.command.value}' requires --input")
        if self.command == Command.FORECAST and self.holdout > self.horizon:
            raise ValueError(
                f"horizon {self.horizon} does not cover the {self.holdout} held-out observations"
            )
        if self.params is not None:
            self.params.check_order(self.order)
        return self
