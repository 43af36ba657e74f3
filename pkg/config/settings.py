"""Toolkit settings and configuration management."""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings, overridable through ``BSARMA_*`` environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="BSARMA_",
        case_sensitive=False,
        extra="ignore",
    )

    debug: bool = Field(default=False, description="Debug mode")

    # Optimizer
    max_iterations: int = Field(default=500, gt=0, description="BFGS iteration cap")
    gradient_tolerance: float = Field(
        default=1e-8, gt=0, description="Max abs score divided by (n - m) at convergence"
    )
    step_tolerance: float = Field(
        default=1e-10, gt=0, description="Relative step size at convergence"
    )
    acceptance_tolerance: float = Field(
        default=1e-6,
        gt=0,
        description="Scaled gradient level at which a stalled line search still counts as converged",
    )

    # Inference
    confidence_level: float = Field(
        default=0.95, gt=0, lt=1, description="Default confidence interval level"
    )

    # Simulation and Monte Carlo
    warmup_extra: int = Field(
        default=50, ge=0, description="Discarded draws beyond the burn-in when simulating"
    )
    mc_workers: int = Field(default=1, ge=1, description="Parallel workers for replications")

    # Reports
    report_decimals: int = Field(default=4, ge=0, description="Decimals in human tables")


@lru_cache()
def get_settings() -> Settings:
    """Get cached toolkit settings."""
    return Settings()
