"""Agents module."""

from .montecarlo import MonteCarloStudy, alternative_design, replication_rng

__all__ = ["MonteCarloStudy", "alternative_design", "replication_rng"]
