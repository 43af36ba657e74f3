"""beta-sarma: beta seasonal ARMA models for rates and proportions."""

__version__ = "1.0.0"
__description__ = "Estimation, diagnostics, forecasting and Monte Carlo studies for βSARMA models"
