"""In-sample fitted values, out-of-sample mean forecasts and accuracy metrics."""

from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from src.core.links import get_link
from src.core.recursion import lag_polynomial, split_params
from src.models import Accuracy, FittedModel, ForecastResult
from src.utils.errors import DomainError
from src.utils.logger import get_logger

logger = get_logger(__name__)


def fitted_values(fit: FittedModel) -> np.ndarray:
    """In-sample means μ̂_t for t = m+1..n."""
    return fit.path.mu[fit.burn_in :].copy()


def _continue_labels(labels: Optional[List[str]], horizon: int) -> Optional[List[str]]:
    """Extend date labels by the inferred frequency; None when none can be inferred."""
    if not labels or len(labels) < 3:
        return None
    try:
        index = pd.DatetimeIndex(pd.to_datetime(labels))
        freq = pd.infer_freq(index)
    except (ValueError, TypeError):
        return None
    if freq is None:
        return None
    future = pd.date_range(start=index[-1], periods=horizon + 1, freq=freq)[1:]
    return [stamp.strftime("%Y-%m-%d") for stamp in future]


def forecast(fit: FittedModel, h: int) -> ForecastResult:
    """Mean forecasts μ̂_{n+1..n+h} through the expanded predictor.

    Past the sample end, g(y_t) is replaced by g(μ̂_t) and the error r_t by
    zero; inside the sample the observed values and fitted errors are used.

    Args:
        fit: Fitted model
        h: Horizon, at least one

    Returns:
        ForecastResult with ``h`` means in (0, 1)
    """
    if h < 1:
        raise DomainError(f"forecast horizon must be at least 1, got {h}")

    link = get_link(fit.link_name)
    parts = split_params(fit.order, fit.estimates.to_array())
    poly = lag_polynomial(fit.order, parts.ar, parts.sar, parts.ma, parts.sma)

    n = fit.n
    gy = np.concatenate([np.asarray(link.link(fit.series.values), dtype=float), np.zeros(h)])
    err = np.concatenate([fit.path.err, np.zeros(h)])
    means = np.empty(h)
    for step in range(h):
        t = n + step
        eta = parts.beta
        for lag, coef in poly.g_lags.items():
            eta += coef * gy[t - lag]
        for lag, coef in poly.r_lags.items():
            eta += coef * err[t - lag]
        means[step] = float(link.inverse(eta))
        gy[t] = link.link(means[step])

    logger.debug("forecast computed", horizon=h, last=means[-1])
    return ForecastResult(horizon=h, means=means, labels=_continue_labels(fit.series.labels, h))


def accuracy(forecasts: Sequence[float], actuals: Sequence[float]) -> Accuracy:
    """MSE and MAPE of forecasts against held-out actuals (actuals as MAPE denominator)."""
    f = np.asarray(forecasts, dtype=float)
    a = np.asarray(actuals, dtype=float)
    if f.shape != a.shape:
        raise ValueError(f"forecasts ({f.size}) and actuals ({a.size}) differ in length")
    if f.size == 0:
        raise ValueError("accuracy needs at least one forecast")
    if np.any((a <= 0.0) | (a >= 1.0)):
        raise DomainError("actuals must lie in the open interval (0, 1)")
    diff = f - a
    return Accuracy(mse=float(np.mean(diff**2)), mape=float(np.mean(np.abs(diff) / a)))
