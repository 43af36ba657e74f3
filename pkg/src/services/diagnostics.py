"""Residuals, correlograms, portmanteau tests, deviance and information criteria."""

from typing import Dict, Optional, Tuple

import numpy as np
import pandas as pd
from scipy import stats
from statsmodels.tsa.stattools import levinson_durbin

from src.core.links import get_link
from src.core.special import digamma, log_density, trigamma
from src.models import (
    AcfDenominator,
    Deviance,
    DiagnosticReport,
    FittedModel,
    InformationCriteria,
    ModelOrder,
    ResidualKind,
    ResidualSeries,
    WhiteNoiseResult,
)
from src.services.estimation import seasonality_test
from src.utils.errors import DomainError, InsufficientDataError, NotApplicableError


def residuals(fit: FittedModel, kind: ResidualKind = ResidualKind.WEIGHTED) -> ResidualSeries:
    """Residuals of a fitted model for t = m+1..n.

    Args:
        fit: Fitted model
        kind: standardized (response scale), predictor_scale, or weighted
            (y* scale standardized by its trigamma variance)

    Returns:
        ResidualSeries of length n − m
    """
    kind = ResidualKind(kind)
    m = fit.burn_in
    y = fit.series.values[m:]
    mu = fit.path.mu[m:]
    phi = fit.estimates.precision
    variance = mu * (1.0 - mu) / (1.0 + phi)

    if kind == ResidualKind.STANDARDIZED:
        values = (y - mu) / np.sqrt(variance)
    elif kind == ResidualKind.PREDICTOR_SCALE:
        link = get_link(fit.link_name)
        gprime = np.asarray(link.deriv(mu), dtype=float)
        values = (np.asarray(link.link(y)) - fit.path.eta[m:]) / np.sqrt(gprime**2 * variance)
    else:
        a, b = mu * phi, (1.0 - mu) * phi
        ystar = np.log(y) - np.log1p(-y)
        mustar = digamma(a) - digamma(b)
        values = (ystar - mustar) / np.sqrt(trigamma(a) + trigamma(b))
    return ResidualSeries(kind=kind, values=np.asarray(values, dtype=float))


def _values(values) -> np.ndarray:
    if isinstance(values, ResidualSeries):
        return values.values
    return np.asarray(values, dtype=float)


def acf(
    values, max_lag: int, denominator: AcfDenominator = AcfDenominator.FULL
) -> np.ndarray:
    """Sample autocorrelations ρ̂(0..max_lag) with mean-centred products.

    ``FULL`` divides every lag by the sum of squares over the whole sample;
    ``TRUNCATED`` divides lag i by the sum of squares of the first n − i terms.

    Raises:
        InsufficientDataError: If fewer than max_lag + 2 values are given
        DomainError: If the input is constant
    """
    x = _values(values)
    n = len(x)
    if n < max_lag + 2:
        raise InsufficientDataError(f"{n} values are too few for {max_lag} lags")
    centred = x - x.mean()
    total = float(centred @ centred)
    if total <= 0.0:
        raise DomainError("autocorrelation is undefined for a constant series")

    rho = np.empty(max_lag + 1)
    for lag in range(max_lag + 1):
        numerator = float(centred[: n - lag] @ centred[lag:])
        if AcfDenominator(denominator) == AcfDenominator.TRUNCATED:
            head = centred[: n - lag]
            rho[lag] = numerator / float(head @ head)
        else:
            rho[lag] = numerator / total
    return rho


def pacf(
    values, max_lag: int, denominator: AcfDenominator = AcfDenominator.FULL
) -> np.ndarray:
    """Partial autocorrelations p(1..max_lag) by Durbin–Levinson on the ACF."""
    if max_lag < 1:
        return np.empty(0)
    rho = acf(values, max_lag, denominator)
    _, _, partial, _, _ = levinson_durbin(rho, nlags=max_lag, isacov=True)
    return np.asarray(partial[1:], dtype=float)


def default_lags(order: ModelOrder) -> int:
    """Portmanteau lag count b = max(10, 2S)."""
    return max(10, 2 * order.S)


def acf_bands(n_eff: int) -> Tuple[float, float]:
    """Approximate 95% white-noise limits ±1.96/√(n − m)."""
    half = 1.96 / np.sqrt(n_eff)
    return -half, half


def _portmanteau(
    name: str, correlations: np.ndarray, n_eff: int, order: ModelOrder, b: int
) -> WhiteNoiseResult:
    df = b - order.p - order.q - order.P - order.Q
    if df < 1:
        raise NotApplicableError(f"{name} needs b − p − q − P − Q ≥ 1, got {df}")
    lags = np.arange(1, b + 1)
    statistic = n_eff * (n_eff + 2) * float(np.sum(correlations**2 / (n_eff - lags)))
    return WhiteNoiseResult(
        test=name,
        statistic=statistic,
        b=b,
        df=df,
        p_value=float(stats.chi2.sf(statistic, df)),
    )


def ljung_box(
    residual_series,
    order: ModelOrder,
    b: Optional[int] = None,
    denominator: AcfDenominator = AcfDenominator.FULL,
) -> WhiteNoiseResult:
    """Ljung-Box test on the first b residual autocorrelations, χ² with b − p − q − P − Q df."""
    b = b or default_lags(order)
    x = _values(residual_series)
    return _portmanteau("ljung_box", acf(x, b, denominator)[1:], len(x), order, b)


def monti(
    residual_series,
    order: ModelOrder,
    b: Optional[int] = None,
    denominator: AcfDenominator = AcfDenominator.FULL,
) -> WhiteNoiseResult:
    """Monti test: the Ljung-Box form applied to residual partial autocorrelations."""
    b = b or default_lags(order)
    x = _values(residual_series)
    return _portmanteau("monti", pacf(x, b, denominator), len(x), order, b)


def deviance(fit: FittedModel) -> Deviance:
    """D = 2(ℓ̃ − ℓ̂) with ℓ̃ evaluated at μ̃_t = y_t and the fitted precision.

    Returns:
        Deviance (D, D / (n − m − k))
    """
    m = fit.burn_in
    y = fit.series.values[m:]
    phi = fit.estimates.precision
    saturated = float(np.sum(log_density(y, y, phi)))
    fitted = float(np.sum(log_density(y, fit.path.mu[m:], phi)))
    value = max(2.0 * (saturated - fitted), 0.0)
    dof = fit.n_eff - fit.order.n_params
    return Deviance(value, value / dof if dof > 0 else float("nan"))


def information_criteria(fit: FittedModel) -> InformationCriteria:
    """MAIC, MSIC and MHQ based on ℓ̂* = ℓ̂ · n / (n − m)."""
    return criteria_from_loglik(fit.loglik, fit.n, fit.burn_in, fit.order.n_params)


def criteria_from_loglik(loglik: float, n: int, m: int, k: int) -> InformationCriteria:
    """Information criteria from a log-likelihood and the sample bookkeeping."""
    rescaled = loglik * n / (n - m)
    return InformationCriteria(
        maic=-2.0 * rescaled + 2.0 * k,
        msic=-2.0 * rescaled + np.log(n) * k,
        mhq=-2.0 * rescaled + np.log(np.log(n)) * k,
    )


def qq_coordinates(values) -> Tuple[np.ndarray, np.ndarray]:
    """Normal QQ pairs (theoretical quantile, sorted sample value)."""
    x = np.sort(_values(values))
    positions = (np.arange(1, len(x) + 1) - 0.5) / len(x)
    return stats.norm.ppf(positions), x


def residual_density(values, grid: Optional[np.ndarray] = None, points: int = 101):
    """Gaussian kernel density of residuals next to the standard normal density.

    Returns:
        Tuple (grid, kernel density, standard normal density)
    """
    x = _values(values)
    if grid is None:
        span = max(4.0, float(np.max(np.abs(x))))
        grid = np.linspace(-span, span, points)
    kde = stats.gaussian_kde(x)
    return grid, kde(grid), stats.norm.pdf(grid)


def diagnose(
    fit: FittedModel,
    b: Optional[int] = None,
    denominator: AcfDenominator = AcfDenominator.FULL,
) -> DiagnosticReport:
    """Deviance, criteria, white-noise tests and (when seasonal) the seasonality test.

    Raises:
        NotApplicableError: If b leaves the portmanteau tests without degrees of freedom
        InsufficientDataError: If the residual series is shorter than b + 2
    """
    weighted = residuals(fit, ResidualKind.WEIGHTED)
    b = b or default_lags(fit.order)
    report = {
        "loglik": fit.loglik,
        "deviance": deviance(fit),
        "criteria": information_criteria(fit),
        "ljung_box": ljung_box(weighted, fit.order, b, denominator),
        "monti": monti(weighted, fit.order, b, denominator),
    }
    if fit.order.is_seasonal and fit.covariance is not None:
        report["seasonality"] = seasonality_test(fit)
    return DiagnosticReport(**report)


class DiagnosticsService:
    """Residual diagnostics of fitted models under fixed lag and denominator choices."""

    def __init__(
        self, b: Optional[int] = None, denominator: AcfDenominator = AcfDenominator.FULL
    ):
        """Initialize the diagnostics service.

        Args:
            b: Portmanteau and correlogram lags, ``default_lags(order)`` when None
            denominator: Autocorrelation denominator
        """
        self.b = b
        self.denominator = AcfDenominator(denominator)

    def lags(self, order: ModelOrder) -> int:
        return self.b or default_lags(order)

    def report(self, fit: FittedModel) -> DiagnosticReport:
        return diagnose(fit, self.b, self.denominator)

    def residual_table(self, fit: FittedModel) -> Dict[str, np.ndarray]:
        """All residual definitions over t = m+1..n, keyed by kind."""
        return {kind.value: residuals(fit, kind).values for kind in ResidualKind}

    def correlogram(self, fit: FittedModel) -> pd.DataFrame:
        """ACF and PACF of the weighted residuals with the ±1.96/√(n−m) bands."""
        weighted = residuals(fit, ResidualKind.WEIGHTED).values
        max_lag = min(self.lags(fit.order), len(weighted) - 2)
        lower, upper = acf_bands(len(weighted))
        return pd.DataFrame(
            {
                "lag": np.arange(1, max_lag + 1),
                "acf": acf(weighted, max_lag, self.denominator)[1:],
                "pacf": pacf(weighted, max_lag, self.denominator),
                "lower": lower,
                "upper": upper,
            }
        )
