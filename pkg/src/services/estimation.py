"""Conditional maximum likelihood estimation and Wald-type inference."""

from typing import List, Optional, Union

import numpy as np
from scipy import optimize, stats

from config import Settings, get_settings
from src.core.likelihood import LikelihoodKernel
from src.core.links import LOGIT, Link
from src.core.recursion import burn_in, series_values
from src.models import (
    EstimateRow,
    FitOptions,
    FittedModel,
    Interval,
    ModelOrder,
    ParamVector,
    PredictorPath,
    SeasonalityTest,
    SeriesData,
    ZTest,
)
from src.utils import get_logger
from src.utils.errors import (
    CovarianceUnavailableError,
    DomainError,
    InsufficientDataError,
    NotApplicableError,
)

logger = get_logger(__name__)

ParamIndex = Union[int, str]


def _as_series(series) -> SeriesData:
    if isinstance(series, SeriesData):
        return series
    return SeriesData(values=series_values(series))


def starting_values(order: ModelOrder, series, link: Link = LOGIT) -> ParamVector:
    """Least-squares starting point for the optimizer.

    β, φ and Φ come from regressing g(y_t) on an intercept, g(y_{t−1})..g(y_{t−p})
    and g(y_{t−S})..g(y_{t−PS}); θ and Θ start at zero; the precision starts at
    max(mean(μ̂(1−μ̂)/σ̂²) − 1, 0.1). A rank-deficient design falls back to
    β = mean g(y), zero coefficients and ϕ = 1.

    Args:
        order: Model order
        series: Observations in (0, 1)
        link: Link function

    Returns:
        Starting parameter vector

    Raises:
        InsufficientDataError: If n ≤ m + p + P + 1
    """
    y = series_values(series)
    n, m = len(y), burn_in(order)
    if n <= m + order.p + order.P + 1:
        raise InsufficientDataError(
            f"{n} observations are too few for starting values of {order.label()}"
        )
    gy = np.asarray(link.link(y), dtype=float)
    lags = list(range(1, order.p + 1)) + [I * order.S for I in range(1, order.P + 1)]
    design = np.column_stack([np.ones(n - m)] + [gy[m - lag : n - lag] for lag in lags])
    target = gy[m:]

    coef, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    fallback = ParamVector(
        beta=float(np.mean(gy)),
        ar=(0.0,) * order.p,
        sar=(0.0,) * order.P,
        ma=(0.0,) * order.q,
        sma=(0.0,) * order.Q,
        precision=1.0,
    )
    if rank < design.shape[1]:
        logger.debug("rank-deficient starting design, using fallback", order=order.label())
        return fallback

    mu_hat = np.asarray(link.inverse(design @ coef), dtype=float)
    sigma2 = np.sum((y[m:] - mu_hat) ** 2) / (len(target) - design.shape[1])
    if sigma2 > 0.0 and np.isfinite(sigma2):
        precision = max(float(np.mean(mu_hat * (1.0 - mu_hat) / sigma2)) - 1.0, 0.1)
    else:
        precision = fallback.precision

    return ParamVector(
        beta=float(coef[0]),
        ar=tuple(coef[1 : 1 + order.p]),
        sar=tuple(coef[1 + order.p :]),
        ma=(0.0,) * order.q,
        sma=(0.0,) * order.Q,
        precision=precision,
    )


def fit(
    order: ModelOrder,
    series,
    options: Optional[FitOptions] = None,
    link: Link = LOGIT,
    start: Optional[ParamVector] = None,
) -> FittedModel:
    """Maximize the conditional log-likelihood with BFGS and the analytic score.

    The objective is the log-likelihood divided by (n − m), which makes the
    identity inverse-Hessian seed equivalent to I/(n − m) on the raw scale.
    Points with non-positive precision evaluate to −∞ and are rejected by the
    line search.

    Args:
        order: Model order
        series: Observations in (0, 1)
        options: Optimizer controls (defaults from settings)
        link: Link function
        start: Optional starting point (defaults to ``starting_values``)

    Returns:
        FittedModel; ``converged`` is False when the optimizer gave up and
        ``covariance`` is None when the information matrix is singular

    Raises:
        InsufficientDataError: If n ≤ m + k
    """
    options = options or FitOptions.from_settings(get_settings())
    data = _as_series(series)
    kernel = LikelihoodKernel(order, data, link)
    if kernel.n <= kernel.m + order.n_params:
        raise InsufficientDataError(
            f"{kernel.n} observations are too few to fit {order.label()} (m={kernel.m}, "
            f"k={order.n_params})"
        )
    if start is None:
        start = starting_values(order, data, link)
    start.check_order(order)
    theta0 = start.to_array()
    scale = float(kernel.n_eff)
    zeros = np.zeros(order.n_params)

    def objective(theta: np.ndarray):
        if not np.all(np.isfinite(theta)) or theta[-1] <= 0.0:
            return np.inf, zeros
        try:
            loglik, grad, _ = kernel.evaluate(theta)
        except DomainError:
            return np.inf, zeros
        if not np.isfinite(loglik) or not np.all(np.isfinite(grad)):
            return np.inf, zeros
        return -loglik / scale, -grad / scale

    result = optimize.minimize(
        objective,
        theta0,
        jac=True,
        method="BFGS",
        options={
            "maxiter": options.max_iterations,
            "gtol": options.gradient_tolerance,
            "xrtol": options.step_tolerance,
            "norm": np.inf,
        },
    )

    theta_hat = np.asarray(result.x, dtype=float)
    start_value, _ = objective(theta0)
    end_value, end_grad = objective(theta_hat)
    if not end_value <= start_value:
        theta_hat, end_value, end_grad = theta0, start_value, objective(theta0)[1]

    grad_norm = float(np.max(np.abs(end_grad)))
    converged = bool(
        np.isfinite(end_value)
        and (result.success or (result.status == 2 and grad_norm <= options.acceptance_tolerance))
    )

    logger.debug(
        "fit finished",
        order=order.label(),
        iterations=int(result.nit),
        converged=converged,
        scaled_gradient=grad_norm,
    )
    return _fitted_model(
        kernel,
        data,
        theta_hat,
        converged=converged,
        iterations=int(result.nit),
        message=str(result.message),
    )


def _fitted_model(
    kernel: LikelihoodKernel, data: SeriesData, theta: np.ndarray, **status
) -> FittedModel:
    loglik, _, info = kernel.evaluate(theta, information=True)
    covariance = _invert_information(info)
    if covariance is None:
        logger.warning(
            "information matrix is singular at the estimates", order=kernel.order.label()
        )
    eta, mu, err = kernel.path(theta)
    return FittedModel(
        order=kernel.order,
        estimates=ParamVector.from_array(kernel.order, theta),
        covariance=covariance,
        loglik=loglik,
        path=PredictorPath(eta=eta, mu=mu, err=err, burn_in=kernel.m),
        series=data,
        link_name=kernel.link.name,
        **status,
    )


def restore(order: ModelOrder, estimates: ParamVector, series, link: Link = LOGIT) -> FittedModel:
    """Rebuild a fit from stored estimates without re-optimizing.

    The predictor path, log-likelihood and covariance are recomputed at
    ``estimates``, so a fit reloaded from full-precision estimates reproduces
    the original fitted values exactly.
    """
    estimates.check_order(order)
    data = _as_series(series)
    kernel = LikelihoodKernel(order, data, link)
    return _fitted_model(
        kernel, data, estimates.to_array(), converged=True, iterations=0, message="restored"
    )


def _invert_information(info: np.ndarray) -> Optional[np.ndarray]:
    if not np.all(np.isfinite(info)):
        return None
    try:
        covariance = np.linalg.inv(info)
    except np.linalg.LinAlgError:
        return None
    covariance = 0.5 * (covariance + covariance.T)
    if not np.all(np.isfinite(covariance)) or np.any(np.diag(covariance) < 0.0):
        return None
    return covariance


def _position(fit: FittedModel, index: ParamIndex) -> int:
    if isinstance(index, str):
        names = fit.parameter_names()
        if index not in names:
            raise KeyError(f"unknown parameter '{index}', expected one of {names}")
        return names.index(index)
    if not 0 <= index < fit.order.n_params:
        raise IndexError(f"parameter index {index} out of range")
    return index


def _require_covariance(fit: FittedModel) -> np.ndarray:
    if fit.covariance is None:
        raise CovarianceUnavailableError("the fitted model has no covariance matrix")
    return fit.covariance


def standard_errors(fit: FittedModel) -> np.ndarray:
    """Square roots of the diagonal of K⁻¹ at the estimates."""
    return np.sqrt(np.diag(_require_covariance(fit)))


def confidence_interval(fit: FittedModel, index: ParamIndex, level: float = 0.95) -> Interval:
    """Wald interval γ̂_r ± z_{(1+level)/2}·se(γ̂_r).

    Args:
        fit: Fitted model with covariance
        index: Canonical position or parameter name
        level: Coverage level in (0, 1)

    Returns:
        Interval (lower, upper)
    """
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")
    r = _position(fit, index)
    se = float(np.sqrt(_require_covariance(fit)[r, r]))
    estimate = float(fit.estimates.to_array()[r])
    half = float(stats.norm.ppf(0.5 * (1.0 + level))) * se
    return Interval(estimate - half, estimate + half)


def wald_z(fit: FittedModel, index: ParamIndex, null_value: float = 0.0) -> ZTest:
    """Signed square root of the Wald statistic for H₀: γ_r = null_value.

    Returns:
        ZTest (z, two-sided p-value)
    """
    r = _position(fit, index)
    se = float(np.sqrt(_require_covariance(fit)[r, r]))
    diff = float(fit.estimates.to_array()[r]) - null_value
    if diff == 0.0:
        return ZTest(0.0, 1.0)
    z = diff / se if se > 0.0 else float(np.copysign(np.inf, diff))
    return ZTest(z, float(2.0 * stats.norm.sf(abs(z))))


def seasonality_test(fit: FittedModel) -> SeasonalityTest:
    """Wald test of H₀: (Φ₁..Φ_P, Θ₁..Θ_Q) = 0.

    Returns:
        SeasonalityTest (W, P + Q, p-value from χ²_{P+Q})

    Raises:
        NotApplicableError: If the model has no seasonal coefficients
        CovarianceUnavailableError: If the fit has no covariance
    """
    order = fit.order
    if not order.is_seasonal:
        raise NotApplicableError("seasonality test needs P + Q ≥ 1")
    covariance = _require_covariance(fit)
    idx = ParamVector.seasonal_indices(order)
    block = covariance[np.ix_(idx, idx)]
    seasonal = fit.estimates.to_array()[idx]
    statistic = max(float(seasonal @ np.linalg.solve(block, seasonal)), 0.0)
    df = len(idx)
    return SeasonalityTest(statistic, df, float(stats.chi2.sf(statistic, df)))


def summary_table(fit: FittedModel, level: float = 0.95) -> List[EstimateRow]:
    """Estimate, standard error, z statistic, p-value and Wald interval per parameter."""
    estimates = fit.estimates.to_array()
    rows = []
    for r, name in enumerate(fit.parameter_names()):
        if fit.covariance is None:
            rows.append(EstimateRow(name=name, estimate=float(estimates[r])))
            continue
        test = wald_z(fit, r)
        interval = confidence_interval(fit, r, level)
        rows.append(
            EstimateRow(
                name=name,
                estimate=float(estimates[r]),
                std_error=float(np.sqrt(fit.covariance[r, r])),
                z_stat=test.z,
                p_value=test.p_value,
                lower=interval.lower,
                upper=interval.upper,
            )
        )
    return rows


class EstimationService:
    """Settings-bound fitting and inference for one link function."""

    def __init__(self, settings: Settings, link: Link = LOGIT):
        """Initialize the estimation service.

        Args:
            settings: Toolkit settings (optimizer controls, confidence level)
            link: Link function used for every fit
        """
        self.settings = settings
        self.link = link
        self.options = FitOptions.from_settings(settings)
        logger.debug("Estimation service initialized", link=link.name)

    def fit(self, order: ModelOrder, series, start: Optional[ParamVector] = None) -> FittedModel:
        fitted = fit(order, series, self.options, self.link, start)
        logger.info(
            "Model fitted",
            order=order.label(),
            n=fitted.n,
            loglik=round(fitted.loglik, 6),
            converged=fitted.converged,
        )
        return fitted

    def restore(self, order: ModelOrder, estimates: ParamVector, series) -> FittedModel:
        return restore(order, estimates, series, self.link)

    def summary(self, fitted: FittedModel, level: Optional[float] = None) -> List[EstimateRow]:
        """Estimate table at ``level``, the configured confidence level by default."""
        return summary_table(fitted, level or self.settings.confidence_level)
