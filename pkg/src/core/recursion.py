"""Linear-predictor recursion of the βSARMA model.

η_t = β + Σ_l a_l g(y_{t−l}) + Σ_l b_l r_{t−l}, with the lag coefficients a, b
obtained by multiplying out Φ(B^S)φ(B) and Θ(B^S)θ(B).
"""

from typing import Dict, NamedTuple, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.core.links import LOGIT, Link
from src.core.special import check_open_unit
from src.models import ModelOrder, ParamVector, PredictorPath, SeriesData
from src.utils.errors import DomainError, InsufficientDataError


class SplitParams(NamedTuple):
    beta: float
    ar: np.ndarray
    sar: np.ndarray
    ma: np.ndarray
    sma: np.ndarray
    precision: float


class LagPolynomial(BaseModel):
    """Expanded lag coefficients of the predictor on g(y) and on r."""

    model_config = ConfigDict(frozen=True)

    g_lags: Dict[int, float] = Field(default_factory=dict, description="Coefficient of g(y_{t−l})")
    r_lags: Dict[int, float] = Field(default_factory=dict, description="Coefficient of r_{t−l}")

    @staticmethod
    def _arrays(lags: Dict[int, float]) -> Tuple[np.ndarray, np.ndarray]:
        keys = sorted(lags)
        return np.array(keys, dtype=int), np.array([lags[k] for k in keys], dtype=float)

    def g_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return self._arrays(self.g_lags)

    def r_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return self._arrays(self.r_lags)


def burn_in(order: ModelOrder) -> int:
    """Number of conditioning observations m = max(P·S + p, Q·S + q)."""
    return max(order.P * order.S + order.p, order.Q * order.S + order.q)


def split_params(order: ModelOrder, theta: np.ndarray) -> SplitParams:
    """Split a canonical parameter array (β, φ, Φ, θ, Θ, ϕ) into its blocks."""
    theta = np.asarray(theta, dtype=float)
    cuts = np.cumsum([1, order.p, order.P, order.q, order.Q])
    _, ar, sar, ma, sma, tail = np.split(theta, cuts)
    return SplitParams(float(theta[0]), ar, sar, ma, sma, float(tail[0]))


def lag_polynomial(
    order: ModelOrder, ar: np.ndarray, sar: np.ndarray, ma: np.ndarray, sma: np.ndarray
) -> LagPolynomial:
    """Multiply out the AR and MA polynomial pairs of an order.

    Cross terms carry −φᵢΦ_I on g(y_{t−i−IS}) and +θⱼΘ_J on r_{t−j−JS}; lags
    shared by several terms are summed.
    """
    S = order.S
    g_lags: Dict[int, float] = {}
    r_lags: Dict[int, float] = {}

    def add(target: Dict[int, float], lag: int, value: float) -> None:
        target[lag] = target.get(lag, 0.0) + float(value)

    for i in range(order.p):
        add(g_lags, i + 1, ar[i])
    for I in range(order.P):
        add(g_lags, (I + 1) * S, sar[I])
    for i in range(order.p):
        for I in range(order.P):
            add(g_lags, i + 1 + (I + 1) * S, -ar[i] * sar[I])

    for j in range(order.q):
        add(r_lags, j + 1, -ma[j])
    for J in range(order.Q):
        add(r_lags, (J + 1) * S, -sma[J])
    for j in range(order.q):
        for J in range(order.Q):
            add(r_lags, j + 1 + (J + 1) * S, ma[j] * sma[J])

    return LagPolynomial(g_lags=g_lags, r_lags=r_lags)


def expand_polynomials(order: ModelOrder, params: ParamVector) -> LagPolynomial:
    """Expanded lag coefficients of Φ(B^S)φ(B) on g(y) and Θ(B^S)θ(B) on r.

    Args:
        order: Model order
        params: Parameters matching the order

    Returns:
        Coefficient maps keyed by lag
    """
    params.check_order(order)
    return lag_polynomial(
        order,
        np.asarray(params.ar),
        np.asarray(params.sar),
        np.asarray(params.ma),
        np.asarray(params.sma),
    )


def series_values(series) -> np.ndarray:
    """Observations of a SeriesData or an array-like, validated against (0, 1)."""
    if isinstance(series, SeriesData):
        return series.values
    values = check_open_unit(np.asarray(series, dtype=float), "series")
    if values.ndim != 1:
        raise DomainError("series must be one dimensional")
    return values


def filter_path(
    order: ModelOrder, theta: np.ndarray, gy: np.ndarray, link: Link = LOGIT
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Run the predictor recursion on transformed observations.

    Args:
        order: Model order
        theta: Canonical parameter array
        gy: g(y_t), t = 1..n
        link: Link used to map η to μ

    Returns:
        Tuple (eta, mu, err) of length-n arrays
    """
    n = len(gy)
    m = burn_in(order)
    if n <= m:
        raise InsufficientDataError(f"series of length {n} needs more than m = {m} observations")

    parts = split_params(order, theta)
    poly = lag_polynomial(order, parts.ar, parts.sar, parts.ma, parts.sma)

    eta = np.array(gy, dtype=float)
    err = np.zeros(n)
    base = np.full(n - m, parts.beta)
    for lag, coef in poly.g_lags.items():
        base += coef * gy[m - lag : n - lag]

    if poly.r_lags:
        r_lags, r_coefs = poly.r_arrays()
        for t in range(m, n):
            eta[t] = base[t - m] + r_coefs @ err[t - r_lags]
            err[t] = gy[t] - eta[t]
    else:
        eta[m:] = base
        err[m:] = gy[m:] - base

    mu = np.asarray(link.inverse(eta), dtype=float)
    return eta, mu, err


def predictor_path(
    order: ModelOrder, params: ParamVector, series, link: Link = LOGIT
) -> PredictorPath:
    """Linear predictor, mean and error paths at given parameters.

    For t ≤ m the predictor is initialized at η_t = g(y_t), so r_t = 0 there.

    Args:
        order: Model order
        params: Parameters matching the order
        series: SeriesData or array of observations in (0, 1)
        link: Link function

    Returns:
        PredictorPath over t = 1..n

    Raises:
        DomainError: If an observation lies on the boundary
        InsufficientDataError: If n ≤ m
    """
    params.check_order(order)
    y = series_values(series)
    eta, mu, err = filter_path(order, params.to_array(), np.asarray(link.link(y)), link)
    return PredictorPath(eta=eta, mu=mu, err=err, burn_in=burn_in(order))
