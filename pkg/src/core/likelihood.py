"""Conditional log-likelihood, score vector and conditional Fisher information.

All quantities condition on the first m = burn_in(order) observations. Arrays in
and out use the canonical parameter order (β, φ, Φ, θ, Θ, ϕ).
"""

from typing import Optional, Tuple

import numpy as np

from src.core.links import LOGIT, Link
from src.core.recursion import (
    burn_in,
    filter_path,
    lag_polynomial,
    series_values,
    split_params,
)
from src.core.special import digamma, log_density, trigamma
from src.models import EtaJacobian, ModelOrder, ParamVector
from src.utils.errors import DomainError


class LikelihoodKernel:
    """Likelihood machinery for one (order, series, link) triple.

    Transforms of the data are computed once; per-parameter quantities (path,
    μ*, T, derivative recursions) are computed once per evaluation and shared
    between the score and the information matrix.
    """

    def __init__(self, order: ModelOrder, series, link: Link = LOGIT):
        """Initialize the kernel.

        Args:
            order: Model order
            series: SeriesData or array of observations in (0, 1)
            link: Link function
        """
        self.order = order
        self.link = link
        self.y = series_values(series)
        self.m = burn_in(order)
        self.gy = np.asarray(link.link(self.y), dtype=float)
        self.ystar = np.log(self.y) - np.log1p(-self.y)
        self.log1m_y = np.log1p(-self.y)

    @property
    def n(self) -> int:
        return len(self.y)

    @property
    def n_eff(self) -> int:
        """Number of likelihood terms, n − m."""
        return self.n - self.m

    def path(self, theta: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return filter_path(self.order, theta, self.gy, self.link)

    def loglik(self, theta: np.ndarray) -> float:
        """Conditional log-likelihood, −inf at invalid points (ϕ ≤ 0 or non-finite γ)."""
        theta = np.asarray(theta, dtype=float)
        if not np.all(np.isfinite(theta)) or theta[-1] <= 0.0:
            return -np.inf
        m = self.m
        try:
            _, mu, _ = self.path(theta)
            return float(np.sum(log_density(self.y[m:], mu[m:], theta[-1])))
        except DomainError:
            return -np.inf

    def jacobian(self, theta: np.ndarray, err: Optional[np.ndarray] = None) -> np.ndarray:
        """(n − m) × (k − 1) matrix of ∂η_t/∂λ in canonical order (β, φ, Φ, θ, Θ).

        Derivatives are zero for t ≤ m; the MA feedback enters through
        ∂r_t/∂λ = −∂η_t/∂λ.
        """
        order = self.order
        parts = split_params(order, theta)
        if err is None:
            _, _, err = self.path(theta)
        gy, m, n, S = self.gy, self.m, self.n, order.S

        def lagged(x: np.ndarray, lag: int) -> np.ndarray:
            return x[m - lag : n - lag]

        columns = [np.ones(n - m)]
        for i in range(1, order.p + 1):
            col = lagged(gy, i).copy()
            for I in range(1, order.P + 1):
                col -= parts.sar[I - 1] * lagged(gy, i + I * S)
            columns.append(col)
        for I in range(1, order.P + 1):
            col = lagged(gy, I * S).copy()
            for i in range(1, order.p + 1):
                col -= parts.ar[i - 1] * lagged(gy, i + I * S)
            columns.append(col)
        for j in range(1, order.q + 1):
            col = lagged(err, j).copy()
            for J in range(1, order.Q + 1):
                col -= parts.sma[J - 1] * lagged(err, j + J * S)
            columns.append(-col)
        for J in range(1, order.Q + 1):
            col = lagged(err, J * S).copy()
            for j in range(1, order.q + 1):
                col -= parts.ma[j - 1] * lagged(err, j + J * S)
            columns.append(-col)
        direct = np.column_stack(columns)

        if not order.has_ma:
            return direct

        poly = lag_polynomial(order, parts.ar, parts.sar, parts.ma, parts.sma)
        r_lags, r_coefs = poly.r_arrays()
        deriv = np.zeros((n, direct.shape[1]))
        for t in range(m, n):
            deriv[t] = direct[t - m] - r_coefs @ deriv[t - r_lags]
        return deriv[m:]

    def evaluate(self, theta: np.ndarray, information: bool = False):
        """Log-likelihood, score and optionally the information matrix at ``theta``.

        Args:
            theta: Canonical parameter array with positive precision
            information: Also assemble the conditional Fisher information

        Returns:
            Tuple (loglik, score, information or None)
        """
        theta = np.asarray(theta, dtype=float)
        phi = float(theta[-1])
        _, mu_full, err = self.path(theta)
        m = self.m
        y, mu = self.y[m:], mu_full[m:]
        loglik = float(np.sum(log_density(y, mu, phi)))

        a, b = mu * phi, (1.0 - mu) * phi
        psi_b = digamma(b)
        mustar = digamma(a) - psi_b
        resid = self.ystar[m:] - mustar
        t_diag = 1.0 / np.asarray(self.link.deriv(mu), dtype=float)
        jac = self.jacobian(theta, err)

        score = np.empty(self.order.n_params)
        score[:-1] = phi * jac.T @ (t_diag * resid)
        score[-1] = np.sum(mu * resid + self.log1m_y[m:] - psi_b + digamma(phi))

        if not information:
            return loglik, score, None

        tri_a, tri_b = trigamma(a), trigamma(b)
        w = phi**2 * (tri_a + tri_b)
        c = phi * (tri_a * mu - tri_b * (1.0 - mu))
        d = tri_a * mu**2 + tri_b * (1.0 - mu) ** 2 - trigamma(phi)

        k = self.order.n_params
        info = np.empty((k, k))
        info[:-1, :-1] = (jac * (w * t_diag**2)[:, None]).T @ jac
        info[:-1, -1] = jac.T @ (c * t_diag)
        info[-1, -1] = np.sum(d)
        # mirror the upper triangle so the matrix is exactly symmetric
        upper = np.triu(info)
        info = upper + np.triu(upper, 1).T
        return loglik, score, info


def conditional_loglik(order: ModelOrder, params: ParamVector, series, link: Link = LOGIT) -> float:
    """Σ_{t=m+1}^{n} log f(y_t | μ_t, ϕ) at the given parameters."""
    params.check_order(order)
    return LikelihoodKernel(order, series, link).loglik(params.to_array())


def eta_jacobian(order: ModelOrder, params: ParamVector, series, link: Link = LOGIT) -> EtaJacobian:
    """Derivatives of the linear predictor for t = m+1..n.

    Args:
        order: Model order
        params: Parameters matching the order
        series: Observations
        link: Link function

    Returns:
        EtaJacobian with blocks a, A, 𝒜, M, ℳ
    """
    params.check_order(order)
    matrix = LikelihoodKernel(order, series, link).jacobian(params.to_array())
    cuts = np.cumsum([1, order.p, order.P, order.q])
    d_beta, d_ar, d_sar, d_ma, d_sma = np.split(matrix, cuts, axis=1)
    return EtaJacobian(d_beta=d_beta[:, 0], d_ar=d_ar, d_sar=d_sar, d_ma=d_ma, d_sma=d_sma)


def score(order: ModelOrder, params: ParamVector, series, link: Link = LOGIT) -> np.ndarray:
    """Analytic gradient of the conditional log-likelihood (length k, canonical order)."""
    params.check_order(order)
    _, grad, _ = LikelihoodKernel(order, series, link).evaluate(params.to_array())
    return grad


def fisher_information(
    order: ModelOrder, params: ParamVector, series, link: Link = LOGIT
) -> np.ndarray:
    """Conditional Fisher information K(γ), k × k, canonical order."""
    params.check_order(order)
    _, _, info = LikelihoodKernel(order, series, link).evaluate(params.to_array(), information=True)
    return info
