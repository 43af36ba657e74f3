"""Tests for the conditional log-likelihood, score and information matrix."""

import numpy as np
import pytest
from scipy import stats
from scipy.special import digamma as psi
from scipy.special import expit, logit

from src.core.likelihood import (
    LikelihoodKernel,
    conditional_loglik,
    eta_jacobian,
    fisher_information,
    score,
)
from src.core.recursion import burn_in, predictor_path
from src.models import ModelOrder, ParamVector
from src.services.simulation import simulate_series
from tests.conftest import random_design


def _direct_loglik(order, params, y):
    """Beta log-densities summed over a scalar re-implementation of the recursion."""
    m = burn_in(order)
    S = order.S
    gy = logit(y)
    eta = gy.copy()
    err = np.zeros(len(y))
    for t in range(m, len(y)):
        value = params.beta
        for i, phi in enumerate(params.ar, 1):
            value += phi * gy[t - i]
        for I, Phi in enumerate(params.sar, 1):
            value += Phi * gy[t - I * S]
            for i, phi in enumerate(params.ar, 1):
                value -= phi * Phi * gy[t - i - I * S]
        for j, theta in enumerate(params.ma, 1):
            value -= theta * err[t - j]
        for J, Theta in enumerate(params.sma, 1):
            value -= Theta * err[t - J * S]
            for j, theta in enumerate(params.ma, 1):
                value += theta * Theta * err[t - j - J * S]
        eta[t] = value
        err[t] = gy[t] - value
    mu = expit(eta[m:])
    phi = params.precision
    return float(np.sum(stats.beta.logpdf(y[m:], mu * phi, (1 - mu) * phi)))


def _numeric_gradient(order, params, series, step=1e-5):
    theta = params.to_array()
    grad = np.empty_like(theta)
    for r in range(theta.size):
        h = step * max(1.0, abs(theta[r]))
        up, down = theta.copy(), theta.copy()
        up[r] += h
        down[r] -= h
        grad[r] = (
            conditional_loglik(order, ParamVector.from_array(order, up), series)
            - conditional_loglik(order, ParamVector.from_array(order, down), series)
        ) / (2 * h)
    return grad


def test_loglik_matches_direct_summation():
    """Twenty small random series against an independent recursion."""
    rng = np.random.default_rng(20)
    for _ in range(20):
        order, params = random_design(rng, S=4)
        n = burn_in(order) + int(rng.integers(5, 15))
        y = rng.uniform(0.05, 0.95, n)
        assert conditional_loglik(order, params, y) == pytest.approx(
            _direct_loglik(order, params, y), rel=1e-10, abs=1e-10
        )


def test_loglik_reference_design(reference_design, reference_series):
    order, params = reference_design
    assert conditional_loglik(order, params, reference_series) == pytest.approx(
        _direct_loglik(order, params, reference_series.values), rel=1e-10
    )


@pytest.mark.parametrize("S", [4, 12])
def test_score_matches_finite_differences(S):
    """Fifty random configurations per period, 1e-6 relative to the gradient scale."""
    rng = np.random.default_rng(S)
    for _ in range(50):
        order, params = random_design(rng, S)
        series = simulate_series(order, params, 80, rng)
        analytic = score(order, params, series)
        numeric = _numeric_gradient(order, params, series)
        scale = max(1.0, float(np.max(np.abs(numeric))))
        assert np.max(np.abs(analytic - numeric)) <= 1e-6 * scale


def test_jacobian_matches_finite_differences_of_eta(reference_design, reference_series):
    order, params = reference_design
    jac = eta_jacobian(order, params, reference_series).matrix()
    theta = params.to_array()
    m = burn_in(order)
    for r in range(theta.size - 1):
        h = 1e-6
        up, down = theta.copy(), theta.copy()
        up[r] += h
        down[r] -= h
        eta_up = predictor_path(order, ParamVector.from_array(order, up), reference_series).eta
        eta_down = predictor_path(order, ParamVector.from_array(order, down), reference_series).eta
        np.testing.assert_allclose(jac[:, r], (eta_up - eta_down)[m:] / (2 * h), atol=1e-6)


def test_jacobian_blocks_have_order_shapes(reference_design, reference_series):
    order, params = reference_design
    jac = eta_jacobian(order, params, reference_series)
    n_eff = len(reference_series) - burn_in(order)
    assert jac.d_beta.shape == (n_eff,)
    np.testing.assert_array_equal(jac.d_beta, 1.0)
    for block in (jac.d_ar, jac.d_sar, jac.d_ma, jac.d_sma):
        assert block.shape == (n_eff, 1)


def test_information_is_symmetric_positive_definite(reference_design, reference_series):
    order, params = reference_design
    info = fisher_information(order, params, reference_series)
    assert info.shape == (order.n_params, order.n_params)
    np.testing.assert_array_equal(info, info.T)
    assert np.all(np.linalg.eigvalsh(info) > 0)


def test_information_approximates_score_variance():
    """E[U Uᵀ] ≈ K under the true parameters for a pure AR model."""
    order = ModelOrder(p=1, S=12)
    params = ParamVector(beta=0.1, ar=(0.5,), precision=30.0)
    rng = np.random.default_rng(5)
    scores, infos = [], []
    for _ in range(400):
        series = simulate_series(order, params, 150, rng)
        scores.append(score(order, params, series))
        infos.append(fisher_information(order, params, series))
    outer = np.cov(np.array(scores).T, bias=True)
    mean_info = np.mean(infos, axis=0)
    np.testing.assert_allclose(np.diag(outer), np.diag(mean_info), rtol=0.2)


def test_invalid_precision_gives_minus_infinity(reference_design, reference_series):
    order, params = reference_design
    kernel = LikelihoodKernel(order, reference_series)
    theta = params.to_array()
    theta[-1] = -1.0
    assert kernel.loglik(theta) == -np.inf
    theta[-1] = np.nan
    assert kernel.loglik(theta) == -np.inf


def test_arma_reduction_matches_plain_arma(short_series):
    """Seasonal orders with P = Q = 0 ignore S."""
    params = ParamVector(beta=0.1, ar=(0.3,), ma=(0.2,), precision=25.0)
    seasonal = conditional_loglik(ModelOrder(p=1, q=1, S=12), params, short_series)
    plain = conditional_loglik(ModelOrder(p=1, q=1, S=1), params, short_series)
    assert seasonal == pytest.approx(plain, abs=1e-12)


def test_mean_and_precision_are_not_orthogonal(reference_design, reference_series):
    order, params = reference_design
    info = fisher_information(order, params, reference_series)
    assert np.max(np.abs(info[:-1, -1])) > 1e-6


def _symmetric_point():
    """Order and parameters with μ_t ≡ 0.5 after the burn-in."""
    order = ModelOrder(p=1, q=1, S=12)
    return order, ParamVector(beta=0.0, ar=(0.0,), ma=(0.0,), precision=35.0)


def test_cross_block_vanishes_at_symmetric_mean(short_series):
    order, params = _symmetric_point()
    info = fisher_information(order, params, short_series)
    np.testing.assert_array_equal(info[:-1, -1], 0.0)
    np.testing.assert_array_equal(info[-1, :-1], 0.0)


def test_precision_score_in_symmetric_case(short_series):
    order, params = _symmetric_point()
    phi = params.precision
    y = short_series.values[burn_in(order):]
    ystar = np.log(y) - np.log1p(-y)
    expected = np.sum(0.5 * ystar + np.log1p(-y) - psi(phi / 2) + psi(phi))
    assert score(order, params, short_series)[-1] == pytest.approx(expected, rel=1e-10, abs=1e-12)
