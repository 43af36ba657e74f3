"""Tests for residuals, correlograms, portmanteau tests and information criteria."""

import numpy as np
import pytest
from scipy import integrate, stats

from src.models import AcfDenominator, ModelOrder, PredictorPath, ResidualKind, table_one_design
from src.services import diagnostics
from src.services.diagnostics import DiagnosticsService
from src.services.estimation import fit
from src.services.simulation import simulate_series
from src.utils.errors import DomainError, InsufficientDataError, NotApplicableError


@pytest.fixture(scope="module")
def fitted():
    order, params = table_one_design()
    series = simulate_series(order, params, 400, np.random.default_rng(77))
    return fit(order, series)


def test_acf_lag_zero_is_one():
    x = np.random.default_rng(0).normal(size=50)
    rho = diagnostics.acf(x, 10)
    assert rho.shape == (11,)
    assert rho[0] == pytest.approx(1.0)


def test_acf_alternating_series():
    x = np.tile([1.0, -1.0], 10)
    rho = diagnostics.acf(x, 2)
    assert rho[1] == pytest.approx(-19 / 20)
    assert rho[2] == pytest.approx(18 / 20)


def test_acf_truncated_denominator():
    x = np.tile([1.0, -1.0], 10)
    rho = diagnostics.acf(x, 2, AcfDenominator.TRUNCATED)
    assert rho[1] == pytest.approx(-1.0)
    assert rho[2] == pytest.approx(1.0)


def test_acf_errors():
    with pytest.raises(DomainError):
        diagnostics.acf(np.ones(20), 3)
    with pytest.raises(InsufficientDataError):
        diagnostics.acf(np.arange(5.0), 4)


def test_pacf_lag_one_equals_acf_lag_one():
    x = np.random.default_rng(1).normal(size=200)
    assert diagnostics.pacf(x, 5)[0] == pytest.approx(diagnostics.acf(x, 1)[1])


def test_pacf_of_ar1_cuts_off():
    rng = np.random.default_rng(2)
    x = np.zeros(5000)
    for t in range(1, x.size):
        x[t] = 0.6 * x[t - 1] + rng.normal()
    partial = diagnostics.pacf(x, 5)
    assert partial[0] == pytest.approx(0.6, abs=0.05)
    assert np.all(np.abs(partial[1:]) < 0.05)


def test_ljung_box_formula():
    x = np.random.default_rng(4).normal(size=120)
    order = ModelOrder(p=1, S=12)
    result = diagnostics.ljung_box(x, order, b=10)
    rho = diagnostics.acf(x, 10)[1:]
    n = x.size
    expected = n * (n + 2) * np.sum(rho**2 / (n - np.arange(1, 11)))
    assert result.statistic == pytest.approx(expected)
    assert result.df == 9
    assert result.p_value == pytest.approx(stats.chi2.sf(expected, 9))


def test_monti_uses_partial_autocorrelations():
    x = np.random.default_rng(5).normal(size=150)
    order = ModelOrder(S=12)
    result = diagnostics.monti(x, order, b=8)
    partial = diagnostics.pacf(x, 8)
    n = x.size
    expected = n * (n + 2) * np.sum(partial**2 / (n - np.arange(1, 9)))
    assert result.statistic == pytest.approx(expected)
    assert result.df == 8


def test_portmanteau_default_lags_and_df():
    order = ModelOrder(p=1, q=1, P=1, Q=1, S=12)
    assert diagnostics.default_lags(order) == 24
    assert diagnostics.default_lags(ModelOrder(S=4)) == 10
    with pytest.raises(NotApplicableError):
        diagnostics.ljung_box(np.random.default_rng(0).normal(size=100), order, b=4)


def test_residuals_kinds(fitted):
    for kind in ResidualKind:
        res = diagnostics.residuals(fitted, kind)
        assert len(res) == fitted.n_eff
        assert np.all(np.isfinite(res.values))
    weighted = diagnostics.residuals(fitted).values
    assert abs(weighted.mean()) < 0.2
    assert weighted.std() == pytest.approx(1.0, abs=0.15)


def test_white_noise_tests_on_correct_model(fitted):
    weighted = diagnostics.residuals(fitted)
    lb = diagnostics.ljung_box(weighted, fitted.order)
    assert lb.b == 24
    assert lb.df == 20
    assert 0.0 <= lb.p_value <= 1.0


def test_deviance_is_nonnegative(fitted):
    dev = diagnostics.deviance(fitted)
    assert dev.value >= 0
    assert dev.scaled == pytest.approx(dev.value / (fitted.n_eff - fitted.order.n_params))


def test_saturated_self_fit_has_zero_deviance(fitted):
    y = fitted.series.values
    saturated = PredictorPath(
        eta=np.log(y) - np.log1p(-y), mu=y, err=np.zeros_like(y), burn_in=fitted.burn_in
    )
    assert diagnostics.deviance(fitted.model_copy(update={"path": saturated})).value == 0.0


def test_information_criteria_formulas(fitted):
    ic = diagnostics.information_criteria(fitted)
    n, k = fitted.n, fitted.order.n_params
    rescaled = fitted.loglik * n / fitted.n_eff
    assert ic.maic == pytest.approx(-2 * rescaled + 2 * k)
    assert ic.msic == pytest.approx(-2 * rescaled + np.log(n) * k)
    assert ic.mhq == pytest.approx(-2 * rescaled + np.log(np.log(n)) * k)


def test_criteria_from_loglik_example():
    ic = diagnostics.criteria_from_loglik(loglik=100.0, n=113, m=13, k=6)
    assert ic.maic == pytest.approx(-2 * 113.0 + 12)


def test_acf_bands():
    lower, upper = diagnostics.acf_bands(100)
    assert upper == pytest.approx(0.196)
    assert lower == -upper


def test_qq_coordinates_are_sorted():
    x = np.random.default_rng(6).normal(size=40)
    theoretical, sample = diagnostics.qq_coordinates(x)
    assert np.all(np.diff(theoretical) > 0)
    np.testing.assert_array_equal(sample, np.sort(x))


def test_residual_density():
    x = np.random.default_rng(7).normal(size=300)
    grid, density, normal = diagnostics.residual_density(x)
    assert grid.shape == density.shape == normal.shape
    assert integrate.trapezoid(density, grid) == pytest.approx(1.0, abs=0.02)


def test_diagnose_report(fitted):
    report = diagnostics.diagnose(fitted)
    assert report.loglik == fitted.loglik
    assert report.ljung_box is not None and report.monti is not None
    assert report.seasonality is not None
    assert report.seasonality.df == 2


def test_diagnose_rejects_lags_without_degrees_of_freedom(fitted):
    with pytest.raises(NotApplicableError, match="≥ 1"):
        diagnostics.diagnose(fitted, b=3)


@pytest.mark.monte_carlo
def test_maic_prefers_true_order_over_underfit():
    order, params = table_one_design()
    underfit = ModelOrder(p=1, q=1, S=12)
    rng = np.random.default_rng(2017)
    wins = 0
    for _ in range(100):
        series = simulate_series(order, params, 200, rng)
        true_maic = diagnostics.information_criteria(fit(order, series)).maic
        small_maic = diagnostics.information_criteria(fit(underfit, series)).maic
        wins += true_maic < small_maic
    assert wins > 50


def test_diagnostics_service_correlogram(fitted):
    service = DiagnosticsService(b=12, denominator="truncated")
    table = service.correlogram(fitted)
    assert list(table.columns) == ["lag", "acf", "pacf", "lower", "upper"]
    assert list(table["lag"]) == list(range(1, 13))
    weighted = diagnostics.residuals(fitted, ResidualKind.WEIGHTED)
    expected = diagnostics.acf(weighted, 12, AcfDenominator.TRUNCATED)[1:]
    np.testing.assert_allclose(table["acf"], expected)
    assert set(service.residual_table(fitted)) == {kind.value for kind in ResidualKind}
    assert DiagnosticsService().lags(fitted.order) == 24
