"""Monte Carlo replication studies for βSARMA estimators and white-noise tests."""

from functools import partial
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
import structlog
from joblib import Parallel, delayed

from config import Settings, get_settings
from src.core.links import Link, get_link
from src.core.recursion import burn_in
from src.models import (
    EstimationRow,
    FitOptions,
    FittedModel,
    McConfig,
    McReport,
    ModelOrder,
    ParamVector,
    PowerScenario,
    RejectionRow,
    ResidualKind,
    StudyKind,
)
from src.services import diagnostics, estimation
from src.services.simulation import simulate_series
from src.utils import BSarmaError, get_logger, setup_logging

logger = get_logger(__name__)

FitFunction = Callable[[ModelOrder, object, FitOptions], FittedModel]
WHITE_NOISE_TESTS = ("ljung_box", "monti")


def replication_rng(seed: int, sample_size: int, replication: int) -> np.random.Generator:
    """Independent stream for one replication, derived from (seed, n, replication)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(sample_size, replication)))


def _worker_logging() -> None:
    # loky workers start with structlog defaults, which print to stdout
    if not structlog.is_configured():
        setup_logging(get_settings().debug)


def _estimation_replication(
    config: McConfig, n: int, replication: int, warmup: int, options: FitOptions, fit_fn
) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    _worker_logging()
    rng = replication_rng(config.seed, n, replication)
    try:
        series = simulate_series(
            config.order, config.true_params, n, rng, warmup, link=get_link(config.link)
        )
        fitted = fit_fn(config.order, series, options)
    except BSarmaError:
        return None
    if not fitted.converged:
        return None

    truth = config.true_params.to_array()
    covered = np.full(truth.size, np.nan)
    if fitted.covariance is not None:
        for index, value in enumerate(truth):
            interval = estimation.confidence_interval(fitted, index, config.confidence_level)
            covered[index] = float(interval.lower <= value <= interval.upper)
    return fitted.estimates.to_array(), covered


def _test_replication(
    truth_order: ModelOrder,
    truth: ParamVector,
    fit_order: ModelOrder,
    seed: int,
    n: int,
    replication: int,
    b: Optional[int],
    warmup: int,
    options: FitOptions,
    fit_fn,
    link: Link,
) -> Optional[Dict[str, float]]:
    _worker_logging()
    rng = replication_rng(seed, n, replication)
    try:
        series = simulate_series(truth_order, truth, n, rng, warmup, link=link)
        fitted = fit_fn(fit_order, series, options)
        if not fitted.converged:
            return None
        weighted = diagnostics.residuals(fitted, ResidualKind.WEIGHTED)
        return {
            "ljung_box": diagnostics.ljung_box(weighted, fit_order, b).p_value,
            "monti": diagnostics.monti(weighted, fit_order, b).p_value,
        }
    except BSarmaError:
        return None


def alternative_design(
    order: ModelOrder, params: ParamVector, scenario: PowerScenario, delta: float
) -> Tuple[ModelOrder, ParamVector, ModelOrder]:
    """Data-generating order, true parameters and fitted order for one power scenario.

    ``OMITTED_MA`` sets the last non-seasonal MA coefficient to δ and fits one
    MA term fewer. ``OMITTED_AR`` generates with an extra AR term equal to −δ
    and fits the configured order.
    """
    scenario = PowerScenario(scenario)
    if scenario == PowerScenario.OMITTED_MA:
        if order.q < 1:
            raise ValueError("the omitted MA scenario needs q ≥ 1")
        ma = tuple(params.ma[:-1]) + (delta,)
        truth = params.model_copy(update={"ma": ma})
        fitted = order.model_copy(update={"q": order.q - 1})
        return order, truth, fitted

    truth_order = order.model_copy(update={"p": order.p + 1})
    truth = params.model_copy(update={"ar": tuple(params.ar) + (-delta,)})
    return truth_order, truth, order


class MonteCarloStudy:
    """Runs estimation, size and power studies.

    Replications draw from streams keyed by (seed, n, replication), so reports
    do not depend on execution order or the number of workers.
    """

    def __init__(
        self,
        config: McConfig,
        settings: Settings | None = None,
        fit_fn: FitFunction | None = None,
    ):
        """Initialize the study.

        Args:
            config: Study configuration
            settings: Toolkit settings (optional)
            fit_fn: Fitting routine, ``estimation.fit`` under the configured link by default

        Raises:
            ValueError: If the configured link is not registered
        """
        self.config = config
        self.settings = settings or get_settings()
        self.link = get_link(config.link)
        self.fit_fn = fit_fn or partial(estimation.fit, link=self.link)
        self.options = FitOptions.from_settings(self.settings)

    def _warmup(self, order: ModelOrder) -> int:
        if self.config.warmup is not None:
            return self.config.warmup
        return self.settings.warmup_extra + burn_in(order)

    def _map(self, func, tasks: List[tuple]) -> list:
        if self.config.workers > 1:
            return Parallel(n_jobs=self.config.workers)(delayed(func)(*task) for task in tasks)
        return [func(*task) for task in tasks]

    def run(self) -> McReport:
        """Run the configured study."""
        study = StudyKind(self.config.study)
        logger.info(
            "Starting Monte Carlo study",
            study=study.value,
            replications=self.config.replications,
            sample_sizes=self.config.sample_sizes,
        )
        if study == StudyKind.ESTIMATION:
            return self.estimation_study()
        if study == StudyKind.SIZE:
            return self.size_study()
        return self.power_study()

    def estimation_study(self) -> McReport:
        """Mean, bias, relative bias, SD, MSE and coverage per parameter and sample size.

        RB% is 100·Bias/truth, so a negative truth with negative bias gives a
        positive RB. SD uses the population divisor, which keeps
        MSE = SD² + Bias² exact.
        """
        config = self.config
        truth = config.true_params.to_array()
        names = ParamVector.names(config.order)
        warmup = self._warmup(config.order)

        rows: List[EstimationRow] = []
        failures: Dict[int, int] = {}
        for n in config.sample_sizes:
            tasks = [
                (config, n, rep, warmup, self.options, self.fit_fn)
                for rep in range(config.replications)
            ]
            outcomes = self._map(_estimation_replication, tasks)
            kept = [outcome for outcome in outcomes if outcome is not None]
            failures[n] = len(outcomes) - len(kept)
            if not kept:
                logger.warning("No replication converged", sample_size=n)
                continue

            estimates = np.vstack([outcome[0] for outcome in kept])
            coverage = np.vstack([outcome[1] for outcome in kept])
            mean = estimates.mean(axis=0)
            bias = mean - truth
            sd = estimates.std(axis=0)
            mse = np.mean((estimates - truth) ** 2, axis=0)
            with np.errstate(divide="ignore", invalid="ignore"):
                rb = np.where(truth != 0.0, 100.0 * bias / truth, np.nan)
            for j, name in enumerate(names):
                column = coverage[:, j]
                rows.append(
                    EstimationRow(
                        sample_size=n,
                        parameter=name,
                        truth=float(truth[j]),
                        mean=float(mean[j]),
                        bias=float(bias[j]),
                        rb=float(rb[j]),
                        sd=float(sd[j]),
                        mse=float(mse[j]),
                        coverage=float(np.nanmean(column)) if np.any(~np.isnan(column)) else float("nan"),
                    )
                )
            logger.info("Sample size finished", sample_size=n, failures=failures[n])

        return McReport(
            study=StudyKind.ESTIMATION,
            replications=config.replications,
            estimation=rows,
            failures=failures,
        )

    def _rejections(
        self,
        truth_order: ModelOrder,
        truth: ParamVector,
        fit_order: ModelOrder,
        n: int,
        delta: Optional[float] = None,
    ) -> Tuple[List[RejectionRow], int]:
        config = self.config
        warmup = self._warmup(truth_order)
        tasks = [
            (
                truth_order,
                truth,
                fit_order,
                config.seed,
                n,
                rep,
                config.b,
                warmup,
                self.options,
                self.fit_fn,
                self.link,
            )
            for rep in range(config.replications)
        ]
        outcomes = self._map(_test_replication, tasks)
        kept = [outcome for outcome in outcomes if outcome is not None]
        failed = len(outcomes) - len(kept)

        rows = []
        for test in WHITE_NOISE_TESTS:
            p_values = np.array([outcome[test] for outcome in kept])
            for level in config.nominal_levels:
                rate = float(np.mean(p_values <= level)) if p_values.size else float("nan")
                if np.isnan(rate):
                    continue
                rows.append(
                    RejectionRow(sample_size=n, test=test, level=level, rate=rate, delta=delta)
                )
        return rows, failed

    def size_study(self) -> McReport:
        """Null rejection rates of the Ljung-Box and Monti tests at each nominal level."""
        config = self.config
        rows: List[RejectionRow] = []
        failures: Dict[int, int] = {}
        for n in config.sample_sizes:
            found, failures[n] = self._rejections(config.order, config.true_params, config.order, n)
            rows.extend(found)
            logger.info("Sample size finished", sample_size=n, failures=failures[n])
        return McReport(
            study=StudyKind.SIZE, replications=config.replications, rejection=rows, failures=failures
        )

    def power_study(self) -> McReport:
        """Rejection rates over the δ grid for the configured misspecification."""
        config = self.config
        rows: List[RejectionRow] = []
        failures: Dict[int, int] = {}
        for n in config.sample_sizes:
            failures[n] = 0
            for delta in config.power_grid:
                truth_order, truth, fit_order = alternative_design(
                    config.order, config.true_params, config.scenario, delta
                )
                found, failed = self._rejections(truth_order, truth, fit_order, n, delta)
                rows.extend(found)
                failures[n] += failed
            logger.info("Sample size finished", sample_size=n, failures=failures[n])
        return McReport(
            study=StudyKind.POWER, replications=config.replications, rejection=rows, failures=failures
        )
