"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from src.models import ModelOrder, ParamVector, SeriesData, table_one_design
from src.services.simulation import simulate_series


@pytest.fixture
def reference_design():
    """βSARMA(1,1)×(1,1)_12 with the reference parameters."""
    return table_one_design()


@pytest.fixture
def reference_series(reference_design):
    """Seeded 300-point series from the reference design."""
    order, params = reference_design
    return simulate_series(order, params, 300, np.random.default_rng(11))


@pytest.fixture
def short_series():
    """Small hand-written series away from the boundaries."""
    values = np.array(
        [0.31, 0.42, 0.38, 0.51, 0.47, 0.36, 0.44, 0.55, 0.49, 0.41, 0.39, 0.46, 0.52, 0.43, 0.37]
    )
    return SeriesData(values=values)


@pytest.fixture
def arma_order():
    return ModelOrder(p=1, q=1, P=0, Q=0, S=12)


@pytest.fixture
def arma_params():
    return ParamVector(beta=0.2, ar=(0.4,), ma=(0.3,), precision=40.0)


def random_design(rng: np.random.Generator, S: int):
    """Random order up to (2,2)×(2,2)_S with small stationary-looking coefficients."""
    order = ModelOrder(
        p=int(rng.integers(0, 3)),
        q=int(rng.integers(0, 3)),
        P=int(rng.integers(0, 3)),
        Q=int(rng.integers(0, 3)),
        S=S,
    )
    params = ParamVector(
        beta=float(rng.uniform(-0.5, 0.5)),
        ar=tuple(rng.uniform(-0.3, 0.3, order.p)),
        ma=tuple(rng.uniform(-0.3, 0.3, order.q)),
        sar=tuple(rng.uniform(-0.3, 0.3, order.P)),
        sma=tuple(rng.uniform(-0.3, 0.3, order.Q)),
        precision=float(rng.uniform(20.0, 150.0)),
    )
    return order, params
