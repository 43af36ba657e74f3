"""Special functions and beta-distribution primitives.

Thin, domain-checked wrappers over ``scipy.special``. Every function accepts a scalar
or an array and returns the same shape; out-of-domain input raises ``DomainError``
instead of producing ``nan`` or being clamped.
"""

from typing import Union

import numpy as np
from scipy import special

from src.models import BetaParams
from src.utils.errors import DomainError

ArrayOrFloat = Union[float, np.ndarray]

MAX_REDRAWS = 1000


def _positive(x: ArrayOrFloat, name: str) -> np.ndarray:
    array = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(array)) or np.any(array <= 0.0):
        raise DomainError(f"{name} requires finite positive arguments")
    return array


def _unwrap(value: np.ndarray) -> ArrayOrFloat:
    return float(value) if np.ndim(value) == 0 else value


def check_open_unit(y: ArrayOrFloat, name: str = "y") -> np.ndarray:
    """Return ``y`` as an array, raising DomainError unless every value is in (0, 1)."""
    array = np.asarray(y, dtype=float)
    if not np.all((array > 0.0) & (array < 1.0)):
        raise DomainError(f"{name} must lie strictly inside (0, 1)")
    return array


def log_gamma(x: ArrayOrFloat) -> ArrayOrFloat:
    """ln Γ(x) for x > 0."""
    return _unwrap(special.gammaln(_positive(x, "log_gamma")))


def digamma(x: ArrayOrFloat) -> ArrayOrFloat:
    """ψ(x) = d ln Γ(x) / dx for x > 0."""
    return _unwrap(special.digamma(_positive(x, "digamma")))


def trigamma(x: ArrayOrFloat) -> ArrayOrFloat:
    """ψ′(x) for x > 0."""
    return _unwrap(special.polygamma(1, _positive(x, "trigamma")))


def log_density(y: ArrayOrFloat, mu: ArrayOrFloat, precision: ArrayOrFloat) -> ArrayOrFloat:
    """Vectorized log density of the beta law in mean/precision form.

    log f(y | μ, ϕ) = ln Γ(ϕ) − ln Γ(μϕ) − ln Γ((1−μ)ϕ) + (μϕ−1) ln y + ((1−μ)ϕ−1) ln(1−y)

    Args:
        y: Observation(s) in (0, 1)
        mu: Mean(s) in (0, 1)
        precision: Precision(s) > 0

    Returns:
        Log density, broadcast over the inputs
    """
    y = check_open_unit(y)
    mu = check_open_unit(mu, "mu")
    phi = _positive(precision, "precision")
    a = mu * phi
    b = (1.0 - mu) * phi
    value = (
        special.gammaln(phi)
        - special.gammaln(a)
        - special.gammaln(b)
        + (a - 1.0) * np.log(y)
        + (b - 1.0) * np.log1p(-y)
    )
    return _unwrap(value)


def beta_log_density(y: ArrayOrFloat, params: BetaParams) -> ArrayOrFloat:
    """Log density of Beta(μϕ, (1−μ)ϕ) at ``y``."""
    return log_density(y, params.mu, params.precision)


def beta_sample(rng: np.random.Generator, params: BetaParams, size=None) -> ArrayOrFloat:
    """Draw from Beta(μϕ, (1−μ)ϕ) as the normalized ratio of two gamma variates.

    Draws that round to 0 or 1 in floating point are redrawn, so every returned
    value lies strictly inside (0, 1).

    Args:
        rng: Seeded numpy generator
        params: Beta mean and precision
        size: Optional output shape

    Returns:
        A float when ``size`` is None, otherwise an array of draws

    Raises:
        DomainError: If draws still round to 0 or 1 after ``MAX_REDRAWS`` attempts
    """
    draws = _gamma_ratio(rng, params.shape_a, params.shape_b, size)
    outside = ~((draws > 0.0) & (draws < 1.0))
    for _ in range(MAX_REDRAWS):
        if not np.any(outside):
            return _unwrap(draws)
        draws = np.where(outside, _gamma_ratio(rng, params.shape_a, params.shape_b, size), draws)
        outside = ~((draws > 0.0) & (draws < 1.0))
    if np.any(outside):
        raise DomainError(_redraw_message(params.shape_a, params.shape_b))
    return _unwrap(draws)


def _gamma_ratio(rng: np.random.Generator, a: float, b: float, size) -> np.ndarray:
    x = rng.standard_gamma(a, size=size)
    z = rng.standard_gamma(b, size=size)
    return np.asarray(x / (x + z), dtype=float)


def _redraw_message(a: float, b: float) -> str:
    return f"beta draws with shapes ({a:.3g}, {b:.3g}) keep rounding to 0 or 1"


def beta_draw(rng: np.random.Generator, mu: float, precision: float) -> float:
    """Single Beta(μϕ, (1−μ)ϕ) draw strictly inside (0, 1), without model validation.

    Raises:
        DomainError: If ``MAX_REDRAWS`` consecutive draws round to 0 or 1
    """
    a, b = mu * precision, (1.0 - mu) * precision
    for _ in range(MAX_REDRAWS):
        value = float(_gamma_ratio(rng, a, b, None))
        if 0.0 < value < 1.0:
            return value
    raise DomainError(_redraw_message(a, b))
