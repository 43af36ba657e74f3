"""Generation of series from a βSARMA process."""

from typing import Optional

import numpy as np

from config.settings import get_settings
from src.core.links import LOGIT, Link
from src.core.recursion import burn_in, expand_polynomials
from src.core.special import beta_draw
from src.models import ModelOrder, ParamVector, SeriesData
from src.utils.errors import DomainError


def simulate_series(
    order: ModelOrder,
    params: ParamVector,
    n: int,
    rng: np.random.Generator,
    warmup: Optional[int] = None,
    link: Link = LOGIT,
) -> SeriesData:
    """Draw ``n`` observations from the model after a discarded warm-up.

    The pre-history holds g(y) = β and r = 0. Each step computes η_t from the
    expanded polynomials, draws y_t ~ Beta(μ_tϕ, (1−μ_t)ϕ) and feeds back
    r_t = g(y_t) − η_t.

    Args:
        order: Model order
        params: True parameters matching the order
        n: Number of retained observations
        rng: Seeded numpy generator
        warmup: Discarded draws, defaults to ``warmup_extra`` + m from settings
        link: Link function

    Returns:
        SeriesData of length ``n``
    """
    params.check_order(order)
    if n < 1:
        raise DomainError(f"cannot simulate {n} observations")
    m = burn_in(order)
    if warmup is None:
        warmup = get_settings().warmup_extra + m

    poly = expand_polynomials(order, params)
    g_lags, g_coefs = poly.g_arrays()
    r_lags, r_coefs = poly.r_arrays()

    total = m + warmup + n
    gy = np.full(total, params.beta)
    ys = np.empty(total)
    err = np.zeros(total)
    for t in range(m, total):
        eta = params.beta
        if g_lags.size:
            eta += float(g_coefs @ gy[t - g_lags])
        if r_lags.size:
            eta += float(r_coefs @ err[t - r_lags])
        mu = float(link.inverse(eta))
        y = beta_draw(rng, mu, params.precision)
        ys[t] = y
        gy[t] = float(link.link(y))
        err[t] = gy[t] - eta

    return SeriesData(values=ys[m + warmup :])
