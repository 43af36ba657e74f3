"""Numerical core: special functions, links, predictor recursion and likelihood."""

from .likelihood import (
    LikelihoodKernel,
    conditional_loglik,
    eta_jacobian,
    fisher_information,
    score,
)
from .links import LOGIT, Link, LogitLink, available_links, get_link
from .recursion import (
    LagPolynomial,
    burn_in,
    expand_polynomials,
    filter_path,
    predictor_path,
)
from .special import beta_draw, beta_log_density, beta_sample, digamma, log_density, log_gamma, trigamma

__all__ = [
    "LOGIT",
    "LagPolynomial",
    "LikelihoodKernel",
    "Link",
    "LogitLink",
    "available_links",
    "beta_draw",
    "beta_log_density",
    "beta_sample",
    "burn_in",
    "conditional_loglik",
    "digamma",
    "eta_jacobian",
    "expand_polynomials",
    "filter_path",
    "fisher_information",
    "get_link",
    "log_density",
    "log_gamma",
    "predictor_path",
    "score",
    "trigamma",
]
