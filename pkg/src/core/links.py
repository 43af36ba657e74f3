"""Link functions g: (0, 1) → ℝ for the conditional mean."""

from abc import ABC, abstractmethod
from typing import Dict, Type

import numpy as np
from scipy import special

from src.core.special import check_open_unit
from src.utils.errors import DomainError

_TINY = np.finfo(float).tiny
_EPSNEG = np.finfo(float).epsneg


def _scalar(value):
    return float(value) if np.ndim(value) == 0 else value


class Link(ABC):
    """Strictly monotone, twice differentiable map from (0, 1) to the real line."""

    name: str = ""

    @abstractmethod
    def link(self, mu):
        """g(μ)."""

    @abstractmethod
    def inverse(self, eta):
        """g⁻¹(η), always inside (0, 1) for finite η."""

    @abstractmethod
    def deriv(self, mu):
        """g′(μ)."""

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


class LogitLink(Link):
    """g(μ) = ln(μ / (1 − μ))."""

    name = "logit"

    def link(self, mu):
        return _scalar(special.logit(check_open_unit(mu, "mu")))

    def inverse(self, eta):
        eta = np.asarray(eta, dtype=float)
        if not np.all(np.isfinite(eta)):
            raise DomainError("linear predictor must be finite")
        # keep the representable result strictly inside (0, 1)
        return _scalar(np.clip(special.expit(eta), _TINY, 1.0 - _EPSNEG))

    def deriv(self, mu):
        mu = check_open_unit(mu, "mu")
        return _scalar(1.0 / (mu * (1.0 - mu)))


_LINKS: Dict[str, Type[Link]] = {LogitLink.name: LogitLink}


def get_link(name: str = "logit") -> Link:
    """Look up a link by name.

    Args:
        name: Registered link name

    Returns:
        Link instance

    Raises:
        ValueError: If the name is not registered
    """
    try:
        return _LINKS[name.lower()]()
    except KeyError:
        raise ValueError(f"unknown link '{name}', available: {', '.join(sorted(_LINKS))}") from None


def available_links() -> list:
    return sorted(_LINKS)


LOGIT = LogitLink()
