"""Model orders, parameter vectors, series and predictor paths."""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class ModelOrder(BaseModel):
    """Polynomial degrees and seasonal period of a βSARMA(p,q)×(P,Q)_S model."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(default=0, ge=0, description="Autoregressive order")
    q: int = Field(default=0, ge=0, description="Moving average order")
    P: int = Field(default=0, ge=0, description="Seasonal autoregressive order")
    Q: int = Field(default=0, ge=0, description="Seasonal moving average order")
    S: int = Field(default=12, ge=1, description="Seasonal period")

    @classmethod
    def parse(cls, spec: str) -> "ModelOrder":
        """Parse a ``"p,q,P,Q,S"`` string.

        Args:
            spec: Comma separated order specification

        Returns:
            Parsed order

        Raises:
            ValueError: If the string does not hold five nonnegative integers
        """
        parts = [part.strip() for part in spec.split(",")]
        if len(parts) != 5 or not all(part.lstrip("-").isdigit() for part in parts):
            raise ValueError(f"malformed order '{spec}', expected p,q,P,Q,S")
        p, q, P, Q, S = (int(part) for part in parts)
        return cls(p=p, q=q, P=P, Q=Q, S=S)

    @property
    def n_params(self) -> int:
        """Number of parameters k = p + q + P + Q + 2."""
        return self.p + self.q + self.P + self.Q + 2

    @property
    def is_seasonal(self) -> bool:
        return self.P + self.Q > 0

    @property
    def has_ma(self) -> bool:
        return self.q + self.Q > 0

    def label(self) -> str:
        return f"βSARMA({self.p},{self.q})×({self.P},{self.Q})_{self.S}"

    def as_spec(self) -> str:
        return f"{self.p},{self.q},{self.P},{self.Q},{self.S}"


class BetaParams(BaseModel):
    """Mean/precision parameterization of the beta distribution."""

    model_config = ConfigDict(frozen=True)

    mu: float = Field(..., gt=0, lt=1, description="Mean in (0, 1)")
    precision: float = Field(..., gt=0, description="Precision (reciprocal of dispersion)")

    @property
    def shape_a(self) -> float:
        return self.mu * self.precision

    @property
    def shape_b(self) -> float:
        return (1.0 - self.mu) * self.precision

    @property
    def variance(self) -> float:
        return self.mu * (1.0 - self.mu) / (1.0 + self.precision)


class ParamVector(BaseModel):
    """Parameters γ of a βSARMA model.

    The array form used by the score, the information matrix and every report is
    ordered (β, φ₁..φ_p, Φ₁..Φ_P, θ₁..θ_q, Θ₁..Θ_Q, ϕ).
    """

    model_config = ConfigDict(frozen=True)

    beta: float = Field(..., description="Intercept")
    ar: Tuple[float, ...] = Field(default=(), description="Autoregressive coefficients φ")
    ma: Tuple[float, ...] = Field(default=(), description="Moving average coefficients θ")
    sar: Tuple[float, ...] = Field(default=(), description="Seasonal AR coefficients Φ")
    sma: Tuple[float, ...] = Field(default=(), description="Seasonal MA coefficients Θ")
    precision: float = Field(..., gt=0, description="Precision ϕ")

    @field_validator("beta", "precision")
    @classmethod
    def _finite_scalar(cls, value: float) -> float:
        if not np.isfinite(value):
            raise ValueError("parameter must be finite")
        return value

    @field_validator("ar", "ma", "sar", "sma")
    @classmethod
    def _finite_coefficients(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        if not all(np.isfinite(v) for v in value):
            raise ValueError("coefficients must be finite")
        return tuple(float(v) for v in value)

    def order_of(self, S: int = 12) -> ModelOrder:
        """Order implied by the coefficient lengths for a given seasonal period."""
        return ModelOrder(p=len(self.ar), q=len(self.ma), P=len(self.sar), Q=len(self.sma), S=S)

    def matches(self, order: ModelOrder) -> bool:
        return self.order_of(order.S) == order

    def check_order(self, order: ModelOrder) -> None:
        """Raise ValueError when coefficient lengths disagree with the order."""
        if not self.matches(order):
            raise ValueError(
                f"parameter lengths (p={len(self.ar)}, q={len(self.ma)}, P={len(self.sar)}, "
                f"Q={len(self.sma)}) do not match order {order.label()}"
            )

    def to_array(self) -> np.ndarray:
        return np.array(
            [self.beta, *self.ar, *self.sar, *self.ma, *self.sma, self.precision], dtype=float
        )

    @classmethod
    def from_array(cls, order: ModelOrder, values) -> "ParamVector":
        """Build a parameter vector from its canonical array form.

        Args:
            order: Model order giving the block lengths
            values: Array (β, φ, Φ, θ, Θ, ϕ)

        Returns:
            Validated parameter vector
        """
        values = np.asarray(values, dtype=float)
        if values.shape != (order.n_params,):
            raise ValueError(f"expected {order.n_params} parameters, got {values.shape}")
        blocks = np.split(values[1:-1], np.cumsum([order.p, order.P, order.q]))
        return cls(
            beta=values[0],
            ar=tuple(blocks[0]),
            sar=tuple(blocks[1]),
            ma=tuple(blocks[2]),
            sma=tuple(blocks[3]),
            precision=values[-1],
        )

    @staticmethod
    def names(order: ModelOrder) -> List[str]:
        """Parameter labels in canonical order."""
        return (
            ["beta"]
            + [f"phi{i}" for i in range(1, order.p + 1)]
            + [f"Phi{i}" for i in range(1, order.P + 1)]
            + [f"theta{j}" for j in range(1, order.q + 1)]
            + [f"Theta{j}" for j in range(1, order.Q + 1)]
            + ["precision"]
        )

    @staticmethod
    def seasonal_indices(order: ModelOrder) -> List[int]:
        """Array positions of Φ₁..Φ_P followed by Θ₁..Θ_Q."""
        sar_start = 1 + order.p
        sma_start = 1 + order.p + order.P + order.q
        return list(range(sar_start, sar_start + order.P)) + list(
            range(sma_start, sma_start + order.Q)
        )


class SeriesData(BaseModel):
    """Observed series with values strictly inside the unit interval."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray = Field(..., description="Observations y_1..y_n in (0, 1)")
    labels: Optional[List[str]] = Field(default=None, description="Optional timestamps")

    @field_validator("values", mode="before")
    @classmethod
    def _unit_interval(cls, value) -> np.ndarray:
        array = np.array(value, dtype=float)
        if array.ndim != 1:
            raise ValueError("series must be one dimensional")
        bad = np.flatnonzero(~((array > 0.0) & (array < 1.0)))
        if bad.size:
            raise ValueError(
                f"observation {bad[0] + 1} = {array[bad[0]]!r} is outside the open interval (0, 1)"
            )
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def _labels_length(self) -> "SeriesData":
        if self.labels is not None and len(self.labels) != len(self.values):
            raise ValueError("labels and values differ in length")
        return self

    def __len__(self) -> int:
        return len(self.values)

    def head(self, n: int) -> "SeriesData":
        """First ``n`` observations (labels kept aligned)."""
        labels = self.labels[:n] if self.labels is not None else None
        return SeriesData(values=self.values[:n], labels=labels)

    def tail(self, n: int) -> "SeriesData":
        """Last ``n`` observations (labels kept aligned)."""
        start = len(self.values) - n
        labels = self.labels[start:] if self.labels is not None else None
        return SeriesData(values=self.values[start:], labels=labels)


class PredictorPath(BaseModel):
    """Linear predictor, mean and error paths over t = 1..n (0-based arrays)."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eta: np.ndarray = Field(..., description="Linear predictor η_t")
    mu: np.ndarray = Field(..., description="Conditional mean μ_t = g⁻¹(η_t)")
    err: np.ndarray = Field(..., description="Errors r_t = g(y_t) − η_t")
    burn_in: int = Field(..., ge=0, description="Number m of conditioning observations")


class EtaJacobian(BaseModel):
    """Derivatives of η_t, t = m+1..n, with respect to the mean-model parameters."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    d_beta: np.ndarray = Field(..., description="∂η/∂β, length n − m")
    d_ar: np.ndarray = Field(..., description="∂η/∂φ, (n − m) × p")
    d_sar: np.ndarray = Field(..., description="∂η/∂Φ, (n − m) × P")
    d_ma: np.ndarray = Field(..., description="∂η/∂θ, (n − m) × q")
    d_sma: np.ndarray = Field(..., description="∂η/∂Θ, (n − m) × Q")

    def matrix(self) -> np.ndarray:
        """Stacked (n − m) × (k − 1) matrix in canonical order (β, φ, Φ, θ, Θ)."""
        return np.column_stack([self.d_beta, self.d_ar, self.d_sar, self.d_ma, self.d_sma])
