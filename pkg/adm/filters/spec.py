"""Filter descriptions.

Every variant is a frozen pydantic model tagged by ``kind`` so that configs
can carry a filter as plain JSON/YAML. Symbols are evaluated on |k|² and in
log space wherever a large exponent could overflow.
"""

import math
from typing import Annotated, ClassVar, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

LN2 = math.log(2.0)


def _log_one_minus_exp(log_g: np.ndarray) -> np.ndarray:
    """ln(1 − e^{log_g}) for log_g ≤ 0, −inf where log_g = 0."""
    log_g = np.asarray(log_g, dtype=float)
    with np.errstate(divide="ignore"):
        return np.where(log_g > -LN2, np.log(-np.expm1(log_g)), np.log1p(-np.exp(log_g)))


class _FilterBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    invertible: ClassVar[bool] = False

    def log_symbol(self, k2: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def symbol(self, k2: np.ndarray) -> np.ndarray:
        return np.exp(self.log_symbol(k2))

    def log_complement(self, k2: np.ndarray) -> np.ndarray:
        """ln(1 − Ĝ_k)."""
        return _log_one_minus_exp(self.log_symbol(k2))

    def inverse_symbol(self, k2: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(-self.log_symbol(k2))

    def helmholtz_form(self) -> Optional[Tuple[float, float]]:
        """(scale, order) of the equivalent Helmholtz-type operator, if any."""
        return None


class Helmholtz(_FilterBase):
    """Generalized Helmholtz filter (I − α^{2p}Δ^p)^{-1}."""

    kind: Literal["helmholtz"] = "helmholtz"
    alpha: float = Field(gt=0)
    p: float = Field(default=1.0, ge=0.75)
    invertible: ClassVar[bool] = True

    def _x(self, k2: np.ndarray) -> np.ndarray:
        return np.power(self.alpha ** 2 * np.asarray(k2, dtype=float), self.p)

    def log_symbol(self, k2):
        return -np.log1p(self._x(k2))

    def symbol(self, k2):
        return 1.0 / (1.0 + self._x(k2))

    def log_complement(self, k2):
        """ln(x/(1+x)), written as −log1p(1/x) above x = 1."""
        x = self._x(k2)
        with np.errstate(divide="ignore"):
            return np.where(x > 1.0, -np.log1p(1.0 / np.maximum(x, 1.0)), np.log(x) - np.log1p(x))

    def inverse_symbol(self, k2):
        return 1.0 + self._x(k2)

    def helmholtz_form(self):
        return (self.alpha, self.p)


class Gaussian(_FilterBase):
    """Gaussian filter, symbol e^{−α²|k|²/24}."""

    kind: Literal["gaussian"] = "gaussian"
    alpha: float = Field(gt=0)

    def log_symbol(self, k2):
        return -(self.alpha ** 2) * np.asarray(k2, dtype=float) / 24.0


class HelmholtzPower(_FilterBase):
    """m-th power of the second order Helmholtz filter, (I − μ²Δ)^{-m}."""

    kind: Literal["helmholtz_power"] = "helmholtz_power"
    mu: float = Field(gt=0)
    m: int = Field(default=1, ge=1)
    invertible: ClassVar[bool] = True

    def log_symbol(self, k2):
        return -self.m * np.log1p(self.mu ** 2 * np.asarray(k2, dtype=float))

    def helmholtz_form(self):
        return (self.mu, float(self.m))


class GaussianApprox(_FilterBase):
    """(1 + α²|k|²/(24m))^{-m}, the m-th approximant of the Gaussian filter."""

    kind: Literal["gaussian_approx"] = "gaussian_approx"
    alpha: float = Field(gt=0)
    m: int = Field(default=1, ge=1)
    invertible: ClassVar[bool] = True

    @property
    def mu(self) -> float:
        """Width of the equivalent HelmholtzPower filter, μ² = α²/(24m)."""
        return self.alpha / math.sqrt(24.0 * self.m)

    def log_symbol(self, k2):
        return -self.m * np.log1p(self.alpha ** 2 * np.asarray(k2, dtype=float) / (24.0 * self.m))

    def as_helmholtz_power(self) -> HelmholtzPower:
        return HelmholtzPower(mu=self.mu, m=self.m)

    def helmholtz_form(self):
        return (self.mu, float(self.m))


FilterSpec = Annotated[
    Union[Helmholtz, Gaussian, GaussianApprox, HelmholtzPower],
    Field(discriminator="kind"),
]
