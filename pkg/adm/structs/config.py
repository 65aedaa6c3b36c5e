import math
from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from adm.filters.spec import FilterSpec


class TaylorGreen(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["taylor_green"] = "taylor_green"
    amplitude: float = 1.0


class RandomSpectrum(BaseModel):
    """Broadband random start, E|û_k|² ∝ |k|^-decay, normalized to ||u||₀ = amplitude."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["random"] = "random"
    decay: float = 5.0
    seed: int = 0
    amplitude: float = Field(default=1.0, gt=0)


class Snapshot(BaseModel):
    """Field read from an ADMF file."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["snapshot"] = "snapshot"
    path: str


InitialCondition = Annotated[Union[TaylorGreen, RandomSpectrum, Snapshot], Field(discriminator="kind")]


class SimConfig(BaseModel):
    """One DNS reference run plus one ADM run per deconvolution order.

    Attributes:
        n: grid points per axis (even, >= 4)
        L: box side
        nu: kinematic viscosity
        filter: filter applied to the DNS reference and inside the ADM closure
        N_list: deconvolution orders, one ADM run each
        T: final time
        dt: fixed step size
        init: initial velocity
        forcing: optional steady body force snapshot
        output_dir: where snapshots, series.csv and config.json go
        sample_every: steps between stored samples; step 0 and the last step are always stored
        C: Sobolev product constant used in the error bounds
    """

    model_config = ConfigDict(frozen=True)

    n: int = 16
    L: float = Field(default=2 * math.pi, gt=0)
    nu: float = Field(gt=0)
    filter: FilterSpec
    N_list: List[int] = Field(default_factory=lambda: [0])
    T: float = Field(gt=0)
    dt: float = Field(gt=0)
    init: InitialCondition = Field(default_factory=TaylorGreen)
    forcing: Optional[Snapshot] = None
    output_dir: str = "output"
    sample_every: int = Field(default=10, ge=1)
    C: float = Field(default=2.0, gt=0)

    @field_validator("n")
    @classmethod
    def _check_n(cls, n: int) -> int:
        if n < 4 or n % 2:
            raise ValueError(f"n must be even and >= 4, got {n}")
        return n

    @field_validator("N_list")
    @classmethod
    def _check_orders(cls, orders: List[int]) -> List[int]:
        if not orders:
            raise ValueError("N_list must not be empty")
        if any(N < 0 for N in orders):
            raise ValueError(f"deconvolution orders must be >= 0, got {orders}")
        if len(set(orders)) != len(orders):
            raise ValueError(f"duplicate deconvolution orders in {orders}")
        return orders

    @model_validator(mode="after")
    def _check_times(self) -> "SimConfig":
        if self.dt > self.T:
            raise ValueError(f"dt={self.dt} exceeds T={self.T}")
        ratio = self.T / self.dt
        if abs(ratio - round(ratio)) > 1e-9 * ratio:
            raise ValueError(f"T={self.T} is not a multiple of dt={self.dt}")
        return self

    @property
    def steps(self) -> int:
        """Number of fixed steps; t_j = j·dt with the last step landing on T."""
        return max(1, int(round(self.T / self.dt)))

    def sample_steps(self) -> List[int]:
        steps = list(range(0, self.steps, self.sample_every))
        steps.append(self.steps)
        return steps
