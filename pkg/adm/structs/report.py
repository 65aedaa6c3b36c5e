"""Result records shared by verification, diagnostics and the CLI."""

import math
from typing import Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

# relative slack used for every asserted LHS <= RHS comparison
CHECK_SLACK = 1e-12


def holds(lhs: float, rhs: float, slack: float = CHECK_SLACK) -> bool:
    """lhs <= rhs up to slack·max(1, |rhs|)."""
    return lhs - rhs <= slack * max(1.0, abs(rhs))


class PropertyRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    property: str
    k2: float
    lhs: float
    rhs: float
    passed: bool
    asserted: bool = True


class PropertyReport(BaseModel):
    """Outcome of checking the deconvolution symbol properties on a k² grid."""

    filter: str
    N: int
    rows: List[PropertyRow] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows if row.asserted)

    def failures(self) -> List[PropertyRow]:
        return [row for row in self.rows if row.asserted and not row.passed]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(
            [(r.property, r.k2, r.lhs, r.rhs, r.passed) for r in self.rows],
            columns=["property", "k2", "lhs", "rhs", "pass"],
        )
        frame.insert(0, "N", self.N)
        frame.insert(0, "filter", self.filter)
        return frame


class IneqCase(BaseModel):
    """One evaluated tuple of a scalar inequality LHS <= RHS."""

    model_config = ConfigDict(frozen=True)

    name: str
    params: Dict[str, float]
    lhs: float
    rhs: float
    aux_holds: Optional[bool] = None

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        """Main inequality within slack, plus the side condition when one is checked."""
        return holds(self.lhs, self.rhs) and self.aux_holds is not False


class BoundValue(BaseModel):
    """A bound that may overflow a float: natural log plus value when representable."""

    model_config = ConfigDict(frozen=True)

    log_value: float
    value: float

    @classmethod
    def from_log(cls, log_value: float) -> "BoundValue":
        if log_value == -math.inf:
            return cls(log_value=log_value, value=0.0)
        value = math.exp(log_value) if log_value < 709.0 else math.inf
        return cls(log_value=log_value, value=value)

    @property
    def log10_value(self) -> float:
        return self.log_value / math.log(10.0)

    def dominates(self, lhs: float) -> bool:
        """True when lhs <= bound, compared in log space."""
        if lhs <= 0.0:
            return True
        return holds(math.log(lhs), self.log_value) if self.log_value != -math.inf else False


class ErrorRow(BaseModel):
    """Modeling-error diagnostics of one ADM run at one sample time."""

    N: int
    step: int
    t: float
    eps_l2: float
    eps_hp: float
    grad_integral: float
    lhs: float
    tau_l2: float
    half_norm: float
    bound_fin: float
    bound_tau: float
    log_bound_main: float
    log_bound_corollary: float
    log_bound_corollary_alt: float
    energy_metric: float


class ErrorSummary(BaseModel):
    N: int
    eps_l2_T: float
    tau_l2_T: float
    lhs_T: float
    log_bound_main: float
    # None when the filter has no bound form to check against
    holds: Optional[bool] = None


class ErrorReport(BaseModel):
    """Per-N time series of modeling-error norms, bounds and fitted rates."""

    rows: List[ErrorRow] = Field(default_factory=list)
    summary: List[ErrorSummary] = Field(default_factory=list)
    beta_eps: Optional[float] = None
    r2_eps: Optional[float] = None
    beta_tau: Optional[float] = None
    r2_tau: Optional[float] = None
    constants: Dict[str, float] = Field(default_factory=dict)

    def detail_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.model_dump() for row in self.rows], columns=list(ErrorRow.model_fields))

    def summary_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame([row.model_dump() for row in self.summary], columns=list(ErrorSummary.model_fields))
        frame["beta_eps"] = self.beta_eps
        frame["r2_eps"] = self.r2_eps
        frame["beta_tau"] = self.beta_tau
        frame["r2_tau"] = self.r2_tau
        return frame

    def constants_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"name": list(self.constants), "value": list(self.constants.values())})

    def failed_orders(self) -> List[int]:
        return [s.N for s in self.summary if s.holds is False]
