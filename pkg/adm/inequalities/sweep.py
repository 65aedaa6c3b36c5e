import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from adm.errors import AdmError, EmptyGridError
from adm.inequalities.inequalities import INEQUALITIES, holds_array
from adm.structs.report import IneqCase

logger = logging.getLogger(__name__)

DEFAULT_EXPONENTS = [1.0, 1.5] + [float(2 ** j) for j in range(1, 11)]
DEFAULT_ORDERS = [2 ** j for j in range(0, 11)]
DENSE_FACTOR = 10


class GridSpec(BaseModel):
    """Parameter grid of a sweep.

    x is log-spaced on [x_min, x_max] (plus 0 when include_zero); the number
    of x points is chosen so that every sweep reaches ``min_tuples`` unless
    ``x_points`` is given. ``exponents`` feed a and m, ``orders`` feed n.
    """

    model_config = ConfigDict(frozen=True)

    x_min: float = Field(default=1e-6, gt=0)
    x_max: float = Field(default=1e6, gt=0)
    x_points: Optional[int] = Field(default=None, ge=0)
    include_zero: bool = True
    exponents: List[float] = Field(default_factory=lambda: list(DEFAULT_EXPONENTS))
    orders: List[int] = Field(default_factory=lambda: list(DEFAULT_ORDERS))
    min_tuples: int = Field(default=100_000, ge=1)
    dense: bool = False

    def x_values(self, others: int) -> np.ndarray:
        count = self.x_points
        if count is None:
            count = math.ceil(self.min_tuples / max(others, 1)) - int(self.include_zero)
        if self.dense:
            count *= DENSE_FACTOR
        xs = np.logspace(math.log10(self.x_min), math.log10(self.x_max), count) if count > 0 else np.empty(0)
        return np.concatenate([[0.0], xs]) if self.include_zero else xs

    def axes(self, params) -> Dict[str, np.ndarray]:
        """Values per parameter; x is sized against the product of the others."""
        values = {}
        for key in params:
            if key in ("a", "m"):
                values[key] = np.asarray(self.exponents, dtype=float)
            elif key == "n":
                values[key] = np.asarray(self.orders, dtype=float)
        others = int(np.prod([v.size for v in values.values()])) if values else 1
        values["x"] = self.x_values(others)
        return {key: values[key] for key in params}


class SweepResult:
    """All evaluated tuples of one inequality, held as a DataFrame."""

    def __init__(self, name: str, frame: pd.DataFrame):
        self.name = name
        self.frame = frame

    def __len__(self) -> int:
        return len(self.frame)

    @property
    def params(self) -> tuple:
        return INEQUALITIES[self.name].params

    @property
    def passed(self) -> bool:
        return bool(self.frame["pass"].all())

    def _to_case(self, row) -> IneqCase:
        aux = row.get("aux")
        return IneqCase(
            name=self.name,
            params={key: float(row[key]) for key in self.params},
            lhs=float(row["lhs"]),
            rhs=float(row["rhs"]),
            aux_holds=None if aux is None else bool(aux),
        )

    def failures(self) -> List[IneqCase]:
        return [self._to_case(row) for _, row in self.frame[~self.frame["pass"]].iterrows()]

    def cases(self) -> List[IneqCase]:
        return [self._to_case(row) for _, row in self.frame.iterrows()]

    def worst(self) -> IneqCase:
        """Tuple with the smallest relative margin."""
        scaled = self.frame["margin"] / np.maximum(1.0, self.frame["rhs"].abs())
        return self._to_case(self.frame.loc[scaled.idxmin()])


def _evaluate(name: str, columns: Dict[str, np.ndarray]) -> pd.DataFrame:
    lhs, rhs, aux = INEQUALITIES[name].kernel(**columns)
    rhs = np.broadcast_to(rhs, lhs.shape)
    frame = pd.DataFrame(columns)
    frame["lhs"] = lhs
    frame["rhs"] = rhs
    frame["margin"] = rhs - lhs
    ok = holds_array(lhs, rhs)
    if aux is not None:
        frame["aux"] = aux
        ok = ok & aux
    frame["pass"] = ok
    return frame


def sweep(name: str, grid: Optional[GridSpec] = None, threads: int = 1) -> SweepResult:
    """Evaluate one inequality on every tuple of the grid.

    Args:
        name: one of inq_tech2, inq_tech3, inq_tech1, transf_est
        grid: parameter grid, defaults to GridSpec()
        threads: tuples are split into this many chunks evaluated in parallel

    Returns:
        SweepResult; failures() lists the offending tuples
    """
    if name not in INEQUALITIES:
        raise AdmError(f"unknown inequality {name!r}, expected one of {sorted(INEQUALITIES)}")
    grid = grid or GridSpec()
    axes = grid.axes(INEQUALITIES[name].params)
    if any(v.size == 0 for v in axes.values()):
        raise EmptyGridError(f"empty grid for {name}: {[k for k, v in axes.items() if v.size == 0]}")

    mesh = np.meshgrid(*axes.values(), indexing="ij")
    columns = {key: m.ravel() for key, m in zip(axes, mesh)}
    if threads > 1:
        chunks = [
            {key: col[idx] for key, col in columns.items()}
            for idx in np.array_split(np.arange(len(columns["x"])), threads)
        ]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            frame = pd.concat(list(pool.map(lambda c: _evaluate(name, c), chunks)), ignore_index=True)
    else:
        frame = _evaluate(name, columns)

    result = SweepResult(name, frame)
    failed = int((~frame["pass"]).sum())
    logger.info(f"{name}: {len(frame)} tuples, {failed} failures")
    return result


def sweep_all(grid: Optional[GridSpec] = None, threads: int = 1) -> Dict[str, SweepResult]:
    return {name: sweep(name, grid, threads) for name in INEQUALITIES}
