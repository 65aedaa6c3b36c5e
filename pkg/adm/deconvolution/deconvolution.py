"""Van Cittert deconvolution D_N = Σ_{n=0}^N (I − G)^n applied through its symbol."""

import logging
from typing import Iterable, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from adm.errors import EmptyGridError, FilterVariantError
from adm.filters.spec import FilterSpec, Helmholtz
from adm.spectral.field import SpectralField
from adm.structs.report import PropertyReport, PropertyRow, holds

logger = logging.getLogger(__name__)

# below this filter value the closed form is replaced by its series in Ĝ
SERIES_THRESHOLD = 1e-8
# Prop-p3 is asserted at the largest grid point only beyond this |k|²
ASYMPTOTIC_K2 = 1e12
ASYMPTOTIC_TOL = 1e-6


class DeconvOp(BaseModel):
    model_config = ConfigDict(frozen=True)

    spec: FilterSpec
    N: int = Field(ge=0)


def _out(value: np.ndarray) -> Union[float, np.ndarray]:
    return float(value) if np.ndim(value) == 0 else value


def deconv_symbol(op: DeconvOp, k2) -> Union[float, np.ndarray]:
    """D̂_{N,k} = (1 − (1 − Ĝ_k)^{N+1}) / Ĝ_k, equal to 1 at k2 = 0."""
    k2 = np.asarray(k2, dtype=float)
    if op.N == 0:
        return _out(np.ones_like(k2))
    n1 = op.N + 1
    g = np.asarray(op.spec.symbol(k2), dtype=float)
    numerator = -np.expm1(n1 * np.asarray(op.spec.log_complement(k2)))
    safe = np.where(g >= SERIES_THRESHOLD, g, 1.0)
    closed = numerator / safe
    series = n1 - g * op.N * n1 / 2.0 + g * g * n1 * op.N * (op.N - 1) / 6.0
    return _out(np.where(g >= SERIES_THRESHOLD, closed, series))


def rho(op: DeconvOp, k2) -> Union[float, np.ndarray]:
    """Symbol of D_N G: 1 − (α^{2p}|k|^{2p}/(1 + α^{2p}|k|^{2p}))^{N+1}."""
    if not isinstance(op.spec, Helmholtz):
        raise FilterVariantError(f"rho is defined for the Helmholtz filter only, got {op.spec.kind}")
    return _out(-np.expm1((op.N + 1) * np.asarray(op.spec.log_complement(k2))))


def apply_deconv(op: DeconvOp, f: SpectralField) -> SpectralField:
    return f.scaled(np.asarray(deconv_symbol(op, f.lattice.k2)))


def check_properties(op: DeconvOp, k2_grid: Iterable[float]) -> PropertyReport:
    """Check 1 <= D̂ <= N+1, D̂ <= Â, and D̂ -> N+1 on a grid of |k|² values.

    The large-|k| equivalence D̂ ~ (N+1)(1+x)/x is only reported.
    """
    if not isinstance(op.spec, Helmholtz):
        raise FilterVariantError(f"property check needs a Helmholtz filter, got {op.spec.kind}")
    grid = np.sort(np.asarray(list(k2_grid), dtype=float))
    if grid.size == 0:
        raise EmptyGridError("empty k2 grid")

    n1 = float(op.N + 1)
    d = np.atleast_1d(deconv_symbol(op, grid))
    a = np.atleast_1d(op.spec.inverse_symbol(grid))
    x = a - 1.0
    rows = []
    for k2, dk, ak, xk in zip(grid, d, a, x):
        k2, dk, ak = float(k2), float(dk), float(ak)
        rows.append(PropertyRow(property="p1_lower", k2=k2, lhs=1.0, rhs=dk, passed=holds(1.0, dk)))
        rows.append(PropertyRow(property="p1_upper", k2=k2, lhs=dk, rhs=n1, passed=holds(dk, n1)))
        rows.append(PropertyRow(property="p4", k2=k2, lhs=dk, rhs=ak, passed=holds(dk, ak)))
        if xk > 0:
            deviation = abs(dk / (n1 * (1.0 + xk) / xk) - 1.0)
            rows.append(PropertyRow(property="p2", k2=k2, lhs=deviation, rhs=float("nan"), passed=True, asserted=False))

    top = float(grid[-1])
    if top > ASYMPTOTIC_K2:
        gap = abs(float(d[-1]) - n1)
        tol = ASYMPTOTIC_TOL * n1
        rows.append(PropertyRow(property="p3", k2=top, lhs=gap, rhs=tol, passed=gap <= tol))

    report = PropertyReport(filter=_describe(op.spec), N=op.N, rows=rows)
    if not report.passed:
        logger.warning(f"deconvolution properties failed for {report.filter} N={op.N}: {len(report.failures())} rows")
    return report


def _describe(spec: FilterSpec) -> str:
    fields = spec.model_dump(exclude={"kind"})
    return spec.kind + "(" + ",".join(f"{k}={v:g}" for k, v in fields.items()) + ")"
