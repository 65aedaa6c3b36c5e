import logging
from typing import Tuple, Union

import numpy as np

from adm.errors import NonInvertibleFilterError
from adm.filters.spec import FilterSpec, Gaussian, GaussianApprox
from adm.spectral.field import SpectralField
from adm.spectral.operators import sobolev_norm, weighted_norm

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


def _out(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def filter_symbol(spec: FilterSpec, k2: ArrayLike) -> ArrayLike:
    """Ĝ_k ∈ (0, 1], exactly 1 at k2 = 0."""
    return _out(spec.symbol(k2))


def inverse_symbol(spec: FilterSpec, k2: ArrayLike) -> ArrayLike:
    if not spec.invertible:
        raise NonInvertibleFilterError(spec.kind)
    return _out(spec.inverse_symbol(k2))


def filter_log_complement(spec: FilterSpec, k2: ArrayLike) -> ArrayLike:
    """ln(1 − Ĝ_k), −inf at k2 = 0."""
    return _out(spec.log_complement(k2))


def apply_filter(spec: FilterSpec, f: SpectralField) -> SpectralField:
    return f.scaled(spec.symbol(f.lattice.k2))


def apply_inverse(spec: FilterSpec, f: SpectralField) -> SpectralField:
    """A = G^{-1}; only for variants with a bounded inverse on the lattice."""
    if not spec.invertible:
        raise NonInvertibleFilterError(spec.kind)
    return f.scaled(spec.inverse_symbol(f.lattice.k2))


def gaussian_approx_error(alpha: float, m: int, k2: ArrayLike) -> ArrayLike:
    """|G̃_k − G̃_{m,k}|, bounded by 2/m uniformly in k."""
    gauss = Gaussian(alpha=alpha).symbol(k2)
    approx = GaussianApprox(alpha=alpha, m=m).symbol(k2)
    return _out(np.abs(gauss - approx))


def helmholtz_power_sandwich(mu: float, m: int, k2: ArrayLike) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
    """(1/(2^{m−1}(1+μ^{2m}|k|^{2m})), Ĥ_{m,k}, 1/(1+μ^{2m}|k|^{2m}))."""
    x = mu ** 2 * np.asarray(k2, dtype=float)
    with np.errstate(divide="ignore"):
        log_x = np.log(x)
    log_hi = -np.logaddexp(0.0, m * log_x)
    log_lo = log_hi - (m - 1) * np.log(2.0)
    log_mid = -m * np.log1p(x)
    return _out(np.exp(log_lo)), _out(np.exp(log_mid)), _out(np.exp(log_hi))


def gaussian_operator_gap(alpha: float, m: int, f: SpectralField, s: float = 0.0) -> Tuple[float, float]:
    """(||G̃f − G̃_m f||_s, (2/m)||f||_s)."""
    diff = gaussian_approx_error(alpha, m, f.lattice.k2)
    lhs = weighted_norm(f, np.asarray(diff) ** 2, s)
    rhs = 2.0 / m * sobolev_norm(f, s)
    logger.debug(f"gaussian operator gap alpha={alpha} m={m} s={s}: {lhs:.3e} <= {rhs:.3e}")
    return lhs, rhs
