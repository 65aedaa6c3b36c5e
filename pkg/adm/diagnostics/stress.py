"""Residual and subfilter stresses, deconvolution defects and the ADM energy metric."""

import logging
from typing import Iterable, Sequence, Tuple

import numpy as np

from adm.deconvolution.deconvolution import DeconvOp, deconv_symbol
from adm.errors import FilterVariantError, NonInvertibleFilterError
from adm.filters.spec import FilterSpec, Helmholtz
from adm.spectral.field import SpectralField
from adm.spectral.operators import band_limit, product_tensor, sobolev_norm, weighted_norm

logger = logging.getLogger(__name__)


def tensor_norm(coeffs: np.ndarray) -> float:
    """L² norm of a tensor field over the torus (mean square, all modes)."""
    return float(np.sqrt(np.sum(coeffs.real ** 2 + coeffs.imag ** 2)))


def _deconvolved_filtered(u: SpectralField, spec: FilterSpec, N: int) -> SpectralField:
    """D_N ū as a single symbol product D̂Ĝ."""
    k2 = u.lattice.k2
    symbol = np.asarray(deconv_symbol(DeconvOp(spec=spec, N=N), k2)) * np.asarray(spec.symbol(k2))
    return u.scaled(symbol)


def residual_stress_norm(u: SpectralField, spec: FilterSpec, N: int) -> float:
    """||τ_N||₀ with τ_N = u⊗u − D_Nū ⊗ D_Nū on the 2/3-rule band."""
    u = band_limit(u)
    w = _deconvolved_filtered(u, spec, N)
    return tensor_norm(product_tensor(u, u) - product_tensor(w, w))


def defect_norm(u: SpectralField, spec: FilterSpec, N: int, s: float) -> float:
    """||u − D_N ū||_s, symbol (1 − Ĝ_k)^{N+1}."""
    log_c = np.asarray(spec.log_complement(u.lattice.k2))
    return weighted_norm(u, np.exp(2 * (N + 1) * log_c), s)


def half_norm_defect(u: SpectralField, spec: FilterSpec, N: int) -> float:
    """||u − D_N ū||_{1/2} for a generalized Helmholtz filter."""
    if not isinstance(spec, Helmholtz):
        raise FilterVariantError(f"half-norm defect needs a Helmholtz filter, got {spec.kind}")
    return defect_norm(u, spec, N, 0.5)


def subfilter_stress_norm(u: SpectralField, spec: FilterSpec, N: int) -> Tuple[float, float, float]:
    """(||S(u,u)||₀, ||S_N(ū,ū)||₀, ||S − S_N||₀).

    S = ū⊗ū − G(u⊗u) is the exact subfilter stress and
    S_N = ū⊗ū − G(D_Nū⊗D_Nū) its ADM closure.
    """
    u = band_limit(u)
    k2 = u.lattice.k2
    g = np.asarray(spec.symbol(k2))
    ubar = u.scaled(g)
    w = _deconvolved_filtered(u, spec, N)
    bar_bar = product_tensor(ubar, ubar)
    exact = bar_bar - g * product_tensor(u, u)
    model = bar_bar - g * product_tensor(w, w)
    return tensor_norm(exact), tensor_norm(model), tensor_norm(exact - model)


def calibrate_constant(fields: Iterable[SpectralField], spec: FilterSpec, N_list: Sequence[int]) -> float:
    """Smallest C with ||τ_N||₀² <= 2C ||u||₁² ||u − D_Nū||²_{1/2} over the given fields and orders."""
    best = 0.0
    for u in fields:
        h1 = sobolev_norm(u, 1.0)
        for N in N_list:
            half = defect_norm(u, spec, N, 0.5)
            denom = 2.0 * h1 ** 2 * half ** 2
            if denom <= 0.0:
                continue
            best = max(best, residual_stress_norm(u, spec, N) ** 2 / denom)
    logger.debug(f"calibrated Sobolev product constant C={best:.4g}")
    return best


def energy_metric(eps: SpectralField, spec: FilterSpec, N: int) -> float:
    """||A^{1/2} D_N^{1/2} ε||₀."""
    if not spec.invertible:
        raise NonInvertibleFilterError(spec.kind)
    k2 = eps.lattice.k2
    symbol = np.asarray(spec.inverse_symbol(k2)) * np.asarray(deconv_symbol(DeconvOp(spec=spec, N=N), k2))
    return weighted_norm(eps, symbol, 0.0)


def helmholtz_energy(eps: SpectralField, spec: Helmholtz) -> float:
    """||ε||₀² + α^{2p}||ε||_p², bounded above by energy_metric(ε)²."""
    return sobolev_norm(eps, 0.0) ** 2 + spec.alpha ** (2 * spec.p) * sobolev_norm(eps, spec.p) ** 2
