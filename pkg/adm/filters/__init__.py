from adm.filters.filters import (
    apply_filter,
    apply_inverse,
    filter_log_complement,
    filter_symbol,
    gaussian_approx_error,
    gaussian_operator_gap,
    helmholtz_power_sandwich,
    inverse_symbol,
)
from adm.filters.spec import FilterSpec, Gaussian, GaussianApprox, Helmholtz, HelmholtzPower

__all__ = [
    "FilterSpec",
    "Gaussian",
    "GaussianApprox",
    "Helmholtz",
    "HelmholtzPower",
    "apply_filter",
    "apply_inverse",
    "filter_log_complement",
    "filter_symbol",
    "gaussian_approx_error",
    "gaussian_operator_gap",
    "helmholtz_power_sandwich",
    "inverse_symbol",
]
