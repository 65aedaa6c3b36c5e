from adm.diagnostics.bounds import (
    boundary_layer_l4h1,
    bound_corollary,
    bound_fin,
    bound_fin_hm,
    bound_main,
    bound_main_hm,
    bound_main_hm_limit,
    bound_residual,
    bound_residual_hm,
    kappa_log10,
)
from adm.diagnostics.rates import fit_rate
from adm.diagnostics.report import build_error_report, write_error_report
from adm.diagnostics.stress import (
    calibrate_constant,
    defect_norm,
    energy_metric,
    half_norm_defect,
    helmholtz_energy,
    residual_stress_norm,
    subfilter_stress_norm,
)

__all__ = [
    "boundary_layer_l4h1",
    "bound_corollary",
    "bound_fin",
    "bound_fin_hm",
    "bound_main",
    "bound_main_hm",
    "bound_main_hm_limit",
    "bound_residual",
    "bound_residual_hm",
    "build_error_report",
    "calibrate_constant",
    "defect_norm",
    "energy_metric",
    "fit_rate",
    "half_norm_defect",
    "helmholtz_energy",
    "kappa_log10",
    "residual_stress_norm",
    "subfilter_stress_norm",
    "write_error_report",
]
