"""Assemble the modeling-error report of an experiment and write it as CSV."""

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from adm.diagnostics.bounds import (
    bound_corollary,
    bound_fin,
    bound_fin_hm,
    bound_main,
    bound_main_hm,
    bound_residual,
    bound_residual_hm,
    kappa_log10,
)
from adm.diagnostics.rates import fit_rate
from adm.diagnostics.stress import calibrate_constant, defect_norm, energy_metric, residual_stress_norm
from adm.errors import DomainError
from adm.filters.spec import FilterSpec, Helmholtz
from adm.solvers.experiment import ExperimentOutput, resolve_threads
from adm.spectral.operators import sobolev_norm, weighted_norm
from adm.structs.config import SimConfig
from adm.structs.report import BoundValue, ErrorReport, ErrorRow, ErrorSummary
from utils.writer.csvWriter import CsvWriter

logger = logging.getLogger(__name__)

NAN = float("nan")
DETAIL_CSV = "rates_detail.csv"
SUMMARY_CSV = "rates_summary.csv"
CONSTANTS_CSV = "rates_constants.csv"
SUMMARY_COLUMNS = [
    "N", "eps_l2_T", "tau_l2_T", "beta_eps", "r2_eps", "beta_tau", "r2_tau", "log_bound_main", "lhs_T", "holds",
]


class _Bounds:
    """Dispatches the bound formulas on the filter's Helmholtz form."""

    def __init__(self, spec: FilterSpec, nu: float, C: float):
        self.form = spec.helmholtz_form()
        self.helmholtz = isinstance(spec, Helmholtz)
        self.nu = nu
        self.C = C

    @property
    def order(self) -> float:
        return self.form[1] if self.form else 1.0

    def fin(self, u_h1: float, N: int) -> float:
        if self.form is None:
            return NAN
        scale, order = self.form
        return bound_fin(u_h1, scale, order, N) if self.helmholtz else bound_fin_hm(u_h1, scale, int(order), N)

    def residual(self, u_h1: float, N: int) -> float:
        if self.form is None:
            return NAN
        scale, order = self.form
        if self.helmholtz:
            return bound_residual(u_h1, self.nu, self.C, scale, order, N)
        return bound_residual_hm(u_h1, self.C, scale, int(order), N)

    def main(self, u_l4h1: float, N: int) -> Optional[BoundValue]:
        if self.form is None:
            return None
        scale, order = self.form
        if self.helmholtz:
            return bound_main(u_l4h1, self.nu, self.C, scale, order, N)
        return bound_main_hm(u_l4h1, self.nu, self.C, scale, int(order), N)


def _log10(bound: Optional[BoundValue]) -> float:
    return bound.log10_value if bound is not None else NAN


def _report_for_order(out: ExperimentOutput, N: int, bounds: _Bounds) -> Tuple[List[ErrorRow], ErrorSummary]:
    cfg = out.cfg
    spec = cfg.filter
    reference = out.filtered_reference()
    samples = out.adm[N]
    if [s.step for s in samples] != [s.step for s in reference]:
        raise DomainError(f"ADM N={N} samples do not line up with the DNS samples")

    k2 = reference[0].field.lattice.k2
    a_hat = np.asarray(spec.inverse_symbol(k2)) if spec.invertible else np.ones_like(k2)
    t = np.array([s.t for s in samples])
    eps = [ref.field - s.field for ref, s in zip(reference, samples)]
    u = [s.field for s in out.dns]

    eps_l2 = np.array([sobolev_norm(e, 0.0) for e in eps])
    eps_hp = np.array([sobolev_norm(e, bounds.order) for e in eps])
    a_energy = np.array([weighted_norm(e, a_hat, 0.0) ** 2 for e in eps])
    a_grad = np.array([weighted_norm(e, a_hat, 1.0) ** 2 for e in eps])
    grad_integral = cumulative_trapezoid(a_grad, t, initial=0.0)
    lhs = a_energy + cfg.nu * grad_integral

    u_h1 = np.array([sobolev_norm(f, 1.0) for f in u])
    u_l4h1 = cumulative_trapezoid(u_h1 ** 4, t, initial=0.0) ** 0.25
    tau = np.array([residual_stress_norm(f, spec, N) for f in u])
    tau_sq_integral = cumulative_trapezoid(tau ** 2, t, initial=0.0)

    rows = []
    holds = True if bounds.form is not None else None
    for j, s in enumerate(samples):
        main = bounds.main(float(u_l4h1[j]), N)
        if main is not None and not main.dominates(float(lhs[j])):
            logger.warning(f"N={N} step={s.step}: lhs {lhs[j]:.4e} exceeds bound 10^{main.log10_value:.4g}")
            holds = False
        rows.append(ErrorRow(
            N=N,
            step=s.step,
            t=s.t,
            eps_l2=float(eps_l2[j]),
            eps_hp=float(eps_hp[j]),
            grad_integral=float(grad_integral[j]),
            lhs=float(lhs[j]),
            tau_l2=float(tau[j]),
            half_norm=defect_norm(u[j], spec, N, 0.5),
            bound_fin=bounds.fin(float(u_h1[j]), N),
            bound_tau=bounds.residual(float(u_h1[j]), N),
            log_bound_main=_log10(main),
            log_bound_corollary=bound_corollary(float(tau_sq_integral[j]), float(u_l4h1[j]), cfg.nu).log10_value,
            log_bound_corollary_alt=bound_corollary(float(tau_sq_integral[j]), float(u_l4h1[j]), cfg.nu, "margin").log10_value,
            energy_metric=energy_metric(eps[j], spec, N) if spec.invertible else NAN,
        ))
    last = rows[-1]
    summary = ErrorSummary(
        N=N,
        eps_l2_T=last.eps_l2,
        tau_l2_T=last.tau_l2,
        lhs_T=last.lhs,
        log_bound_main=last.log_bound_main,
        holds=holds,
    )
    return rows, summary


def _fit(points: List[Tuple[int, float]], label: str) -> Tuple[Optional[float], Optional[float]]:
    try:
        return fit_rate(points)
    except DomainError as e:
        logger.info(f"no {label} rate fitted: {e}")
        return None, None


def build_error_report(out: ExperimentOutput, cfg: Optional[SimConfig] = None, threads: Optional[int] = None) -> ErrorReport:
    """Modeling error ε_N = ū − w̄_N, residual stress and bounds for every N and sample.

    The bounds use C_effective = max(cfg.C, calibrated C), where the
    calibrated value is the smallest constant consistent with the DNS
    samples themselves.
    """
    cfg = cfg or out.cfg
    spec = cfg.filter
    fields = [s.field for s in out.dns if sobolev_norm(s.field, 1.0) > 0]
    C_cal = calibrate_constant(fields, spec, cfg.N_list)
    C_eff = max(cfg.C, C_cal)
    bounds = _Bounds(spec, cfg.nu, C_eff)

    workers = min(resolve_threads(threads), len(cfg.N_list))
    if workers == 1:
        results = [_report_for_order(out, N, bounds) for N in cfg.N_list]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda N: _report_for_order(out, N, bounds), cfg.N_list))

    rows = [row for chunk, _ in results for row in chunk]
    summary = sorted((s for _, s in results), key=lambda s: s.N)
    beta_eps, r2_eps = _fit([(s.N, s.eps_l2_T) for s in summary], "eps")
    beta_tau, r2_tau = _fit([(s.N, s.tau_l2_T) for s in summary], "tau")

    t = np.array([s.t for s in out.dns])
    u_h1 = np.array([sobolev_norm(s.field, 1.0) for s in out.dns])
    u_l4h1 = float(trapezoid(u_h1 ** 4, t) ** 0.25) if len(t) > 1 else 0.0
    scale, order = spec.helmholtz_form() or (NAN, NAN)
    constants = {
        "C": cfg.C,
        "C_calibrated": C_cal,
        "C_effective": C_eff,
        "nu": cfg.nu,
        "alpha": scale,
        "p": order,
        "u_l4h1": u_l4h1,
        "kappa_log10": kappa_log10(u_l4h1, cfg.nu),
    }
    logger.info(f"error report: N_list={cfg.N_list} beta_eps={beta_eps} C_calibrated={C_cal:.4g} u_l4h1={u_l4h1:.4g}")
    return ErrorReport(
        rows=sorted(rows, key=lambda r: (r.N, r.step)),
        summary=summary,
        beta_eps=beta_eps,
        r2_eps=r2_eps,
        beta_tau=beta_tau,
        r2_tau=r2_tau,
        constants=constants,
    )


def write_error_report(report: ErrorReport, directory: Union[str, Path], config_sha256: str) -> Tuple[Path, Path, Path]:
    """Write the per-(N, t) detail table, the per-N summary table and the constants used by the bounds."""
    directory = Path(directory)
    writer = CsvWriter(config_sha256)
    detail = writer.write(report.detail_frame(), directory / DETAIL_CSV)
    summary = writer.write(report.summary_frame()[SUMMARY_COLUMNS], directory / SUMMARY_CSV)
    constants = writer.write(report.constants_frame(), directory / CONSTANTS_CSV)
    failed = report.failed_orders()
    if failed:
        logger.warning(f"bound check failed for N={failed}")
    return detail, summary, constants
