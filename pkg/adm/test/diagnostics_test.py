import math

import numpy as np
import pandas as pd
import pytest

from adm.diagnostics import (
    boundary_layer_l4h1,
    bound_corollary,
    bound_fin,
    bound_fin_hm,
    bound_main,
    bound_main_hm,
    bound_main_hm_limit,
    bound_residual,
    build_error_report,
    calibrate_constant,
    defect_norm,
    energy_metric,
    fit_rate,
    half_norm_defect,
    helmholtz_energy,
    kappa_log10,
    residual_stress_norm,
    subfilter_stress_norm,
    write_error_report,
)
from adm.diagnostics.report import CONSTANTS_CSV, DETAIL_CSV, SUMMARY_COLUMNS, SUMMARY_CSV
from adm.deconvolution import DeconvOp, rho
from adm.errors import DomainError, FilterVariantError, NonInvertibleFilterError
from adm.filters import Gaussian, GaussianApprox, Helmholtz
from adm.solvers import run_experiment
from adm.spectral import PhysicalField, SpectralField, WaveLattice, random_field, sobolev_norm, taylor_green, to_physical, to_spectral
from adm.structs import SimConfig
from utils.writer.csvWriter import read_config_hash, read_csv

IDENTITY = Helmholtz.model_construct(alpha=0.0, p=1.0)
ORDERS = [0] + [2 ** j for j in range(0, 9)]


def test_residual_stress_trivial_cases():
    lattice = WaveLattice(16)
    assert residual_stress_norm(SpectralField.zeros(lattice), Helmholtz(alpha=0.5), 3) == 0.0
    u = random_field(lattice, seed=1)
    assert residual_stress_norm(u, IDENTITY, 0) == 0.0
    assert residual_stress_norm(u, IDENTITY, 5) == 0.0


def test_residual_stress_matches_quadrature():
    lattice = WaveLattice(16)
    spec = Helmholtz(alpha=0.5, p=1.0)
    N = 2
    u = taylor_green(lattice)
    # every Taylor-Green mode has |k|² = 3, so D_N ū = ρ u
    r = rho(DeconvOp(spec=spec, N=N), 3.0)
    samples = to_physical(u).samples
    tau = (1.0 - r ** 2) * samples[:, None] * samples[None, :]
    expected = math.sqrt(float(np.mean(np.sum(tau ** 2, axis=(0, 1)))))
    assert residual_stress_norm(u, spec, N) == pytest.approx(expected, rel=1e-10)


def test_residual_stress_decays_with_order():
    u = random_field(WaveLattice(16), decay=3.0, seed=4)
    spec = Helmholtz(alpha=0.5)
    assert residual_stress_norm(u, spec, 64) < residual_stress_norm(u, spec, 0)


def test_half_norm_defect_single_mode():
    lattice = WaveLattice(8)
    x, y, z = lattice.grid
    samples = np.stack([np.zeros_like(x), 2 * np.sin(x), np.zeros_like(x)])
    u = to_spectral(PhysicalField(lattice, samples), solenoidal=True)
    assert sobolev_norm(u, 0.5) == pytest.approx(math.sqrt(2.0))
    assert half_norm_defect(u, Helmholtz(alpha=1.0, p=1.0), 0) == pytest.approx(math.sqrt(2.0) / 2)
    assert half_norm_defect(SpectralField.zeros(lattice), Helmholtz(alpha=1.0), 3) == 0.0


def test_half_norm_defect_needs_helmholtz():
    u = random_field(WaveLattice(8), seed=0)
    with pytest.raises(FilterVariantError):
        half_norm_defect(u, Gaussian(alpha=1.0), 1)
    # the general defect norm accepts any filter
    assert defect_norm(u, Gaussian(alpha=1.0), 1, 0.5) > 0


@pytest.mark.parametrize("p", [0.75, 1.0, 2.0, 4.0])
def test_defect_bound_on_random_fields(p):
    lattice = WaveLattice(16)
    rng = np.random.default_rng(int(p * 100))
    alpha = 0.5
    spec = Helmholtz(alpha=alpha, p=p)
    violations = []
    for seed in range(200):
        u = random_field(lattice, decay=float(rng.uniform(0.0, 6.0)), seed=seed)
        h1 = sobolev_norm(u, 1.0)
        for N in ORDERS:
            lhs = half_norm_defect(u, spec, N) ** 2
            rhs = bound_fin(h1, alpha, p, N)
            if lhs - rhs > 1e-12 * max(1.0, rhs):
                violations.append((seed, N, lhs, rhs))
    assert violations == []


def test_defect_rate_for_broadband_field():
    u = random_field(WaveLattice(32), decay=5.0, seed=0)
    spec = Helmholtz(alpha=3.0, p=1.0)
    series = [(N, half_norm_defect(u, spec, N) ** 2) for N in ORDERS]
    beta, _ = fit_rate(series)
    assert 0.35 <= beta <= 0.65


def test_calibrated_constant_closes_the_chain():
    lattice = WaveLattice(16)
    spec = Helmholtz(alpha=0.5)
    fields = [random_field(lattice, decay=3.0, seed=s) for s in range(5)]
    C = calibrate_constant(fields, spec, [0, 2, 8])
    assert C > 0
    for u in fields:
        h1 = sobolev_norm(u, 1.0)
        for N in (0, 2, 8):
            lhs = residual_stress_norm(u, spec, N) ** 2
            assert lhs <= 2 * C * h1 ** 2 * half_norm_defect(u, spec, N) ** 2 * (1 + 1e-12)


def test_subfilter_stress():
    lattice = WaveLattice(16)
    u = random_field(lattice, decay=3.0, seed=6)
    assert subfilter_stress_norm(u, IDENTITY, 3) == (0.0, 0.0, 0.0)
    spec = Helmholtz(alpha=0.5)
    exact, model0, gap0 = subfilter_stress_norm(u, spec, 0)
    _, model64, gap64 = subfilter_stress_norm(u, spec, 64)
    assert exact > 0 and model0 > 0
    assert gap64 < gap0
    assert model64 == pytest.approx(exact, rel=0.1)


def test_energy_metric_dominates_helmholtz_energy():
    eps = random_field(WaveLattice(16), decay=2.0, seed=9)
    for p in (0.75, 1.0, 2.0):
        spec = Helmholtz(alpha=0.4, p=p)
        for N in (0, 3, 16):
            assert helmholtz_energy(eps, spec) <= energy_metric(eps, spec, N) ** 2 * (1 + 1e-12)
    with pytest.raises(NonInvertibleFilterError):
        energy_metric(eps, Gaussian(alpha=1.0), 1)


def test_bound_residual_examples():
    assert bound_residual(0.0, None, 1.0, 1.0, 1.0, 1) == 0.0
    assert bound_residual(1.0, None, 1.0, 1.0, 1.0, 1) == pytest.approx(1.0)
    assert bound_residual(1.0, None, 1.0, 1.0, 1.0, 8) < bound_residual(1.0, None, 1.0, 1.0, 1.0, 1)


def test_bound_fin_hm():
    # m = 1, N = 0: √1·μ·4^{-1/2}·u²
    assert bound_fin_hm(2.0, 0.5, 1, 0) == pytest.approx(1.0)


def test_bound_main_examples():
    zero = bound_main(0.0, 1.0, 1.0, 1.0, 1.0, 1)
    assert zero.value == 0.0 and zero.log_value == -math.inf
    value = bound_main(1.0, 1.0, 1.0, 1.0, 1.0, 1)
    assert value.value == pytest.approx(8 * math.e)
    assert value.log_value == pytest.approx(math.log(8) + 1.0)


def test_bound_main_monotonicity():
    for alpha in (0.1, 0.5, 2.0):
        for p in (0.75, 1.0, 2.0):
            logs = [bound_main(0.8, 0.5, 2.0, alpha, p, N).log_value for N in ORDERS]
            assert all(b < a for a, b in zip(logs, logs[1:]))
            # exact (N+1)^{-1/(2p)} decay
            ratio = logs[-1] - logs[0]
            assert ratio == pytest.approx(-math.log(257) / (2 * p))
    by_alpha = [bound_main(0.8, 0.5, 2.0, alpha, 1.0, 4).log_value for alpha in (0.1, 0.5, 2.0)]
    assert by_alpha == sorted(by_alpha)


def test_bound_main_overflow_stays_in_log_space():
    huge = bound_main(10.0, 0.01, 2.0, 0.5, 1.0, 4)
    assert huge.value == math.inf
    assert math.isfinite(huge.log_value)
    assert huge.dominates(1e300)


def test_bound_main_hm_examples():
    assert bound_main_hm(0.0, 1.0, 1.0, 1.0, 1, 0).value == 0.0
    assert bound_main_hm(1.0, 1.0, 1.0, 1.0, 1, 0).value == pytest.approx(7 * math.e)
    # the N dependence flattens out as m grows
    spread = [
        bound_main_hm(1.0, 1.0, 1.0, 1.0, m, 256).log_value - bound_main_hm(1.0, 1.0, 1.0, 1.0, m, 0).log_value
        for m in (1, 4, 64, 4096)
    ]
    assert all(b > a for a, b in zip(spread, spread[1:]))
    assert abs(spread[-1]) < 1e-3


def test_bound_main_hm_limit_dominates_gaussian_approximant_bound():
    for m in (1, 2, 8, 64):
        approx = GaussianApprox(alpha=1.0, m=m)
        mu, order = approx.helmholtz_form()
        assert mu * math.sqrt(order) <= 5 * approx.alpha
        hm = bound_main_hm(0.9, 0.7, 2.0, mu, m, 3)
        limit = bound_main_hm_limit(0.9, 0.7, 2.0, approx.alpha, m, 3)
        assert hm.log_value <= limit.log_value


def test_bound_corollary_variants():
    published = bound_corollary(2.0, 0.0, 0.5)
    assert published.value == pytest.approx(8 / 0.5 * 2.0)
    margin = bound_corollary(2.0, 0.0, 0.5, "margin")
    assert margin.value == pytest.approx(4 / 0.5 * 2.0)
    assert bound_corollary(0.0, 1.0, 1.0).log_value == -math.inf
    with pytest.raises(ValueError):
        bound_corollary(1.0, 1.0, 1.0, "other")


def test_kappa():
    assert kappa_log10(0.0, 1.0) == -math.inf
    assert kappa_log10(1.0, 1.0) == pytest.approx(1 / math.log(10), abs=1e-4)


def test_kappa_for_atmospheric_boundary_layer():
    u = boundary_layer_l4h1(gradient=3e4, thickness=0.1)
    assert u ** 4 == pytest.approx(8.1e15)
    value = math.log10(kappa_log10(u, 2e-5))
    assert 27 <= value <= 33


def test_fit_rate():
    beta, r2 = fit_rate([(N, (N + 1) ** -0.5) for N in range(8)])
    assert beta == pytest.approx(0.5)
    assert r2 == pytest.approx(1.0)
    beta, _ = fit_rate([(N, 3 * (N + 1) ** -0.25) for N in (0, 1, 2, 4, 8)])
    assert beta == pytest.approx(0.25)
    with pytest.raises(DomainError):
        fit_rate([(0, 1.0), (1, 0.5), (2, 0.0), (3, 0.2)])
    with pytest.raises(DomainError):
        fit_rate([(0, 1.0), (1, 0.5), (2, 0.3)])


def small_config(tmp_path, **overrides) -> SimConfig:
    values = dict(
        n=16,
        nu=0.05,
        filter={"kind": "helmholtz", "alpha": 0.5, "p": 1.0},
        N_list=[0, 1, 2, 4],
        T=0.05,
        dt=0.005,
        sample_every=5,
        output_dir=str(tmp_path),
    )
    values.update(overrides)
    return SimConfig.model_validate(values)


def test_error_report_tables(tmp_path):
    out = run_experiment(small_config(tmp_path), deterministic=True)
    report = build_error_report(out, threads=2)
    assert len(report.rows) == 4 * 3
    assert [s.N for s in report.summary] == [0, 1, 2, 4]
    assert all(s.holds for s in report.summary)
    first = [r for r in report.rows if r.step == 0]
    assert all(r.eps_l2 == 0.0 and r.lhs == 0.0 for r in first)
    for row in report.rows:
        assert row.eps_l2 >= 0 and row.tau_l2 >= 0 and row.half_norm >= 0
        assert row.half_norm ** 2 <= row.bound_fin * (1 + 1e-12)
        if row.step > 0:
            assert row.energy_metric ** 2 >= row.eps_l2 ** 2
    assert report.beta_eps is not None and report.beta_tau is not None
    assert report.constants["C_effective"] >= report.constants["C_calibrated"]

    detail, summary, constants = write_error_report(report, tmp_path, out.config_sha256)
    assert detail.name == DETAIL_CSV and summary.name == SUMMARY_CSV and constants.name == CONSTANTS_CSV
    assert read_config_hash(detail) == out.config_sha256
    frame = read_csv(detail)
    assert list(frame.columns) == [
        "N", "step", "t", "eps_l2", "eps_hp", "grad_integral", "lhs", "tau_l2", "half_norm", "bound_fin",
        "bound_tau", "log_bound_main", "log_bound_corollary", "log_bound_corollary_alt", "energy_metric",
    ]
    assert list(read_csv(summary).columns) == SUMMARY_COLUMNS
    table = read_csv(constants).set_index("name")["value"]
    assert list(table.index) == ["C", "C_calibrated", "C_effective", "nu", "alpha", "p", "u_l4h1", "kappa_log10"]
    assert table["C_calibrated"] == pytest.approx(report.constants["C_calibrated"], rel=1e-12)
    assert table["kappa_log10"] == pytest.approx(report.constants["kappa_log10"], rel=1e-12)
    assert table["alpha"] == 0.5 and table["nu"] == 0.05


def test_error_report_without_bound_form(tmp_path):
    cfg = small_config(tmp_path, filter={"kind": "gaussian", "alpha": 0.5}, N_list=[0, 1], T=0.01)
    report = build_error_report(run_experiment(cfg, write=False), threads=1)
    assert all(math.isnan(r.log_bound_main) and math.isnan(r.energy_metric) for r in report.rows)
    # nothing to check is not a failure
    assert all(s.holds is None for s in report.summary)
    assert report.failed_orders() == []
    _, summary, constants = write_error_report(report, tmp_path, "gauss")
    assert read_csv(summary)["holds"].isna().all()
    assert math.isnan(read_csv(constants).set_index("name")["value"]["alpha"])
    assert report.beta_eps is None


@pytest.fixture(scope="module")
def taylor_green_report(tmp_path_factory):
    cfg = SimConfig.model_validate(dict(
        n=16,
        nu=0.05,
        filter={"kind": "helmholtz", "alpha": 0.5, "p": 1.0},
        N_list=[0, 1, 2, 4, 8],
        T=1.0,
        dt=0.005,
        sample_every=20,
        output_dir=str(tmp_path_factory.mktemp("report")),
    ))
    return build_error_report(run_experiment(cfg, threads=4), threads=4)


def test_taylor_green_error_stays_below_bound(taylor_green_report):
    report = taylor_green_report
    assert all(s.holds for s in report.summary)
    by_N = {s.N: s for s in report.summary}
    assert by_N[8].eps_l2_T * 1.5 <= by_N[0].eps_l2_T
    # bound decreases with N while the Gronwall factor makes it astronomically loose
    assert by_N[8].log_bound_main < by_N[0].log_bound_main
    assert min(s.log_bound_main - math.log10(s.lhs_T) for s in report.summary) > 10
    frame = report.detail_frame()
    assert isinstance(frame, pd.DataFrame)
    assert (frame.groupby("N")["grad_integral"].diff().dropna() >= 0).all()


if __name__ == "__main__":
    pytest.main([__file__])
