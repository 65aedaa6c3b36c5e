"""Right-hand sides of the modeling-error estimates.

Bounds carrying the Gronwall factor exp(u⁴/ν³) overflow a float almost
immediately, so they are assembled in natural-log space and returned as
BoundValue.
"""

import math

from adm.structs.report import BoundValue


def _log(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def bound_fin(u_h1: float, alpha: float, p: float, N: int) -> float:
    """α(2p(N+1))^{-1/(2p)} ||u||₁², bound on ||u − D_Nū||²_{1/2}."""
    return alpha * (2 * p * (N + 1)) ** (-1.0 / (2 * p)) * u_h1 ** 2


def bound_fin_hm(u_h1: float, mu: float, m: int, N: int) -> float:
    """√m μ (4(N+1))^{-1/(2m)} ||u||₁², the same bound for H_m filters."""
    return math.sqrt(m) * mu * (4 * (N + 1)) ** (-1.0 / (2 * m)) * u_h1 ** 2


def bound_residual(u_h1: float, nu: float, C: float, alpha: float, p: float, N: int) -> float:
    """2Cα(2p(N+1))^{-1/(2p)} ||u||₁⁴, bound on ||τ_N||₀². ``nu`` does not enter."""
    return 2 * C * bound_fin(u_h1, alpha, p, N) * u_h1 ** 2


def bound_residual_hm(u_h1: float, C: float, mu: float, m: int, N: int) -> float:
    return 2 * C * bound_fin_hm(u_h1, mu, m, N) * u_h1 ** 2


def _gronwall_log(u_l4h1: float, nu: float, rate: float = 1.0) -> float:
    """ln(u⁴ e^{rate·u⁴/ν³})."""
    u4 = u_l4h1 ** 4
    return _log(u4) + rate * u4 / nu ** 3


def bound_main(u_l4h1: float, nu: float, C: float, alpha: float, p: float, N: int) -> BoundValue:
    """16Cα/(ν(2p(N+1))^{1/(2p)}) · u⁴ · exp(u⁴/ν³) with u = ||u||_{L⁴H¹}."""
    log_value = (
        math.log(16 * C * alpha)
        - math.log(nu)
        - math.log(2 * p * (N + 1)) / (2 * p)
        + _gronwall_log(u_l4h1, nu)
    )
    return BoundValue.from_log(log_value)


def bound_main_hm(u_l4h1: float, nu: float, C: float, mu: float, m: int, N: int) -> BoundValue:
    """14Cμ√m/(ν(4(N+1))^{1/(2m)}) · u⁴ · exp(u⁴/ν³) for H_m filters."""
    log_value = (
        math.log(14 * C * mu * math.sqrt(m))
        - math.log(nu)
        - math.log(4 * (N + 1)) / (2 * m)
        + _gronwall_log(u_l4h1, nu)
    )
    return BoundValue.from_log(log_value)


def bound_main_hm_limit(u_l4h1: float, nu: float, C: float, alpha: float, m: int, N: int) -> BoundValue:
    """bound_main_hm with μ√m <= 5α substituted, the form used for Gaussian approximants."""
    log_value = (
        math.log(70 * C * alpha)
        - math.log(nu)
        - math.log(4 * (N + 1)) / (2 * m)
        + _gronwall_log(u_l4h1, nu)
    )
    return BoundValue.from_log(log_value)


COROLLARY_VARIANTS = {
    "published": (8.0, 1.0),
    "margin": (4.0, 27.0),
}


def bound_corollary(tau_sq_integral: float, u_l4h1: float, nu: float, variant: str = "published") -> BoundValue:
    """(c/ν) e^{r u⁴/ν³} ∫||τ_N||₀², with (c, r) = (8, 1) or the alternative (4, 27)."""
    try:
        factor, rate = COROLLARY_VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown corollary variant {variant!r}, expected one of {sorted(COROLLARY_VARIANTS)}") from None
    log_value = math.log(factor) - math.log(nu) + rate * u_l4h1 ** 4 / nu ** 3 + _log(tau_sq_integral)
    return BoundValue.from_log(log_value)


def kappa_log10(u_l4h1: float, nu: float) -> float:
    """log₁₀ κ for κ = (1/ν) u⁴ e^{u⁴/ν³}; −inf for u = 0."""
    if u_l4h1 == 0.0:
        return -math.inf
    u4 = u_l4h1 ** 4
    return math.log10(u4 / nu) + u4 / (nu ** 3 * math.log(10.0))


def boundary_layer_l4h1(gradient: float, thickness: float, width: float = 1.0, length: float = 1.0, duration: float = 1.0) -> float:
    """||u||_{L⁴H¹} for a layer with uniform shear ``gradient`` held for ``duration``.

    ||∇u||₀² is taken as gradient²·volume, constant in time.
    """
    h1_sq = gradient ** 2 * thickness * width * length
    return (h1_sq ** 2 * duration) ** 0.25
