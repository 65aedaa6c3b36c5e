"""Fixed-step integrating-factor SSP-RK3 for the projected NSE and the ADM system.

Both runs share one right-hand side

    N(u) = −P[post·∇·(pre u ⊗ pre u)] + P[post f]

with pre = post = I for DNS and pre = D_N, post = G for ADM; diffusion is
integrated exactly through E(τ) = exp(−ν|k|²τ). The pre-applied field is
truncated to the 2/3-rule band before the product.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from adm.deconvolution.deconvolution import DeconvOp, deconv_symbol
from adm.errors import BlowUpError, LatticeMismatchError
from adm.spectral.field import SpectralField
from adm.spectral.lattice import WaveLattice
from adm.spectral.operators import band_limit, leray_project, nonlinear_term
from adm.structs.config import SimConfig
from utils.parser.snapshotParser import SnapshotParser

logger = logging.getLogger(__name__)


@dataclass
class SolverState:
    """Velocity (u for DNS, w̄_N for ADM) at step ``step``, time ``t``."""

    t: float
    field: SpectralField
    step: int = 0


def lattice_of(cfg: SimConfig) -> WaveLattice:
    return WaveLattice(cfg.n, cfg.L)


@lru_cache(maxsize=8)
def _read_forcing(path: str) -> SpectralField:
    return SnapshotParser().parseFile(path)


def load_forcing(cfg: SimConfig) -> Optional[SpectralField]:
    if cfg.forcing is None:
        return None
    f = _read_forcing(cfg.forcing.path)
    if f.lattice != lattice_of(cfg):
        raise LatticeMismatchError(f"forcing lattice {f.lattice} does not match config n={cfg.n} L={cfg.L}")
    return f


class Integrator:
    """One-step map for a fixed (pre, post) operator pair.

    Args:
        lattice: wave lattice of every state advanced by this integrator
        nu: kinematic viscosity
        dt: step size
        pre: symbol applied to the velocity before the product, or None
        post: symbol applied to the divergence of the product, or None
        forcing: body force, already filtered for ADM runs, or None
        run: label used in blow-up errors and progress lines
    """

    def __init__(
        self,
        lattice: WaveLattice,
        nu: float,
        dt: float,
        pre: Optional[np.ndarray] = None,
        post: Optional[np.ndarray] = None,
        forcing: Optional[SpectralField] = None,
        run: str = "dns",
    ):
        self.lattice = lattice
        self.dt = dt
        self.pre = pre
        self.post = post
        self.run = run
        decay = -nu * lattice.k2
        self.e_full = np.exp(decay * dt)
        self.e_half = np.exp(decay * dt / 2)
        self.e_back = np.exp(-decay * dt / 2)
        self.forcing = None
        if forcing is not None:
            if forcing.lattice != lattice:
                raise LatticeMismatchError(f"forcing lattice {forcing.lattice} does not match {lattice}")
            self.forcing = leray_project(forcing if post is None else forcing.scaled(post)).coeffs

    @classmethod
    def dns(cls, cfg: SimConfig, forcing: Optional[SpectralField] = None) -> "Integrator":
        return cls(lattice_of(cfg), cfg.nu, cfg.dt, forcing=forcing, run="dns")

    @classmethod
    def adm(cls, cfg: SimConfig, N: int, forcing: Optional[SpectralField] = None) -> "Integrator":
        lattice = lattice_of(cfg)
        pre = np.asarray(deconv_symbol(DeconvOp(spec=cfg.filter, N=N), lattice.k2))
        post = np.asarray(cfg.filter.symbol(lattice.k2))
        return cls(lattice, cfg.nu, cfg.dt, pre=pre, post=post, forcing=forcing, run=f"adm_N{N}")

    def rhs(self, coeffs: np.ndarray) -> np.ndarray:
        u = SpectralField(self.lattice, coeffs)
        v = band_limit(u if self.pre is None else u.scaled(self.pre))
        nl = nonlinear_term(v, v).coeffs
        if self.post is not None:
            nl = nl * self.post[np.newaxis]
        total = -nl if self.forcing is None else self.forcing - nl
        return leray_project(u.replace(total)).coeffs

    def step(self, state: SolverState) -> SolverState:
        u, dt = state.field.coeffs, self.dt
        ef, eh, eb = self.e_full, self.e_half, self.e_back
        u1 = ef * (u + dt * self.rhs(u))
        u2 = 0.75 * eh * u + 0.25 * eb * (u1 + dt * self.rhs(u1))
        u3 = (1.0 / 3.0) * ef * u + (2.0 / 3.0) * eh * (u2 + dt * self.rhs(u2))
        step = state.step + 1
        if not np.all(np.isfinite(u3)):
            raise BlowUpError(step, self.run)
        return SolverState(t=step * dt, field=SpectralField(self.lattice, u3, solenoidal=True), step=step)


def dns_step(state: SolverState, cfg: SimConfig) -> SolverState:
    """Advance the projected Navier-Stokes equations by one step of size cfg.dt."""
    return Integrator.dns(cfg, load_forcing(cfg)).step(state)


def adm_step(state: SolverState, cfg: SimConfig, N: int) -> SolverState:
    """Advance the ADM system of order N by one step; forcing enters as G f."""
    return Integrator.adm(cfg, N, load_forcing(cfg)).step(state)
