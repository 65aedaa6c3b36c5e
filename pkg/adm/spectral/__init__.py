from adm.spectral.field import PhysicalField, SpectralField
from adm.spectral.generators import random_field, taylor_green
from adm.spectral.lattice import WaveLattice
from adm.spectral.operators import (
    band_limit,
    divergence_norm,
    energy,
    leray_project,
    nonlinear_term,
    product_tensor,
    sobolev_norm,
    to_physical,
    to_spectral,
)

__all__ = [
    "band_limit",
    "PhysicalField",
    "SpectralField",
    "WaveLattice",
    "divergence_norm",
    "energy",
    "leray_project",
    "nonlinear_term",
    "product_tensor",
    "random_field",
    "sobolev_norm",
    "taylor_green",
    "to_physical",
    "to_spectral",
]
