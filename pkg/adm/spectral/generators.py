"""Reference velocity fields: Taylor-Green vortex and broadband random spectra."""

import numpy as np

from adm.spectral.field import PhysicalField, SpectralField
from adm.spectral.lattice import WaveLattice
from adm.spectral.operators import leray_project, sobolev_norm, to_spectral


def taylor_green(lattice: WaveLattice, amplitude: float = 1.0) -> SpectralField:
    """(A sin x cos y cos z, −A cos x sin y cos z, 0) in box units 2π/L."""
    x, y, z = (2 * np.pi / lattice.L) * lattice.grid
    samples = np.stack([
        amplitude * np.sin(x) * np.cos(y) * np.cos(z),
        -amplitude * np.cos(x) * np.sin(y) * np.cos(z),
        np.zeros_like(x),
    ])
    return to_spectral(PhysicalField(lattice, samples), solenoidal=True)


def random_field(
    lattice: WaveLattice,
    decay: float = 5.0,
    seed: int = 0,
    amplitude: float = 1.0,
    solenoidal: bool = True,
) -> SpectralField:
    """Hermitian zero-mean field with E|û_k|² proportional to |k|^(-decay).

    The result is scaled so that its L² coefficient norm equals
    ``amplitude``; the same seed always gives the same field.
    """
    rng = np.random.default_rng(seed)
    shape = (3,) + lattice.shape
    raw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    envelope = np.zeros(lattice.shape)
    keep = lattice.nonzero & ~lattice.nyquist
    envelope[keep] = lattice.k2[keep] ** (-decay / 4.0)
    raw *= envelope[np.newaxis]
    coeffs = 0.5 * (raw + np.conj(lattice.mirror(raw)))
    field = SpectralField(lattice, coeffs, solenoidal=False)
    if solenoidal:
        field = leray_project(field)
    norm = sobolev_norm(field, 0.0)
    if norm == 0.0:
        return field
    return field * (amplitude / norm)
