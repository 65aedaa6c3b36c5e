"""Transforms, Sobolev norms, Leray projection and the dealiased nonlinear term."""

import numpy as np
import scipy.fft as spfft

from adm.spectral.field import PhysicalField, SpectralField
from adm.spectral.lattice import WaveLattice

AXES = (-3, -2, -1)


def forward(samples: np.ndarray, lattice: WaveLattice) -> np.ndarray:
    """Coefficients with u(x) = Σ û_k e^{ik·x}; Nyquist modes zeroed."""
    coeffs = spfft.fftn(samples, axes=AXES, norm="forward")
    coeffs[..., lattice.nyquist] = 0.0
    return coeffs


def backward(coeffs: np.ndarray) -> np.ndarray:
    return spfft.ifftn(coeffs, axes=AXES, norm="forward").real


def to_physical(f: SpectralField) -> PhysicalField:
    return PhysicalField(f.lattice, backward(f.coeffs))


def to_spectral(g: PhysicalField, solenoidal: bool = False) -> SpectralField:
    coeffs = forward(g.samples, g.lattice)
    coeffs[:, 0, 0, 0] = 0.0
    return SpectralField(g.lattice, coeffs, solenoidal)


def _weights(lattice: WaveLattice, s: float) -> np.ndarray:
    w = np.zeros(lattice.shape)
    nz = lattice.nonzero
    w[nz] = lattice.k2[nz] ** s
    return w


def mode_energy(f: SpectralField) -> np.ndarray:
    """|û_k|² summed over components."""
    return np.sum(f.coeffs.real ** 2 + f.coeffs.imag ** 2, axis=0)


def sobolev_norm(f: SpectralField, s: float) -> float:
    """( Σ_{k≠0} |k|^{2s} |û_k|² )^{1/2} over all retained signed modes."""
    return float(np.sqrt(np.sum(_weights(f.lattice, s) * mode_energy(f))))


def weighted_norm(f: SpectralField, symbol: np.ndarray, s: float = 0.0) -> float:
    """( Σ_{k≠0} |k|^{2s} symbol_k |û_k|² )^{1/2} for a nonnegative symbol."""
    return float(np.sqrt(np.sum(_weights(f.lattice, s) * symbol * mode_energy(f))))


def energy(f: SpectralField) -> float:
    return 0.5 * sobolev_norm(f, 0.0) ** 2


def divergence_norm(f: SpectralField) -> float:
    """||k·û||/||f||₁, zero for the zero field."""
    h1 = sobolev_norm(f, 1.0)
    if h1 == 0.0:
        return 0.0
    div = np.sum(f.lattice.k * f.coeffs, axis=0)
    return float(np.sqrt(np.sum(np.abs(div) ** 2)) / h1)


def leray_project(f: SpectralField) -> SpectralField:
    """û_k ← û_k − k (k·û_k)/|k|²; the k = 0 mode is passed through."""
    lattice = f.lattice
    k2 = np.where(lattice.nonzero, lattice.k2, 1.0)
    kdotu = np.sum(lattice.k * f.coeffs, axis=0)
    coeffs = f.coeffs - lattice.k * (kdotu / k2)[np.newaxis]
    return f.replace(coeffs, solenoidal=True)


def band_limit(f: SpectralField) -> SpectralField:
    """Zero every mode outside the 2/3-rule band."""
    return f.replace(f.coeffs * f.lattice.dealias)


def product_tensor(u: SpectralField, v: SpectralField) -> np.ndarray:
    """Coefficients of u_i v_j, shape (3, 3, n, n, n), zeroed outside the 2/3-rule band.

    The inputs are transformed as given. For band-limited inputs the result
    is the exact convolution restricted to the band.
    """
    u.same_lattice(v)
    up = backward(u.coeffs)
    vp = up if v is u else backward(v.coeffs)
    prod = up[:, np.newaxis] * vp[np.newaxis, :]
    coeffs = spfft.fftn(prod, axes=AXES, norm="forward")
    coeffs[..., ~u.lattice.dealias] = 0.0
    return coeffs


def nonlinear_term(u: SpectralField, v: SpectralField) -> SpectralField:
    """Pseudo-spectral ∇·(u ⊗ v) with 2/3-rule dealiasing of the result."""
    tensor = product_tensor(u, v)
    coeffs = 1j * np.einsum("jxyz,ijxyz->ixyz", u.lattice.k, tensor)
    return SpectralField(u.lattice, coeffs, solenoidal=False)
