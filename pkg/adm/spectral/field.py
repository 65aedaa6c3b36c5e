from dataclasses import dataclass
from typing import Union

import numpy as np

from adm.errors import FieldInvariantError, LatticeMismatchError
from adm.spectral.lattice import WaveLattice

ZERO_MEAN_TOL = 1e-14
HERMITIAN_TOL = 1e-12
DIVERGENCE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Fourier coefficients û_k of a real vector field on the torus.

    ``coeffs`` has shape (3, n, n, n) in the lattice's FFT order and is
    stored read-only. ``solenoidal`` flags fields that are expected to be
    divergence-free.
    """

    lattice: WaveLattice
    coeffs: np.ndarray
    solenoidal: bool = False

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if coeffs.shape != (3,) + self.lattice.shape:
            raise ValueError(f"expected coefficient shape {(3,) + self.lattice.shape}, got {coeffs.shape}")
        if coeffs is self.coeffs:
            coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, lattice: WaveLattice, solenoidal: bool = True) -> "SpectralField":
        return cls(lattice, np.zeros((3,) + lattice.shape, dtype=np.complex128), solenoidal)

    def replace(self, coeffs: np.ndarray, solenoidal: bool = None) -> "SpectralField":
        return SpectralField(self.lattice, coeffs, self.solenoidal if solenoidal is None else solenoidal)

    def scaled(self, symbol: np.ndarray) -> "SpectralField":
        """Multiply every component by a real per-mode symbol."""
        return self.replace(self.coeffs * symbol[np.newaxis])

    def same_lattice(self, other: "SpectralField") -> None:
        if self.lattice != other.lattice:
            raise LatticeMismatchError(f"lattice mismatch: {self.lattice} vs {other.lattice}")

    def __add__(self, other: "SpectralField") -> "SpectralField":
        self.same_lattice(other)
        return SpectralField(self.lattice, self.coeffs + other.coeffs, self.solenoidal and other.solenoidal)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        self.same_lattice(other)
        return SpectralField(self.lattice, self.coeffs - other.coeffs, self.solenoidal and other.solenoidal)

    def __mul__(self, factor: Union[float, int]) -> "SpectralField":
        return self.replace(self.coeffs * float(factor))

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return self.replace(-self.coeffs)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.coeffs)))

    def validate(self) -> "SpectralField":
        """Raise FieldInvariantError unless the field meets its invariants.

        Tolerances are relative to the largest coefficient modulus so that
        round-off level modes do not trip the checks.
        """
        lattice = self.lattice
        c = self.coeffs
        scale = float(np.max(np.abs(c))) if c.size else 0.0
        if scale == 0.0:
            return self
        if not self.is_finite():
            raise FieldInvariantError("non-finite coefficients")
        mean = float(np.max(np.abs(c[:, 0, 0, 0])))
        if mean > ZERO_MEAN_TOL * scale:
            raise FieldInvariantError(f"nonzero mean mode: {mean:.3e}")
        nyq = float(np.max(np.abs(c[:, lattice.nyquist]))) if lattice.nyquist.any() else 0.0
        if nyq > ZERO_MEAN_TOL * scale:
            raise FieldInvariantError(f"nonzero Nyquist mode: {nyq:.3e}")
        asym = float(np.max(np.abs(c - np.conj(lattice.mirror(c)))))
        if asym > HERMITIAN_TOL * scale:
            raise FieldInvariantError(f"Hermitian symmetry violated: {asym:.3e}")
        if self.solenoidal:
            div = np.abs(np.sum(lattice.k * c, axis=0))
            if np.any(div > DIVERGENCE_TOL * lattice.kabs * scale):
                raise FieldInvariantError(f"divergence not zero: {float(div.max()):.3e}")
        return self


@dataclass(frozen=True, eq=False)
class PhysicalField:
    """Real samples of a vector field on the n³ collocation grid."""

    lattice: WaveLattice
    samples: np.ndarray

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.shape != (3,) + self.lattice.shape:
            raise ValueError(f"expected sample shape {(3,) + self.lattice.shape}, got {samples.shape}")
        object.__setattr__(self, "samples", samples)
