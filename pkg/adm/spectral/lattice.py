import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class WaveLattice:
    """Truncated Fourier lattice of the cubic torus of side ``L``.

    Mode indices run over [-n/2, n/2 - 1] per axis and are stored in FFT
    order (0, 1, ..., n/2 - 1, -n/2, ..., -1). The physical wavevector of
    the integer triple m is k = (2π/L)·m.
    """

    n: int
    L: float = 2 * math.pi

    def __post_init__(self):
        if self.n < 4 or self.n % 2:
            raise ValueError(f"grid size must be even and >= 4, got {self.n}")
        if not self.L > 0:
            raise ValueError(f"box size must be positive, got {self.L}")

    @property
    def shape(self) -> tuple:
        return (self.n, self.n, self.n)

    @property
    def size(self) -> int:
        return self.n ** 3

    @property
    def dx(self) -> float:
        return self.L / self.n

    @cached_property
    def mode_index(self) -> np.ndarray:
        """Integer mode numbers along one axis, FFT order."""
        return np.fft.fftfreq(self.n, d=1.0 / self.n).astype(np.int64)

    @cached_property
    def modes(self) -> np.ndarray:
        """Integer triples, shape (3, n, n, n)."""
        m = self.mode_index
        return np.stack(np.meshgrid(m, m, m, indexing="ij"))

    @cached_property
    def k(self) -> np.ndarray:
        """Physical wavevectors, shape (3, n, n, n)."""
        return (2 * math.pi / self.L) * self.modes.astype(float)

    @cached_property
    def k2(self) -> np.ndarray:
        return np.sum(self.k * self.k, axis=0)

    @cached_property
    def kabs(self) -> np.ndarray:
        return np.sqrt(self.k2)

    @cached_property
    def nyquist(self) -> np.ndarray:
        """True where any component equals -n/2; such modes are kept at zero."""
        return np.any(self.modes == -self.n // 2, axis=0)

    @cached_property
    def dealias(self) -> np.ndarray:
        """2/3-rule mask: True where every |m_axis| <= n/3."""
        return np.all(3 * np.abs(self.modes) <= self.n, axis=0)

    @cached_property
    def nonzero(self) -> np.ndarray:
        return self.k2 > 0

    @cached_property
    def grid(self) -> np.ndarray:
        """Collocation points x_j = j L / n, shape (3, n, n, n)."""
        x = np.arange(self.n) * self.dx
        return np.stack(np.meshgrid(x, x, x, indexing="ij"))

    def shells(self) -> np.ndarray:
        """Distinct |k|² values present on the lattice (Nyquist excluded)."""
        return np.unique(self.k2[~self.nyquist])

    def mirror(self, a: np.ndarray) -> np.ndarray:
        """Return b with b[..., m] = a[..., -m] over the last three axes."""
        axes = (-3, -2, -1)
        return np.roll(np.flip(a, axis=axes), 1, axis=axes)
