"""Periodic grids on [-L, L)^n standing in for R^n, and their Fourier images.

Normalisation
-------------
Samples sit at ``x_j = -L + j dx`` with ``dx = 2L/N``. Spectral coefficients
are taken against the orthonormal torus basis ``exp(i xi_k x) / (2L)^(n/2)``::

    c_k = (2L)^(-n/2) dx^n  sum_j f(x_j) exp(-i xi_k x_j),   xi_k = (pi / L) k,

so ``sum |c_k|^2 = dx^n sum |f_j|^2`` (Parseval, no extra weights) and
``c_k = dxi^(n/2) f_hat(xi_k)`` up to aliasing, where ``dxi = pi / L`` and
``f_hat(xi) = (2 pi)^(-n/2) int f(x) exp(-i xi x) dx`` is the unitary
continuum transform. For instance ``exp(-|x|^2/2)`` has
``c_k = dxi^(n/2) exp(-|xi_k|^2 / 2)``.

Coefficient arrays use numpy's FFT ordering along every axis: index ``k``
holds the integer frequency ``k`` for ``k < N/2`` and ``k - N`` otherwise.
"""
from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np
from scipy import fft as sfft


@dataclass(frozen=True)
class GridSpec:
    n: int
    N: int
    L: float

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise ValueError(f"dimension must be 1, 2 or 3, got {self.n}")
        if self.N < 8 or self.N % 2:
            raise ValueError(f"points per dimension must be even and >= 8, got {self.N}")
        if not self.L > 0:
            raise ValueError(f"half width must be positive, got {self.L}")
        object.__setattr__(self, "L", float(self.L))

    @property
    def shape(self):
        return (self.N,) * self.n

    @property
    def dx(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def dxi(self) -> float:
        return math.pi / self.L

    xi_min = dxi

    @property
    def xi_max(self) -> float:
        return math.pi * self.N / (2.0 * self.L)

    @property
    def cell_volume(self) -> float:
        return self.dx**self.n

    @property
    def spectral_cell_volume(self) -> float:
        return self.dxi**self.n

    def axis(self) -> np.ndarray:
        return -self.L + self.dx * np.arange(self.N)

    def coordinates(self):
        """Per-axis coordinate arrays broadcastable to ``shape``."""
        return np.meshgrid(*([self.axis()] * self.n), indexing="ij", sparse=True)

    def radius(self) -> np.ndarray:
        return np.sqrt(sum(c**2 for c in self.coordinates()))

    def frequency_axis(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.N, d=self.dx)

    def frequencies(self):
        return np.meshgrid(*([self.frequency_axis()] * self.n), indexing="ij", sparse=True)

    def xi_magnitude(self) -> np.ndarray:
        """``|xi_k|`` in FFT ordering (cached, read-only)."""
        return _xi_magnitude(self, False)

    def xi_magnitude_half(self) -> np.ndarray:
        """``|xi_k|`` on the real-FFT half spectrum (cached, read-only)."""
        return _xi_magnitude(self, True)

    def dc_cell_radius(self) -> float:
        """Radius of the ball whose volume equals one spectral cell."""
        unit_ball = math.pi ** (self.n / 2) / math.gamma(self.n / 2 + 1)
        return self.dxi * unit_ball ** (-1.0 / self.n)

    def infrared_horizon(self, params) -> float:
        """Largest time at which decay on this grid still tracks the continuum."""
        return 0.1 * self.xi_min ** (-2.0 * (params.sigma - params.delta))


@lru_cache(maxsize=8)
def _xi_magnitude(grid, half):
    axes = [grid.frequency_axis()] * grid.n
    if half:
        axes[-1] = 2.0 * np.pi * np.fft.rfftfreq(grid.N, d=grid.dx)
    mesh = np.meshgrid(*axes, indexing="ij", sparse=True)
    out = np.sqrt(sum(k**2 for k in mesh))
    out = np.broadcast_to(out, tuple(len(ax) for ax in axes)).copy()
    out.setflags(write=False)
    return out


def _transform_scale(grid):
    return grid.cell_volume / (2.0 * grid.L) ** (grid.n / 2)


class RealField:
    """Real samples on a grid, stored as an ``(N,)*n`` array (row-major)."""

    __slots__ = ("grid", "samples")

    def __init__(self, grid: GridSpec, samples):
        samples = np.array(samples, dtype=float)
        if samples.size != grid.N**grid.n:
            raise ValueError(f"expected {grid.N ** grid.n} samples, got {samples.size}")
        samples = samples.reshape(grid.shape)
        if not np.all(np.isfinite(samples)):
            raise ValueError("field samples must be finite")
        samples.setflags(write=False)
        self.grid = grid
        self.samples = samples

    def __add__(self, other):
        _same_grid(self, other)
        return RealField(self.grid, self.samples + other.samples)

    def __sub__(self, other):
        _same_grid(self, other)
        return RealField(self.grid, self.samples - other.samples)

    def __mul__(self, c):
        return RealField(self.grid, self.samples * float(c))

    __rmul__ = __mul__

    def __repr__(self):
        return f"RealField({self.grid})"

    @classmethod
    def zeros(cls, grid):
        return cls(grid, np.zeros(grid.shape))


class SpectralField:
    """Fourier coefficients of a field in FFT ordering (see module docstring)."""

    __slots__ = ("grid", "coefficients")

    def __init__(self, grid: GridSpec, coefficients):
        coefficients = np.array(coefficients, dtype=complex)
        if coefficients.shape != grid.shape:
            raise ValueError(f"expected coefficient shape {grid.shape}, got {coefficients.shape}")
        coefficients.setflags(write=False)
        self.grid = grid
        self.coefficients = coefficients

    def __add__(self, other):
        _same_grid(self, other)
        return SpectralField(self.grid, self.coefficients + other.coefficients)

    def __repr__(self):
        return f"SpectralField({self.grid})"


def _same_grid(a, b):
    if a.grid != b.grid:
        raise ValueError(f"grid mismatch: {a.grid} vs {b.grid}")


def forward_transform(f: RealField) -> SpectralField:
    c = sfft.fftn(sfft.ifftshift(f.samples)) * _transform_scale(f.grid)
    return SpectralField(f.grid, c)


def inverse_transform(F: SpectralField, check_real: bool = True) -> RealField:
    z = sfft.fftshift(sfft.ifftn(F.coefficients)) / _transform_scale(F.grid)
    if check_real:
        scale = max(np.max(np.abs(z.real)), 1e-300)
        if np.max(np.abs(z.imag)) > 1e-8 * scale:
            raise ValueError("spectrum is not Hermitian; inverse is not a real field")
    return RealField(F.grid, z.real)


def real_spectrum(f: RealField) -> np.ndarray:
    """Half-spectrum coefficients (real FFT), same normalisation as :func:`forward_transform`."""
    return sfft.rfftn(sfft.ifftshift(f.samples)) * _transform_scale(f.grid)


def real_inverse(grid: GridSpec, half) -> RealField:
    z = sfft.irfftn(half, s=grid.shape) / _transform_scale(grid)
    return RealField(grid, sfft.fftshift(z))


def apply_fractional_laplacian(F: SpectralField, a: float) -> SpectralField:
    """Multiply by ``|xi|^(2a)``, the symbol of ``(-Delta)^a``."""
    if a < 0:
        raise ValueError(f"order must be nonnegative, got {a}")
    if a == 0:
        return F
    return SpectralField(F.grid, F.coefficients * F.grid.xi_magnitude() ** (2.0 * a))


@dataclass(frozen=True)
class CutoffSpec:
    r0: float
    r1: float

    def __post_init__(self):
        if not 0 < self.r0 < self.r1:
            raise ValueError(f"need 0 < r0 < r1, got r0={self.r0}, r1={self.r1}")


def smooth_cutoff(xi_mag, spec: CutoffSpec):
    """C^1 smoothstep: 1 on ``[0, r0]``, 0 on ``[r1, inf)``."""
    xi = np.asarray(xi_mag, dtype=float)
    s = np.clip((xi - spec.r0) / (spec.r1 - spec.r0), 0.0, 1.0)
    out = 1.0 - s * s * (3.0 - 2.0 * s)
    return out if out.ndim else float(out)


def split_low_high(F: SpectralField, spec: CutoffSpec):
    chi = smooth_cutoff(F.grid.xi_magnitude(), spec)
    low = F.coefficients * chi
    return SpectralField(F.grid, low), SpectralField(F.grid, F.coefficients - low)
