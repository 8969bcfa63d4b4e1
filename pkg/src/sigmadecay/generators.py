"""Initial-data families with super-polynomial decay, plus their exact spectra."""
import math

import numpy as np

from .grid import GridSpec, RealField

TAIL_RTOL = 1e-12


def _boundary_ratio(grid, samples):
    # x = +L is the periodic image of x = -L, so the -L faces are the whole boundary
    peak = np.max(np.abs(samples))
    if peak == 0:
        return 0.0
    face = max(np.max(np.abs(np.take(samples, 0, axis=ax))) for ax in range(grid.n))
    return face / peak


def _check_tail(grid, samples, what):
    ratio = _boundary_ratio(grid, samples)
    if ratio > TAIL_RTOL:
        raise ValueError(
            f"{what} is too wide for the grid: boundary/peak = {ratio:.3g} > {TAIL_RTOL:g}")


def make_gaussian(grid: GridSpec, width: float, moment_zero: bool = False,
                  center=None, amplitude: float = 1.0) -> RealField:
    """Unit-mass Gaussian of standard deviation ``width``.

    With ``moment_zero`` the profile is ``-width * d/dx_1`` of that Gaussian:
    odd in ``x_1``, so its mean and its zero-frequency coefficient vanish.
    """
    if not width > 0:
        raise ValueError(f"width must be positive, got {width}")
    coords = grid.coordinates()
    if center is None:
        center = (0.0,) * grid.n
    shifted = [c - c0 for c, c0 in zip(coords, center)]
    r2 = sum(s**2 for s in shifted)
    g = (2 * math.pi * width**2) ** (-grid.n / 2) * np.exp(-r2 / (2 * width**2))
    if moment_zero:
        g = shifted[0] / width * g
    g = amplitude * np.broadcast_to(g, grid.shape)
    _check_tail(grid, g, "Gaussian")
    return RealField(grid, g)


def make_bump(grid: GridSpec, radius: float, center=None, amplitude: float = 1.0) -> RealField:
    """Compactly supported ``exp(1 - 1/(1 - |x|^2/R^2))``, peak ``amplitude``."""
    if not 0 < radius:
        raise ValueError(f"radius must be positive, got {radius}")
    coords = grid.coordinates()
    if center is None:
        center = (0.0,) * grid.n
    s = sum((c - c0) ** 2 for c, c0 in zip(coords, center)) / radius**2
    s = np.broadcast_to(s, grid.shape)
    out = np.zeros(grid.shape)
    inside = s < 1
    out[inside] = amplitude * np.exp(1.0 - 1.0 / (1.0 - s[inside]))
    _check_tail(grid, out, "bump")
    return RealField(grid, out)


def make_random_smooth(grid: GridSpec, rng, terms: int = 4,
                       width_range=(0.5, 2.0), spread: float = 3.0) -> RealField:
    """Random sum of Gaussians with random centres, widths and signed amplitudes."""
    total = np.zeros(grid.shape)
    for _ in range(terms):
        w = rng.uniform(*width_range)
        c = rng.uniform(-spread, spread, size=grid.n)
        amp = rng.normal()
        total += make_gaussian(grid, w, center=c, amplitude=amp).samples
    return RealField(grid, total)


def gaussian_spectrum(width: float, n: int, moment_zero: bool = False):
    """Radial profile of the unitary transform of :func:`make_gaussian` data.

    For the moment-zero profile (not radial) this is the root-mean-square over
    directions, which is all an L2 computation needs.
    """
    c = (2 * math.pi) ** (-n / 2)

    if moment_zero:
        def profile(xi):
            return c * width * xi / math.sqrt(n) * math.exp(-0.5 * (width * xi) ** 2)
    else:
        def profile(xi):
            return c * math.exp(-0.5 * (width * xi) ** 2)
    return profile


def max_gaussian_width(grid: GridSpec) -> float:
    """Largest width passing the tail criterion for a centred Gaussian."""
    return grid.L / math.sqrt(-2.0 * math.log(TAIL_RTOL))
