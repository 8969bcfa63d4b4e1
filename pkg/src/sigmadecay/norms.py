"""Norms of grid fields: Riemann sums on the uniform grid in x or in xi."""
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .grid import RealField, SpectralField, forward_transform
from .quadrature import origin_weight


def conjugate_exponent(m: float) -> float:
    if not m > 1:
        raise ValueError(f"conjugate exponent needs m > 1, got {m}")
    if math.isinf(m):
        return 1.0
    return m / (m - 1)


def _check_m(m):
    if not m >= 1:
        raise ValueError(f"integrability exponent must be >= 1, got {m}")


def lm_norm(f: RealField, m: float) -> float:
    """``(sum |f|^m dx^n)^(1/m)``; ``m = inf`` gives the grid maximum."""
    _check_m(m)
    a = np.abs(f.samples)
    if math.isinf(m):
        return float(a.max())
    if m == 2:
        return float(math.sqrt(np.vdot(a, a).real * f.grid.cell_volume))
    return _scaled_power_sum(a, m, f.grid.cell_volume)


def _scaled_power_sum(a, m, volume, point=0.0, point_weight=0.0):
    """``(sum a^m volume + point^m point_weight)^(1/m)`` with the peak factored out,
    so that large ``m`` cannot underflow."""
    peak = max(float(a.max()), point)
    if peak == 0:
        return 0.0
    total = np.sum((a / peak) ** m) * volume + (point / peak) ** m * point_weight
    return float(peak * total ** (1.0 / m))


def weighted_lm_norm(f: RealField, rho: float, m: float) -> float:
    """``|| |x|^rho f ||_{L^m}`` by the Riemann sum with a corrected origin weight.

    The weight ``|x|^(rho m)`` has a cusp at 0 (unless ``rho m`` is an even
    integer), which costs the plain sum an O(dx^(n + rho m)) error; see
    :mod:`sigmadecay.quadrature`.
    """
    _check_m(m)
    if rho < 0:
        raise ValueError(f"weight exponent must be nonnegative, got {rho}")
    if rho == 0:
        return lm_norm(f, m)
    grid = f.grid
    w = grid.radius() ** rho * np.abs(f.samples)
    if math.isinf(m):
        return float(w.max())
    # x = 0 is a grid point (index N/2); its cusp weight replaces the zero sample
    at_origin = abs(float(f.samples[(grid.N // 2,) * grid.n]))
    return _scaled_power_sum(w, m, grid.cell_volume, at_origin,
                             origin_weight(grid.n, rho * m, grid.dx))


def _spectrum(f):
    return f if isinstance(f, SpectralField) else forward_transform(f)


def sobolev_norm(f, s: float) -> float:
    """``|| (1 + |xi|^2)^(s/2) f_hat ||_{L^2}``; accepts real or spectral fields."""
    if s < 0:
        raise ValueError(f"smoothness must be nonnegative, got {s}")
    F = _spectrum(f)
    c2 = np.abs(F.coefficients) ** 2
    if s:
        c2 = c2 * (1.0 + F.grid.xi_magnitude() ** 2) ** s
    return float(math.sqrt(c2.sum()))


def homogeneous_sobolev_norm(f, a: float) -> float:
    """``|| |xi|^a f_hat ||_{L^2}``, i.e. the L2 norm of ``(-Delta)^(a/2) f``."""
    if a < 0:
        raise ValueError(f"smoothness must be nonnegative, got {a}")
    F = _spectrum(f)
    c2 = np.abs(F.coefficients) ** 2
    if a:
        c2 = c2 * F.grid.xi_magnitude() ** (2.0 * a)
    return float(math.sqrt(c2.sum()))


class NormKind(Enum):
    LM = "lm"
    WEIGHTED_LM = "weighted"
    SOBOLEV = "sobolev"
    HOMOGENEOUS_SOBOLEV = "homogeneous"


@dataclass(frozen=True)
class NormSpec:
    kind: NormKind
    m: float = 2.0
    rho: float = 0.0
    s: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", NormKind(self.kind))
        _check_m(self.m)
        if self.rho < 0 or self.s < 0:
            raise ValueError("rho and s must be nonnegative")

    def __call__(self, f) -> float:
        if self.kind is NormKind.LM:
            return lm_norm(f, self.m)
        if self.kind is NormKind.WEIGHTED_LM:
            return weighted_lm_norm(f, self.rho, self.m)
        if self.kind is NormKind.SOBOLEV:
            return sobolev_norm(f, self.s)
        return homogeneous_sobolev_norm(f, self.s)

    @property
    def label(self) -> str:
        if self.kind is NormKind.LM:
            return "L2" if self.m == 2 else f"L{self.m:g}"
        if self.kind is NormKind.WEIGHTED_LM:
            return f"L^{{{self.rho:g},{self.m:g}}}"
        if self.kind is NormKind.SOBOLEV:
            return f"H{self.s:g}"
        return f"Hdot{self.s:g}"

    @classmethod
    def parse(cls, text: str) -> "NormSpec":
        """``l2``, ``lm:1.5``, ``weighted:0.5:2``, ``h:1``, ``hdot:1``."""
        parts = text.strip().lower().split(":")
        head, args = parts[0], [float(p) for p in parts[1:]]
        if head == "l2" and not args:
            return cls(NormKind.LM, m=2.0)
        if head == "lm" and len(args) == 1:
            return cls(NormKind.LM, m=args[0])
        if head == "weighted" and len(args) == 2:
            return cls(NormKind.WEIGHTED_LM, rho=args[0], m=args[1])
        if head == "h" and len(args) == 1:
            return cls(NormKind.SOBOLEV, s=args[0])
        if head == "hdot" and len(args) == 1:
            return cls(NormKind.HOMOGENEOUS_SOBOLEV, s=args[0])
        raise ValueError(f"unrecognised norm {text!r}")
