"""Characteristic roots and propagator kernels of

    u_tt + (-Delta)^sigma u + (-Delta)^delta u_t = 0,   u(0) = u0,  u_t(0) = u1.

In Fourier variables every frequency obeys the damped oscillator
``v'' + |xi|^(2 delta) v' + |xi|^(2 sigma) v = 0`` and the solution is
``m0(t, |xi|) u0_hat + m1(t, |xi|) u1_hat``.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import kernels


class ParameterError(ValueError):
    """Model or query parameters outside their admissible range."""


@dataclass(frozen=True)
class ModelParams:
    sigma: float
    delta: float
    n: int

    def __post_init__(self):
        problems = []
        if not self.sigma >= 1:
            problems.append(f"sigma must be >= 1 (got {self.sigma})")
        if not self.delta > 0:
            problems.append(f"delta must be > 0 (got {self.delta})")
        elif not self.delta < self.sigma / 2:
            problems.append(f"delta must be < sigma/2 (got delta={self.delta}, sigma/2={self.sigma / 2})")
        if int(self.n) != self.n or self.n < 1:
            problems.append(f"n must be a positive integer (got {self.n})")
        if problems:
            raise ParameterError("; ".join(problems))
        object.__setattr__(self, "n", int(self.n))

    @property
    def diffusive_order(self) -> float:
        """``sigma - delta``: the order of the diffusion the low frequencies follow."""
        return self.sigma - self.delta


def validate_params(sigma: float, delta: float, n: int) -> ModelParams:
    return ModelParams(float(sigma), float(delta), n)


@dataclass(frozen=True)
class RootPair:
    lambda1: complex
    lambda2: complex
    degenerate: bool


@dataclass(frozen=True)
class MultiplierValue:
    """Kernels multiplying ``u0_hat`` (m0) and ``u1_hat`` (m1).

    Real for real frequencies, so stored as floats.
    """

    m0: float
    m1: float
    derivative_order: int
    smoothing_order: float


def _check_xi(xi_mag):
    if not xi_mag >= 0:
        raise ValueError(f"frequency magnitude must be nonnegative, got {xi_mag}")


def characteristic_roots(params: ModelParams, xi_mag: float) -> RootPair:
    """Roots of ``lam**2 + |xi|^(2 delta) lam + |xi|^(2 sigma) = 0``.

    ``lambda1`` takes the plus sign of the square root: the slow real root at
    low frequency, the upper-half-plane root in the oscillatory range.
    """
    _check_xi(xi_mag)
    l1, l2, deg = kernels.roots_numpy(params.sigma, params.delta, np.array([float(xi_mag)]))
    return RootPair(complex(l1[0]), complex(l2[0]), bool(deg[0]))


def double_root_frequency(params: ModelParams) -> float:
    """The ``|xi|`` where ``|xi|^(4 delta) = 4 |xi|^(2 sigma)``."""
    return 4.0 ** (1.0 / (4.0 * params.delta - 2.0 * params.sigma))


def root_asymptotics(params: ModelParams, xi_mag: float) -> Tuple[complex, complex, str]:
    """Leading-order roots, low regime below the double root, high regime above."""
    if not xi_mag > 0:
        raise ValueError(f"frequency magnitude must be positive, got {xi_mag}")
    s, d = params.sigma, params.delta
    if xi_mag < double_root_frequency(params):
        return complex(-xi_mag ** (2 * (s - d))), complex(-xi_mag ** (2 * d)), "low"
    re = -xi_mag ** (2 * d) / 2
    im = xi_mag**s
    return complex(re, im), complex(re, -im), "high"


def multiplier(params: ModelParams, i: int, a: float, t: float, xi_mag: float) -> MultiplierValue:
    if a < 0:
        raise ValueError(f"smoothing order must be nonnegative, got {a}")
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    _check_xi(xi_mag)
    m0, m1 = kernels.multiplier_arrays(params.sigma, params.delta, np.array([float(xi_mag)]), t, i, a)
    return MultiplierValue(float(m0[0]), float(m1[0]), i, float(a))


def ode_residual(params: ModelParams, xi_mag: float, t: float, h: float) -> Tuple[float, float]:
    """Central-difference residual of the frequency ODE for both kernels at (t, |xi|)."""
    if not h > 0:
        raise ValueError(f"step must be positive, got {h}")
    if not t - h > 0:
        raise ValueError(f"need t - h > 0 (t={t}, h={h})")
    _check_xi(xi_mag)
    ts = np.array([t - h, t, t + h])
    m = np.array([kernels.multiplier_arrays(params.sigma, params.delta, np.array([xi_mag]), tk, 0)
                  for tk in ts])[:, :, 0]  # (time, kernel)
    second = (m[2] - 2 * m[1] + m[0]) / h**2
    first = (m[2] - m[0]) / (2 * h)
    res = second + xi_mag ** (2 * params.delta) * first + xi_mag ** (2 * params.sigma) * m[1]
    return float(abs(res[0])), float(abs(res[1]))
