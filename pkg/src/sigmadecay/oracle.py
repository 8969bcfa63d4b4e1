"""Continuum L2 norms of radially profiled data by 1-d adaptive quadrature.

Independent of any grid: integrates the exact kernel against an analytic
radial spectrum over ``[0, inf)`` with the surface measure of ``S^{n-1}``.
"""
import math
import warnings

import numpy as np
from scipy import integrate

from . import kernels
from .model import ModelParams, double_root_frequency


class OracleError(RuntimeError):
    """Quadrature did not reach the requested tolerance."""


def sphere_area(n: int) -> float:
    return 2 * math.pi ** (n / 2) / math.gamma(n / 2)


def _breakpoints(params, t, scale_hint):
    s, d = params.sigma, params.delta
    scales = [double_root_frequency(params), 1.0, scale_hint]
    if t > 0:
        scales.append(t ** (-1 / (2 * (s - d))))
        scales.append(t ** (-1 / (2 * d)))
    pts = set()
    for sc in scales:
        for k in range(-6, 3):
            pts.add(sc * 10.0**k)
    out = []
    for p in sorted(pts):
        # scales like t^(-1/2(s-d)) can land a rounding error away from a power of ten
        if p > 0 and (not out or p > out[-1] * (1 + 1e-9)):
            out.append(p)
    return out


def radial_norm_oracle(params: ModelParams, i: int, a: float, t: float, spectral_profile,
                       which: str = "u0", rtol: float = 1e-8, scale_hint: float = 1.0) -> float:
    """``(|S^{n-1}| int_0^inf (xi^a m(t, xi) p(xi))^2 xi^{n-1} dxi)^{1/2}``.

    ``which`` picks the kernel (``"u0"`` -> m0, ``"u1"`` -> m1);
    ``spectral_profile`` is the radial magnitude of the data's unitary
    transform. The half line is cut at the natural scales of the roots and
    extended by doubling panels until the tail is below ``1e-10`` of the total.
    """
    if which not in ("u0", "u1"):
        raise ValueError(f"which must be 'u0' or 'u1', got {which!r}")
    if a < 0 or t < 0:
        raise ValueError("a and t must be nonnegative")
    k = 0 if which == "u0" else 1
    n = params.n
    s, d = params.sigma, params.delta

    def integrand(x):
        m = kernels.multiplier_arrays(s, d, np.array([x]), t, i)[k][0]
        return (x**a * m * spectral_profile(x)) ** 2 * x ** (n - 1)

    # a cheap first pass fixes the absolute scale, so that panels where the
    # integrand has underflowed do not have to meet a relative target
    scale = _integrate(integrand, params, t, scale_hint, rtol, 0.0, strict=False)[0]
    total, err_total = _integrate(integrand, params, t, scale_hint, rtol,
                                  1e-3 * rtol * scale, strict=True)
    achieved = err_total / total if total > 0 else 0.0
    if achieved > rtol:
        raise OracleError(f"quadrature reached only {achieved:.3g} relative (wanted {rtol:g})")
    return math.sqrt(sphere_area(n) * total)


def _integrate(integrand, params, t, scale_hint, rtol, epsabs, strict):
    total = 0.0
    err_total = 0.0

    def panel(lo, hi):
        nonlocal err_total
        with warnings.catch_warnings():
            warnings.simplefilter("error" if strict else "ignore", integrate.IntegrationWarning)
            try:
                val, err = integrate.quad(integrand, lo, hi, epsabs=epsabs,
                                          epsrel=rtol * 1e-2, limit=200)
            except integrate.IntegrationWarning:
                val, err = integrate.quad(integrand, lo, hi, epsabs=epsabs,
                                          epsrel=rtol * 1e-2, limit=1000)
        err_total += err
        return val

    lo = 0.0
    for hi in _breakpoints(params, t, scale_hint):
        total += panel(lo, hi)
        lo = hi
    for _ in range(200):
        piece = panel(lo, 2 * lo)
        total += piece
        lo *= 2
        if abs(piece) <= 1e-10 * abs(total):
            break
    else:
        raise OracleError(f"tail did not converge; last panel {piece:.3g} vs total {total:.3g}")
    return total, err_total
