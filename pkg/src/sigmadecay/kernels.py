"""Hot loops: characteristic roots and propagator kernels on frequency arrays.

Every routine exists twice, a numba-compiled scalar loop and a vectorised
numpy version. :func:`multiplier_arrays` and :func:`cell_mean` dispatch on
``sigmadecay._accel.USE_NUMBA`` unless told otherwise.

Both kernels are written through the divided difference

    D(t) = (exp(l1 t) - exp(l2 t)) / (l1 - l2) = t exp(l2 t) phi1((l1 - l2) t),

so that

    i = 0:  m0 = exp(l2 t) - l2 D,   m1 = D
    i = 1:  m0 = -l1 l2 D,           m1 = exp(l2 t) + l1 D

which is algebraically the two-root formula and never divides by a small
root gap. For real |xi| both kernels are real (symmetric in the roots); the
arrays returned here are real.
"""
import cmath
import math

import numpy as np

from . import _accel
from ._accel import njit

CONFLUENCE_RTOL = 1e-6
PHI1_SERIES_RADIUS = 1e-3
# |z| below which D is built from phi1 instead of the plain difference quotient
_SMALL_GAP = 1.0

_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)
_CELL_PANELS = 64


@njit
def _phi1(z):
    if abs(z) < PHI1_SERIES_RADIUS:
        return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0 + z * z * z * z / 120.0
    x = z.real
    y = z.imag
    s = math.sin(0.5 * y)
    em1 = complex(math.expm1(x) * math.cos(y) - 2.0 * s * s, math.exp(x) * math.sin(y))
    return em1 / z


@njit
def _roots_scalar(sigma, delta, xi):
    b = xi ** (2.0 * delta)
    c = xi ** (2.0 * sigma)
    disc = b * b - 4.0 * c
    if disc >= 0.0:
        sq = math.sqrt(disc)
        r2 = -0.5 * (b + sq)
        r1 = c / r2 if r2 != 0.0 else 0.0
        l1 = complex(r1, 0.0)
        l2 = complex(r2, 0.0)
    else:
        sq = math.sqrt(-disc)
        l1 = complex(-0.5 * b, 0.5 * sq)
        l2 = complex(-0.5 * b, -0.5 * sq)
    gap = abs(l1 - l2)
    degenerate = gap <= CONFLUENCE_RTOL * max(abs(l1), abs(l2), b)
    return l1, l2, degenerate


@njit
def _kernel_scalar(sigma, delta, xi, t, i):
    l1, l2, degenerate = _roots_scalar(sigma, delta, xi)
    c = xi ** (2.0 * sigma)
    if degenerate:
        lam = complex(-0.5 * xi ** (2.0 * delta), 0.0)
        e = cmath.exp(lam * t)
        d = t * e
        l1 = lam
        l2 = lam
    else:
        e = cmath.exp(l2 * t)
        gap = l1 - l2
        z = gap * t
        if abs(z) < _SMALL_GAP:
            d = t * e * _phi1(z)
        else:
            d = (cmath.exp(l1 * t) - e) / gap
    if i == 0:
        return (e - l2 * d).real, d.real
    return (-c * d).real, (e + l1 * d).real


@njit
def _kernel_loop(sigma, delta, xi, t, i, out0, out1):
    for k in range(xi.size):
        m0, m1 = _kernel_scalar(sigma, delta, xi[k], t, i)
        out0[k] = m0
        out1[k] = m1


@njit
def _cell_mean_loop(sigma, delta, radius, n, t, i, gl_x, gl_w, panels):
    s0 = 0.0
    s1 = 0.0
    hi = radius
    for _ in range(panels):
        lo = 0.5 * hi
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        for q in range(gl_x.size):
            r = mid + half * gl_x[q]
            w = half * gl_w[q] * r ** (n - 1)
            m0, m1 = _kernel_scalar(sigma, delta, r, t, i)
            s0 += w * m0
            s1 += w * m1
        hi = lo
    # innermost ball [0, hi] carries the xi = 0 value
    m0, m1 = _kernel_scalar(sigma, delta, 0.0, t, i)
    s0 += m0 * hi ** n / n
    s1 += m1 * hi ** n / n
    scale = n / radius ** n
    return s0 * scale, s1 * scale


def _phi1_numpy(z):
    z = np.asarray(z, dtype=complex)
    out = np.empty_like(z)
    small = np.abs(z) < PHI1_SERIES_RADIUS
    zs = z[small]
    out[small] = 1.0 + zs / 2.0 + zs**2 / 6.0 + zs**3 / 24.0 + zs**4 / 120.0
    zb = z[~small]
    x, y = zb.real, zb.imag
    em1 = np.expm1(x) * np.cos(y) - 2.0 * np.sin(0.5 * y) ** 2 + 1j * np.exp(x) * np.sin(y)
    out[~small] = em1 / zb
    return out


def roots_numpy(sigma, delta, xi):
    """Vectorised roots ``(l1, l2, degenerate)``; l1 is the slow / upper-half-plane root."""
    xi = np.asarray(xi, dtype=float)
    b = xi ** (2.0 * delta)
    c = xi ** (2.0 * sigma)
    disc = b * b - 4.0 * c
    real = disc >= 0.0
    sq = np.sqrt(np.abs(disc))
    r2 = -0.5 * (b + sq)
    with np.errstate(divide="ignore", invalid="ignore"):
        r1 = np.where(r2 != 0.0, c / r2, 0.0)
    l1 = np.where(real, r1 + 0j, -0.5 * b + 0.5j * sq)
    l2 = np.where(real, r2 + 0j, -0.5 * b - 0.5j * sq)
    scale = np.maximum(np.maximum(np.abs(l1), np.abs(l2)), b)
    degenerate = np.abs(l1 - l2) <= CONFLUENCE_RTOL * scale
    return l1, l2, degenerate


def kernels_numpy(sigma, delta, xi, t, i):
    xi = np.asarray(xi, dtype=float)
    l1, l2, degenerate = roots_numpy(sigma, delta, xi)
    c = xi ** (2.0 * sigma)
    lam = -0.5 * xi ** (2.0 * delta) + 0j
    l1 = np.where(degenerate, lam, l1)
    l2 = np.where(degenerate, lam, l2)
    e = np.exp(l2 * t)
    gap = l1 - l2
    z = gap * t
    small = np.abs(z) < _SMALL_GAP
    d = np.empty_like(e)
    d[small] = t * e[small] * _phi1_numpy(z[small])
    big = ~small
    d[big] = (np.exp(l1[big] * t) - e[big]) / gap[big]
    if i == 0:
        return (e - l2 * d).real, d.real
    return (-c * d).real, (e + l1 * d).real


def multiplier_arrays(sigma, delta, xi, t, i=0, a=0.0, use_numba=None):
    """Kernels ``(m0, m1)`` multiplying the two data spectra at every ``|xi|``.

    ``xi`` is any array of nonnegative magnitudes; the result has its shape.
    The ``|xi|**a`` prefactor is applied last, so ``xi = 0`` gives 0 for
    ``a > 0`` and the bare kernel for ``a = 0``.
    """
    if i not in (0, 1):
        raise ValueError(f"derivative order must be 0 or 1, got {i}")
    xi = np.asarray(xi, dtype=float)
    if use_numba is None:
        use_numba = _accel.USE_NUMBA
    if use_numba:
        flat = np.ascontiguousarray(xi).ravel()
        m0 = np.empty(flat.size)
        m1 = np.empty(flat.size)
        _kernel_loop(float(sigma), float(delta), flat, float(t), int(i), m0, m1)
        m0 = m0.reshape(xi.shape)
        m1 = m1.reshape(xi.shape)
    else:
        m0, m1 = kernels_numpy(float(sigma), float(delta), xi, float(t), int(i))
    if a:
        weight = xi**a
        m0 = m0 * weight
        m1 = m1 * weight
    return m0, m1


def cell_mean(sigma, delta, radius, n, t, i=0, use_numba=None):
    """Average of ``(m0, m1)`` over the ball ``|xi| <= radius`` in ``n`` dimensions.

    Dyadic Gauss-Legendre panels resolve the cusp of the kernels at the
    origin (they are functions of ``|xi|**(2 delta)``).
    """
    if use_numba is None:
        use_numba = _accel.USE_NUMBA
    if use_numba:
        return _cell_mean_loop(float(sigma), float(delta), float(radius), int(n),
                               float(t), int(i), _GL_X, _GL_W, _CELL_PANELS)
    his = radius * 0.5 ** np.arange(_CELL_PANELS)
    los = 0.5 * his
    half = 0.5 * (his - los)
    mid = 0.5 * (his + los)
    r = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    w = (half[:, None] * _GL_W[None, :]).ravel() * r ** (n - 1)
    m0, m1 = kernels_numpy(float(sigma), float(delta), r, float(t), int(i))
    z0, z1 = kernels_numpy(float(sigma), float(delta), np.zeros(1), float(t), int(i))
    core = los[-1] ** n / n
    scale = n / radius**n
    return (float(np.dot(w, m0) + z0[0] * core) * scale,
            float(np.dot(w, m1) + z1[0] * core) * scale)
