"""Origin weights for grid sums of ``|x|^p g(x)`` with a power singularity or cusp at 0.

On the lattice ``h Z^n`` with ``g`` smooth,

    sum_{k != 0} h^n |h k|^p g(h k) = int |x|^p g(x) dx + h^(n+p) Z_n(-p) g(0) + O(h^(n+p+2)),

where ``Z_n(s) = sum_{k != 0} |k|^(-s)`` is the (analytically continued)
Epstein zeta function of ``Z^n``. Giving the origin sample the weight
``-Z_n(-p) h^(n+p)`` removes the leading error. ``Z_1(s) = 2 zeta(s)`` and
``Z_2(s) = 4 zeta(s/2) beta(s/2)`` (Dirichlet beta); for ``n = 3`` the exact
constant is replaced by the integral of ``|x|^p`` over the ball of one cell
volume, which removes most but not all of the leading error.
"""
import math

import mpmath
from scipy import special


def lattice_zeta(n: int, s: float) -> float:
    if n == 1:
        return 2.0 * float(special.zeta(s))
    if n == 2:
        return 4.0 * float(special.zeta(s / 2)) * float(mpmath.dirichlet(s / 2, [0, 1, 0, -1]))
    raise NotImplementedError("lattice zeta is only available in closed form for n <= 2")


def ball_weight(n: int, p: float, h: float) -> float:
    """Integral of ``|x|^p`` over the ball of volume ``h^n``."""
    unit_ball = math.pi ** (n / 2) / math.gamma(n / 2 + 1)
    radius = h * unit_ball ** (-1.0 / n)
    area = 2 * math.pi ** (n / 2) / math.gamma(n / 2)
    return area * radius ** (n + p) / (n + p)


def origin_weight(n: int, p: float, h: float) -> float:
    """Weight of the ``x = 0`` sample in a corrected sum of ``|x|^p g(x)`` (``p > -n``)."""
    if not p > -n:
        raise ValueError(f"|x|^{p} is not locally integrable in dimension {n}")
    if p == 0:
        return h**n
    if n <= 2:
        return -lattice_zeta(n, -p) * h ** (n + p)
    return ball_weight(n, p, h)
