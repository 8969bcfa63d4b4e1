"""Empirical checks of the weighted Fourier (Pitt), Hausdorff-Young and
Hoelder-product inequalities on grid fields.

Frequency-side norms use the continuum transform ``f_hat(xi_k) = c_k / dxi^(n/2)``
with the measure ``dxi^n`` per coefficient (see :mod:`sigmadecay.grid`).
"""
from dataclasses import dataclass
import math
from typing import List, Tuple

import numpy as np

from .grid import RealField, forward_transform
from .norms import conjugate_exponent, lm_norm, weighted_lm_norm
from .quadrature import origin_weight

BALANCE_TOL = 1e-12

RANGE = "1 < r2 <= r1 < inf"
NONNEGATIVE = "s1, s2 >= 0"
FREQUENCY_INTEGRABILITY = "r1*s1 < n"
SPACE_INTEGRABILITY = "r2*s2/(r2-1) < n"
BALANCE = "balance: s1 = s2 + n(1/r1 + 1/r2 - 1)"


@dataclass(frozen=True)
class PittParams:
    r1: float
    r2: float
    s1: float
    s2: float
    n: int

    @classmethod
    def balanced(cls, r1, r2, s2, n):
        """Tuple whose ``s1`` is fixed by the balance condition."""
        return cls(r1, r2, s2 + n * (1 / r1 + 1 / r2 - 1), s2, n)


def balance_defect(p: PittParams) -> float:
    return p.s1 - (p.s2 + p.n * (1 / p.r1 + 1 / p.r2 - 1))


def pitt_admissible(p: PittParams) -> Tuple[bool, List[str]]:
    violations = []
    if not (1 < p.r2 <= p.r1 < math.inf):
        violations.append(RANGE)
    if not (p.s1 >= 0 and p.s2 >= 0):
        violations.append(NONNEGATIVE)
    if not p.r1 * p.s1 < p.n:
        violations.append(FREQUENCY_INTEGRABILITY)
    if not (p.r2 > 1 and p.r2 * p.s2 / (p.r2 - 1) < p.n):
        violations.append(SPACE_INTEGRABILITY)
    if not abs(balance_defect(p)) <= BALANCE_TOL:
        violations.append(BALANCE)
    return not violations, violations


def scaling_exponents(p: PittParams) -> Tuple[float, float]:
    """Powers of lambda picked up by each side under ``f -> f(lambda x)``."""
    lhs = -p.s1 - p.n + p.n / p.r1
    rhs = -p.s2 - p.n / p.r2
    return lhs, rhs


def weighted_fourier_norm(f: RealField, s1: float, r1: float) -> float:
    """``|| |xi|^(-s1) f_hat ||_{L^r1}``.

    For ``s1 > 0`` the zero-frequency coefficient cannot be sampled against the
    singular weight; it gets the corrected origin weight of
    :func:`sigmadecay.quadrature.origin_weight` instead. Leaving the term out
    altogether would under-count by O(dxi^(n - s1 r1)).
    """
    grid = f.grid
    fhat = np.abs(forward_transform(f).coefficients) / grid.dxi ** (grid.n / 2)
    if math.isinf(r1):
        if s1:
            raise ValueError("sup norm with a singular weight is not supported")
        return float(fhat.max())
    power = s1 * r1
    if not power < grid.n:
        raise ValueError(f"|xi|^(-{power:g}) is not locally integrable in dimension {grid.n}")
    vals = fhat**r1
    origin = (0,) * grid.n
    dc = vals[origin]
    if power:
        xi = grid.xi_magnitude()
        with np.errstate(divide="ignore"):
            vals = vals * np.where(xi > 0, xi, 1.0) ** (-power)
        dc_weight = origin_weight(grid.n, -power, grid.dxi)
    else:
        dc_weight = grid.spectral_cell_volume
    total = (vals.sum() - vals[origin]) * grid.spectral_cell_volume + dc * dc_weight
    return float(total ** (1.0 / r1))


def pitt_ratio(f: RealField, p: PittParams) -> float:
    ok, violations = pitt_admissible(p)
    if not ok:
        raise ValueError("inadmissible Pitt parameters: " + "; ".join(violations))
    if f.grid.n != p.n:
        raise ValueError(f"field dimension {f.grid.n} differs from n = {p.n}")
    rhs = weighted_lm_norm(f, p.s2, p.r2)
    if rhs == 0:
        raise ValueError("right-hand side vanishes")
    return weighted_fourier_norm(f, p.s1, p.r1) / rhs


def hausdorff_young_constant(r2: float, n: int) -> float:
    """Sharp constant of ``||f_hat||_{r1} <= C ||f||_{r2}`` for the unitary transform.

    Gaussians attain it. Equals 1 at ``r2 = 2`` and ``(2 pi)^(-n/2)`` at ``r2 = 1``.
    """
    if not 1 <= r2 <= 2:
        raise ValueError(f"r2 must lie in [1, 2], got {r2}")
    if r2 == 1:
        return (2 * math.pi) ** (-n / 2)
    r1 = conjugate_exponent(r2)
    beckner = (r2 ** (1 / r2) / r1 ** (1 / r1)) ** (n / 2)
    return (2 * math.pi) ** (n * (1 / r1 - 0.5)) * beckner


def hausdorff_young_ratio(f: RealField, r1: float, r2: float) -> float:
    """``||f_hat||_{L^r1} / ||f||_{L^r2}`` for conjugate ``r1, r2`` (``r2 = 1`` means ``r1 = inf``)."""
    if not 1 <= r2 <= 2:
        raise ValueError(f"r2 must lie in [1, 2], got {r2}")
    expected = math.inf if r2 == 1 else conjugate_exponent(r2)
    if not (r1 == expected or math.isclose(r1, expected, rel_tol=1e-12)):
        raise ValueError(f"r1 = {r1} is not conjugate to r2 = {r2}")
    den = lm_norm(f, r2)
    if den == 0:
        raise ValueError("denominator vanishes")
    return weighted_fourier_norm(f, 0.0, r1) / den


def holder_product_ratio(f: RealField, g: RealField, m: float) -> float:
    """``||fg||_2 / (||f||_{2m/(2-m)} ||g||_{m'})``; at most 1."""
    if f.grid != g.grid:
        raise ValueError(f"grid mismatch: {f.grid} vs {g.grid}")
    if not 1 <= m <= 2:
        raise ValueError(f"m must lie in [1, 2], got {m}")
    p = math.inf if m == 2 else 2 * m / (2 - m)
    q = math.inf if m == 1 else conjugate_exponent(m)
    den = lm_norm(f, p) * lm_norm(g, q)
    if den == 0:
        raise ValueError("denominator vanishes")
    num = lm_norm(RealField(f.grid, f.samples * g.samples), 2)
    return num / den
