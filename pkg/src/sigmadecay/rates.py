"""Decay exponents of the L2 estimates, their validity regions, and related closed forms.

Exponents are powers of ``(1 + t)``; a query outside the hypotheses of its
estimate family still returns the formula value, together with the list of
violated conditions.
"""
from dataclasses import dataclass, field
from enum import Enum
import math
from typing import Tuple

from .model import ModelParams


class Family(Enum):
    PROPOSITION = "prop"
    THEOREM = "thm"
    COROLLARY = "cor"


class Term(Enum):
    U0 = "u0"
    U1 = "u1"


@dataclass(frozen=True)
class RateQuery:
    params: ModelParams
    m: float
    a: float = 0.0
    j: int = 0
    family: Family = Family.THEOREM
    term: Term = Term.U1

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "term", Term(self.term))
        if not 1 <= self.m <= 2:
            raise ValueError(f"m must lie in [1, 2], got {self.m}")
        if self.a < 0:
            raise ValueError(f"a must be nonnegative, got {self.a}")
        if self.j not in (0, 1):
            raise ValueError(f"j must be 0 or 1, got {self.j}")


@dataclass(frozen=True)
class RateResult:
    exponent: float
    dimension_bound: float
    data_space_u0: str
    data_space_u1: str
    estimate: str = ""
    violations: Tuple[str, ...] = field(default=())

    @property
    def valid(self) -> bool:
        return not self.violations


def _base(p: ModelParams, m: float) -> float:
    return -p.n / (2 * (p.sigma - p.delta)) * (1 / m - 0.5)


def _fmt(x):
    return f"{x:g}"


def _dimension_violation(p, bound):
    if not p.n > bound:
        return (f"n > {bound:.6g} required (n = {p.n})",)
    return ()


def proposition_rate(q: RateQuery) -> RateResult:
    """Classical ``(L^m cap L^2) - L^2`` exponents with unweighted data."""
    p, m, a, j = q.params, q.m, q.a, q.j
    s, d = p.sigma, p.delta
    if q.term is Term.U0:
        exponent = _base(p, m) - (a + 2 * j * (s - d)) / (2 * (s - d))
    else:
        exponent = _base(p, m) - (a - 2 * d) / (2 * (s - d)) - j
    if a >= 2 * d:
        bound = 0.0
    elif m == 2:
        bound = math.inf
    else:
        bound = 2 * m * (2 * d - a) / (2 - m)
    violations = ()
    if not m < 2:
        violations += (f"m must lie in [1, 2) (m = {_fmt(m)})",)
    violations += _dimension_violation(p, bound)
    return RateResult(
        exponent=exponent,
        dimension_bound=bound,
        data_space_u0=f"L^{_fmt(m)} ∩ H^{_fmt(a + j * s)}",
        data_space_u1=f"L^{_fmt(m)} ∩ H^{_fmt(max(0.0, a + (j - 1) * s))}",
        estimate=f"a={_fmt(a)}, j={j}",
        violations=violations,
    )


ESTIMATES = ("solution", "sigma-derivative", "time-derivative")


def _which_estimate(q: RateQuery) -> str:
    s = q.params.sigma
    if q.j == 0 and q.a == 0:
        return "solution"
    if q.j == 0 and math.isclose(q.a, s, rel_tol=1e-12):
        return "sigma-derivative"
    if q.j == 1 and q.a == 0:
        return "time-derivative"
    raise ValueError(
        f"weighted-data estimates exist for (a, j) in {{(0, 0), (sigma, 0), (0, 1)}}; "
        f"got a={q.a}, j={q.j} with sigma={s}")


def _weighted_validity(q: RateQuery):
    p, m = q.params, q.m
    violations = ()
    if not 1 < m < 2:
        if m == 2:
            violations += ("m = 2 is the L2-L2 specialisation; the stated range is (1, 2)",)
        else:
            violations += (f"m must lie in (1, 2) (m = {_fmt(m)})",)
    bound = math.inf if m == 1 else 2 * m * p.delta / (m - 1)
    return bound, violations + _dimension_violation(p, bound)


def theorem_rate(q: RateQuery) -> RateResult:
    """Exponents for ``u0 in L^m``, ``u1 in L^{2 delta, m}`` (weighted)."""
    p, m = q.params, q.m
    s, d = p.sigma, p.delta
    est = _which_estimate(q)
    extra = {"solution": 0.0,
             "sigma-derivative": -s / (2 * (s - d)),
             "time-derivative": -1.0}[est]
    bound, violations = _weighted_validity(q)
    u0_space = f"L^{_fmt(m)} ∩ L^2" if est == "solution" else f"L^{_fmt(m)} ∩ H^{_fmt(s)}"
    return RateResult(
        exponent=_base(p, m) + extra,
        dimension_bound=bound,
        data_space_u0=u0_space,
        data_space_u1=f"L^{{{_fmt(2 * d)},{_fmt(m)}}} ∩ L^2",
        estimate=est,
        violations=violations,
    )


def corollary_rate(q: RateQuery) -> RateResult:
    """Exponents when both data lie in the weighted space ``L^{2 delta, m}``."""
    p, m = q.params, q.m
    s, d = p.sigma, p.delta
    est = _which_estimate(q)
    if q.term is Term.U1:
        extra = {"solution": 0.0,
                 "sigma-derivative": -s / (2 * (s - d)),
                 "time-derivative": -1.0}[est]
    else:
        extra = {"solution": -d / (s - d),
                 "sigma-derivative": -(s + 2 * d) / (2 * (s - d)),
                 "time-derivative": -1.0 - d / (s - d)}[est]
    bound, violations = _weighted_validity(q)
    weighted = f"L^{{{_fmt(2 * d)},{_fmt(m)}}}"
    u0_space = f"{weighted} ∩ L^2" if est == "solution" else f"{weighted} ∩ H^{_fmt(s)}"
    return RateResult(
        exponent=_base(p, m) + extra,
        dimension_bound=bound,
        data_space_u0=u0_space,
        data_space_u1=f"{weighted} ∩ L^2",
        estimate=est,
        violations=violations,
    )


def rate(q: RateQuery) -> RateResult:
    return {Family.PROPOSITION: proposition_rate,
            Family.THEOREM: theorem_rate,
            Family.COROLLARY: corollary_rate}[q.family](q)


def dimension_bound_comparison(m: float, delta: float):
    """``(2 m delta/(m-1), 4 m delta/(2-m), weighted bound is no larger)``."""
    if not 1 < m < 2:
        raise ValueError(f"m must lie in (1, 2), got {m}")
    if not delta > 0:
        raise ValueError(f"delta must be positive, got {delta}")
    pitt = 2 * m * delta / (m - 1)
    classical = 4 * m * delta / (2 - m)
    # pitt <= classical  <=>  (2 - m) <= 2 (m - 1)  <=>  m >= 4/3, decided exactly
    return pitt, classical, 3 * m >= 4


def critical_exponent(n: int, m: float, sigma: float, delta: float) -> float:
    """Power-nonlinearity threshold ``1 + 2 m sigma / (n - 2 m delta)``."""
    if not 1 <= m < 2:
        raise ValueError(f"m must lie in [1, 2), got {m}")
    if not n > 2 * m * delta:
        raise ValueError(f"need n > 2 m delta = {2 * m * delta:g}, got n = {n}")
    return 1 + 2 * m * sigma / (n - 2 * m * delta)


def gamma_scaled_integral(beta: float, c: float, two_delta: float, t: float) -> float:
    """Closed form of ``int_0^inf R^beta exp(-c (1+t) R^two_delta) dR``."""
    if not beta > -1:
        raise ValueError(f"beta must exceed -1 for integrability at 0, got {beta}")
    if not c > 0 or not two_delta > 0:
        raise ValueError("c and two_delta must be positive")
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    k = (beta + 1) / two_delta
    return math.exp(math.lgamma(k) - k * math.log(c * (1 + t))) / two_delta


def low_frequency_rate(params: ModelParams, a: float, j: int, profile_power: float,
                       term: Term) -> float:
    """Large-time L2 exponent forced by data whose transform behaves like
    ``|xi|^profile_power`` at the origin.

    The slow root dominates: the u0 kernel is ``~exp(-|xi|^{2(sigma-delta)} t)``
    and the u1 kernel carries an extra ``|xi|^{-2 delta}``; each time derivative
    brings ``|xi|^{2(sigma-delta)}``. Scaling the L2 integral gives the exponent.
    """
    s, d, n = params.sigma, params.delta, params.n
    power = a + profile_power + 2 * j * (s - d) - (2 * d if Term(term) is Term.U1 else 0.0)
    if 2 * power + n <= 0:
        raise ValueError("low-frequency integrand is not integrable; norm does not decay")
    return -(2 * power + n) / (4 * (s - d))
