import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sigmadecay.generators import make_bump, make_gaussian, make_random_smooth
from sigmadecay.grid import GridSpec, RealField
from sigmadecay.inequalities import (BALANCE, PittParams, balance_defect, hausdorff_young_constant,
                                     hausdorff_young_ratio, holder_product_ratio, pitt_admissible,
                                     pitt_ratio, scaling_exponents)

G1 = GridSpec(1, 1024, 40.0)
G2 = GridSpec(2, 256, 24.0)
EXAMPLE = PittParams(2, 1.5, 5 / 6, 0.5, 2)


def test_admissibility_examples():
    assert pitt_admissible(PittParams(2, 2, 0, 0, 1)) == (True, [])
    assert pitt_admissible(EXAMPLE)[0]
    ok, violations = pitt_admissible(PittParams(2, 1.5, 5 / 6 + 0.1, 0.5, 2))
    assert not ok and violations == [BALANCE]


def test_balanced_constructor():
    p = PittParams.balanced(2, 1.5, 0.5, 2)
    assert p.s1 == pytest.approx(5 / 6) and abs(balance_defect(p)) < 1e-15


def test_scaling_exponents_examples():
    assert scaling_exponents(PittParams(2, 2, 0, 0, 3)) == (-1.5, -1.5)
    lhs, rhs = scaling_exponents(EXAMPLE)
    assert lhs == pytest.approx(-11 / 6) and rhs == pytest.approx(-11 / 6)
    lhs2, _ = scaling_exponents(PittParams(2, 1.5, 5 / 6 + 0.1, 0.5, 2))
    assert lhs - lhs2 == pytest.approx(0.1, abs=1e-14)


@given(st.floats(1.05, 6), st.floats(1.05, 6), st.floats(0, 2), st.integers(1, 3),
       st.floats(-0.3, 0.3))
def test_balance_iff_equal_scaling(r1, r2, s2, n, shift):
    r1, r2 = max(r1, r2), min(r1, r2)
    p = PittParams.balanced(r1, r2, s2, n)
    p = PittParams(r1, r2, p.s1 + shift, s2, n)
    lhs, rhs = scaling_exponents(p)
    balanced = BALANCE not in pitt_admissible(p)[1]
    assert balanced == (abs(lhs - rhs) <= 1e-12)


def test_plancherel_ratio():
    f = make_random_smooth(G1, np.random.default_rng(1))
    assert pitt_ratio(f, PittParams(2, 2, 0, 0, 1)) == pytest.approx(1.0, abs=1e-10)
    assert hausdorff_young_ratio(f, 2, 2) == pytest.approx(1.0, abs=1e-10)


def test_pitt_ratio_errors():
    f = make_gaussian(G1, 1.0)
    with pytest.raises(ValueError):
        pitt_ratio(f, PittParams(2, 1.5, 1.0, 0.5, 1))
    with pytest.raises(ValueError):
        pitt_ratio(f, EXAMPLE)
    with pytest.raises(ValueError):
        pitt_ratio(RealField.zeros(G1), PittParams(2, 2, 0, 0, 1))


@pytest.mark.parametrize("r1, r2, s2", [(2, 1.5, 0.2), (3, 1.5, 0.1), (2, 2, 0.3), (4, 1.5, 0.2)])
def test_pitt_dilation_invariance_1d(r1, r2, s2):
    p = PittParams.balanced(r1, r2, s2, 1)
    assert pitt_admissible(p)[0]
    ratios = [pitt_ratio(make_gaussian(G1, 1.0 / lam), p) for lam in (0.5, 1, 2)]
    assert max(ratios) / min(ratios) - 1 < 0.01


def test_pitt_dilation_invariance_2d_bump():
    p = PittParams.balanced(2, 1.5, 0.5, 2)
    ratios = [pitt_ratio(make_bump(G2, 4.0 / lam), p) for lam in (0.5, 1, 2)]
    assert max(ratios) / min(ratios) - 1 < 0.01


def test_pitt_refinement_stability():
    p = PittParams.balanced(2, 1.5, 0.5, 2)
    coarse = pitt_ratio(make_gaussian(GridSpec(2, 128, 16.0), 1.0), p)
    fine = pitt_ratio(make_gaussian(GridSpec(2, 256, 16.0), 1.0), p)
    assert abs(fine / coarse - 1) < 0.02


def test_pitt_empirical_constant_is_finite_and_refinement_stable():
    lattice = [PittParams.balanced(r1, r2, s2, 1) for r1, r2, s2 in
               ((2, 1.5, 0.2), (3, 2, 0.1), (2, 1.25, 0.1), (4, 1.5, 0.25))]
    fams = [lambda g: make_gaussian(g, 1.0), lambda g: make_bump(g, 3.0),
            lambda g: make_gaussian(g, 0.8, moment_zero=True)]
    worst = {}
    for N in (512, 1024):
        g = GridSpec(1, N, 30.0)
        worst[N] = max(pitt_ratio(fam(g), p) for p in lattice if pitt_admissible(p)[0] for fam in fams)
    assert math.isfinite(worst[1024])
    assert abs(worst[1024] / worst[512] - 1) < 0.05


@pytest.mark.parametrize("n", [1, 2])
def test_hausdorff_young_constant_values(n):
    assert hausdorff_young_constant(2, n) == 1.0
    assert hausdorff_young_constant(1, n) == pytest.approx((2 * math.pi) ** (-n / 2))
    with pytest.raises(ValueError):
        hausdorff_young_constant(2.5, n)


@pytest.mark.parametrize("r2", [1.0, 1.25, 1.5, 1.8])
def test_gaussians_attain_hausdorff_young(r2):
    g = GridSpec(1, 1024, 40.0)
    r1 = math.inf if r2 == 1 else r2 / (r2 - 1)
    ratio = hausdorff_young_ratio(make_gaussian(g, 1.0), r1, r2)
    assert ratio == pytest.approx(hausdorff_young_constant(r2, 1), rel=1e-8)


def test_hausdorff_young_random_family():
    g = GridSpec(1, 512, 30.0)
    rng = np.random.default_rng(11)
    c = hausdorff_young_constant(1.5, 1)
    ratios = [hausdorff_young_ratio(make_random_smooth(g, rng), 3.0, 1.5) for _ in range(20)]
    assert max(ratios) <= c * (1 + 1e-9)


def test_hausdorff_young_conjugacy_enforced():
    with pytest.raises(ValueError):
        hausdorff_young_ratio(make_gaussian(G1, 1.0), 2.5, 1.5)


def test_holder_examples():
    g = GridSpec(1, 256, 10.0)
    block = RealField(g, (np.abs(g.axis()) < 2).astype(float))
    assert holder_product_ratio(block, block, 1.0) == pytest.approx(1.0, rel=1e-14)
    left = RealField(g, (g.axis() < -3).astype(float))
    right = RealField(g, (g.axis() > 3).astype(float))
    assert holder_product_ratio(left, right, 1.5) == 0.0
    with pytest.raises(ValueError):
        holder_product_ratio(block, make_gaussian(GridSpec(1, 128, 10.0), 1.0), 1.5)


@given(st.integers(0, 2**32 - 1), st.floats(1.0, 2.0))
def test_holder_bound(seed, m):
    g = GridSpec(1, 256, 24.0)
    rng = np.random.default_rng(seed)
    f, h = make_random_smooth(g, rng), make_random_smooth(g, rng)
    assert holder_product_ratio(f, h, m) <= 1 + 1e-10
