import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sigmadecay import kernels
from sigmadecay.model import (ModelParams, ParameterError, characteristic_roots,
                              double_root_frequency, multiplier, ode_residual,
                              root_asymptotics, validate_params)

P = ModelParams(1.0, 0.25, 1)

valid_params = st.builds(
    lambda s, f: ModelParams(s, f * s / 2, 2),
    st.floats(1.0, 3.0), st.floats(0.05, 0.95))


def test_validate_params_accepts_interior():
    assert validate_params(1.0, 0.25, 2) == ModelParams(1.0, 0.25, 2)
    assert validate_params(2.0, 0.75, 3).n == 3


@pytest.mark.parametrize("args, fragment", [
    ((1.0, 0.5, 2), "delta must be < sigma/2"),
    ((0.9, 0.2, 1), "sigma must be >= 1"),
    ((1.0, 0.0, 1), "delta must be > 0"),
    ((1.0, 0.2, 0), "n must be a positive integer"),
])
def test_validate_params_names_the_range(args, fragment):
    with pytest.raises(ParameterError, match=fragment):
        validate_params(*args)


def test_roots_at_unit_frequency():
    r = characteristic_roots(P, 1.0)
    assert r.lambda1 == pytest.approx(complex(-0.5, math.sqrt(3) / 2), abs=1e-14)
    assert r.lambda2 == pytest.approx(complex(-0.5, -math.sqrt(3) / 2), abs=1e-14)
    assert not r.degenerate


def test_roots_at_low_frequency():
    r = characteristic_roots(P, 0.01)
    root = math.sqrt(0.1**2 - 4e-4)
    assert r.lambda1.real == pytest.approx((root - 0.1) / 2, rel=1e-9)
    assert r.lambda2.real == pytest.approx((-root - 0.1) / 2, rel=1e-12)
    assert r.lambda1.real == pytest.approx(-0.001010, abs=5e-7)
    assert r.lambda1.imag == r.lambda2.imag == 0


def test_roots_at_origin_are_degenerate_zero():
    r = characteristic_roots(P, 0.0)
    assert r.lambda1 == r.lambda2 == 0 and r.degenerate


def test_negative_frequency_rejected():
    with pytest.raises(ValueError):
        characteristic_roots(P, -1.0)


@pytest.mark.parametrize("sigma, delta", [(1, 0.25), (2, 0.5), (1.5, 0.6), (1, 0.1)])
def test_vieta_identities(sigma, delta):
    p = ModelParams(sigma, delta, 1)
    for x in np.geomspace(1e-6, 1e3, 200):
        r = characteristic_roots(p, x)
        b, c = x ** (2 * delta), x ** (2 * sigma)
        assert abs(r.lambda1 + r.lambda2 + b) <= 1e-12 * b
        assert abs(r.lambda1 * r.lambda2 - c) <= 1e-12 * c
        assert r.lambda1.real <= 0 and r.lambda2.real <= 0


def test_root_asymptotics_examples():
    l1, l2, regime = root_asymptotics(P, 0.01)
    assert regime == "low"
    assert l1 == pytest.approx(-0.001) and l2 == pytest.approx(-0.1)
    h1, h2, regime = root_asymptotics(P, 10.0)
    assert regime == "high"
    assert h1.real == pytest.approx(-math.sqrt(10) / 2) and h1.imag == pytest.approx(10)
    assert h2.imag == pytest.approx(-10)


def test_slow_root_ratio_converges_monotonically():
    gaps = [abs(characteristic_roots(P, x).lambda1.real / root_asymptotics(P, x)[0].real - 1)
            for x in (1e-2, 1e-3, 1e-4)]
    assert gaps[0] > gaps[1] > gaps[2]


@pytest.mark.parametrize("sigma, delta, expected", [(1, 0.25, 0.25), (1, 0.375, 0.0625)])
def test_double_root_frequency(sigma, delta, expected):
    p = ModelParams(sigma, delta, 1)
    x = double_root_frequency(p)
    assert x == pytest.approx(expected, rel=1e-14)
    disc = x ** (4 * delta) - 4 * x ** (2 * sigma)
    assert abs(disc) <= 1e-12 * x ** (4 * delta)
    assert characteristic_roots(p, x).degenerate


@pytest.mark.parametrize("t", [0.0, 0.3, 7.0, 1e3])
def test_multiplier_at_origin(t):
    v = multiplier(P, 0, 0.0, t, 0.0)
    assert (v.m0, v.m1) == (1.0, t)
    v = multiplier(P, 1, 0.0, t, 0.0)
    assert (v.m0, v.m1) == (0.0, 1.0)


def test_multiplier_spec_value():
    v = multiplier(P, 0, 0.0, 100.0, 0.01)
    r = characteristic_roots(P, 0.01)
    direct = (cmath.exp(r.lambda1 * 100) - cmath.exp(r.lambda2 * 100)) / (r.lambda1 - r.lambda2)
    assert v.m1 == pytest.approx(direct.real, rel=1e-12)
    assert v.m1 == pytest.approx(9.2249, abs=5e-4)


def test_multiplier_smoothing_prefactor():
    v0 = multiplier(P, 0, 0.0, 2.0, 0.7)
    v = multiplier(P, 0, 1.5, 2.0, 0.7)
    assert v.m0 == pytest.approx(0.7**1.5 * v0.m0, rel=1e-14)
    assert v.m1 == pytest.approx(0.7**1.5 * v0.m1, rel=1e-14)
    assert (v.derivative_order, v.smoothing_order) == (0, 1.5)


@pytest.mark.parametrize("i, expected", [(0, (1.0, 0.0)), (1, (0.0, 1.0))])
def test_initial_conditions_exact(i, expected):
    for x in np.geomspace(1e-4, 1e2, 50):
        v = multiplier(P, i, 0.0, 0.0, x)
        assert (v.m0, v.m1) == expected


def test_ode_residual_examples():
    assert ode_residual(P, 0.0, 1.0, 1e-4) == (0.0, 0.0)
    assert max(ode_residual(P, 0.5, 1.0, 1e-4)) <= 1e-6
    assert max(ode_residual(P, 2.0, 1.0, 1e-4)) <= 1e-5


def test_ode_residual_rejects_bad_step():
    with pytest.raises(ValueError):
        ode_residual(P, 1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        ode_residual(P, 1.0, 1.0, 2.0)


def test_ode_residual_is_second_order():
    r1 = max(ode_residual(P, 1.3, 2.0, 1e-2))
    r2 = max(ode_residual(P, 1.3, 2.0, 5e-3))
    assert 3.5 < r1 / r2 < 4.5


@pytest.mark.parametrize("sigma, delta", [(1, 0.25), (2, 0.5), (1.5, 0.6)])
def test_kernels_continuous_across_double_root(sigma, delta):
    p = ModelParams(sigma, delta, 1)
    x0 = double_root_frequency(p)
    for t in (0.5, 3.0, 40.0):
        # just inside and just outside the confluence window
        for eps in (1e-9, 1e-5):
            inside = multiplier(p, 0, 0.0, t, x0 * (1 + eps))
            outside = multiplier(p, 0, 0.0, t, x0 * (1 + 2 * eps))
            ref = multiplier(p, 0, 0.0, t, x0)
            for a, b in ((inside, ref), (outside, inside)):
                assert abs(a.m0 - b.m0) <= 1e-8 * max(abs(b.m0), 1) + 5 * eps * t
                assert abs(a.m1 - b.m1) <= 1e-8 * max(abs(b.m1), 1) + 5 * eps * t


def test_confluent_branch_matches_limit_of_two_root_formula():
    p = ModelParams(1.0, 0.25, 1)
    x0 = double_root_frequency(p)
    for t in (0.5, 5.0):
        at = multiplier(p, 0, 0.0, t, x0)
        lam = -x0 ** 0.5 / 2
        assert at.m1 == pytest.approx(t * math.exp(lam * t), rel=1e-9)
        assert at.m0 == pytest.approx((1 - lam * t) * math.exp(lam * t), rel=1e-9)


@given(valid_params, st.floats(1e-6, 1e3), st.floats(0.0, 1e4))
def test_kernels_finite_and_real(p, x, t):
    for i in (0, 1):
        v = multiplier(p, i, 0.0, t, x)
        assert math.isfinite(v.m0) and math.isfinite(v.m1)


@pytest.mark.parametrize("sigma, delta", [(1, 0.25), (2, 0.5), (1, 0.1), (3, 0.5)])
@given(t=st.floats(0.0, 50.0))
def test_high_frequency_envelope(sigma, delta, t):
    # m1 carries a 1/Im(lambda) factor, so C grows without bound as sigma - 2 delta -> 0;
    # the constant 4 holds for these parameter sets
    p = ModelParams(sigma, delta, 1)
    x0 = double_root_frequency(p)
    xs = np.geomspace(2 * x0, 100 * max(x0, 1), 64)
    m0, m1 = kernels.multiplier_arrays(p.sigma, p.delta, xs, t, 0)
    env = np.exp(-xs ** (2 * p.delta) * t / 2)
    assert np.all(np.abs(m0) <= 4 * env + 1e-300)
    assert np.all(np.abs(m1) <= 4 * env + 1e-300)


@given(valid_params, st.floats(0.0, 200.0), st.sampled_from([0, 1]))
def test_numba_and_numpy_paths_agree(p, t, i):
    x0 = double_root_frequency(p)
    xs = np.concatenate([[0.0, x0, x0 * (1 + 1e-8)], np.geomspace(1e-5, 1e2, 300)])
    a = kernels.multiplier_arrays(p.sigma, p.delta, xs, t, i, use_numba=True)
    b = kernels.multiplier_arrays(p.sigma, p.delta, xs, t, i, use_numba=False)
    # oscillation phase |lambda| t is only known to a few ulps of itself
    phase = 1.0 + xs**p.sigma * t
    for u, v in zip(a, b):
        scale = max(np.max(np.abs(v)), 1e-300)
        assert np.all(np.abs(u - v) <= 1e-13 * scale * phase + 1e-300)


def test_cell_mean_paths_agree():
    for n in (1, 2, 3):
        for i in (0, 1):
            a = kernels.cell_mean(1.0, 0.25, 0.01, n, 50.0, i, use_numba=True)
            b = kernels.cell_mean(1.0, 0.25, 0.01, n, 50.0, i, use_numba=False)
            assert a == pytest.approx(b, rel=1e-12, abs=1e-300)


def test_cell_mean_tends_to_point_value():
    m0, m1 = kernels.cell_mean(1.0, 0.25, 1e-12, 2, 10.0, 0)
    assert m0 == pytest.approx(1.0, rel=1e-4)
    assert m1 == pytest.approx(10.0, rel=1e-4)
