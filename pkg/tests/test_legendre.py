import numpy as np
import pytest
from hypothesis import given, strategies as st

from nodal_lab.legendre import (
    J0_FIRST_ZERO,
    gauss_legendre,
    legendre_eval,
    legendre_eval_with_derivative,
    legendre_roots,
    theta_bound_check,
)


@pytest.mark.parametrize(
    "n, t, expected",
    [(3, 0.5, -0.4375), (4, 0.0, 0.375), (0, 0.3, 1.0), (1, -0.2, -0.2)],
)
def test_eval_examples(n, t, expected):
    assert legendre_eval(n, t) == pytest.approx(expected, abs=1e-15)


def test_eval_at_one():
    for n in range(60):
        assert legendre_eval(n, 1.0) == pytest.approx(1.0, abs=1e-13)


def test_eval_matches_numpy_legendre():
    t = np.linspace(-1, 1, 41)
    for n in range(12):
        c = np.zeros(n + 1)
        c[n] = 1.0
        assert np.allclose(legendre_eval(n, t), np.polynomial.legendre.legval(t, c), atol=1e-13)


@given(st.integers(0, 40), st.floats(-1, 1))
def test_parity(n, t):
    assert abs(legendre_eval(n, -t) - (-1) ** n * legendre_eval(n, t)) < 1e-13


def test_derivative_by_differences(rng):
    t = rng.uniform(-0.95, 0.95, 20)
    h = 1e-6
    for n in (1, 4, 9):
        _, d = legendre_eval_with_derivative(n, t)
        fd = (legendre_eval(n, t + h) - legendre_eval(n, t - h)) / (2 * h)
        assert np.allclose(d, fd, atol=1e-6)


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        legendre_eval(-1, 0.3)
    with pytest.raises(ValueError):
        legendre_roots(0)


@pytest.mark.parametrize(
    "n, expected",
    [(1, [0.0]), (2, [-0.5773502691896258, 0.5773502691896258]), (3, [-0.7745966692414834, 0.0, 0.7745966692414834])],
)
def test_root_examples(n, expected):
    assert np.allclose(legendre_roots(n).roots, expected, atol=1e-14)


def test_roots_up_to_100_simple_and_symmetric():
    for n in range(1, 101):
        r = legendre_roots(n).roots
        assert len(r) == n
        assert np.all(np.diff(r) > 0)
        assert np.array_equal(r, -r[::-1])
        p, dp = legendre_eval_with_derivative(n, r)
        assert np.max(np.abs(p)) < 1e-12
        assert np.min(np.abs(dp)) > 0


def test_roots_agree_with_numpy_leggauss():
    for n in (5, 17, 64):
        x, w = np.polynomial.legendre.leggauss(n)
        t, wt = gauss_legendre(n)
        assert np.allclose(t, x, atol=1e-14)
        assert np.allclose(wt, w, atol=1e-13)


def test_gauss_legendre_exact_for_polynomials():
    t, w = gauss_legendre(6)
    for k in range(12):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert np.sum(w * t**k) == pytest.approx(exact, abs=1e-14)


@pytest.mark.parametrize(
    "n, theta, bound",
    [(1, 1.5707963267948966, 1.6032170384638487), (2, 0.9553166181245093, 0.961930223078309), (3, 0.6847192030022828, 0.6870930164845065)],
)
def test_theta_bound_examples(n, theta, bound):
    th, b, ok = theta_bound_check(n)
    assert th == pytest.approx(theta, abs=1e-12)
    assert b == pytest.approx(bound, abs=1e-12)
    assert ok


def test_theta_bound_and_monotonicity_to_100():
    ntheta = []
    for n in range(1, 101):
        th, _, ok = theta_bound_check(n)
        assert ok
        ntheta.append(n * th)
    assert np.all(np.diff(ntheta) > -1e-9)
    assert ntheta[-1] < J0_FIRST_ZERO
    assert J0_FIRST_ZERO - ntheta[-1] < 0.02
