import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial.transform import Rotation

from nodal_lab.harmonics import (
    BASIS_NAME,
    RealHarmonic,
    basis_eval,
    basis_matrix,
    evaluate,
    gradient_sphere,
    inner_product,
    power_harmonic,
    project,
    random_sphere_points,
    sample_uniform,
    sphere_quadrature,
    unit,
    zonal_eval,
    zonal_harmonic,
)
from nodal_lab.legendre import legendre_eval

E1, E2, E3 = np.eye(3)


def test_basis_examples():
    assert basis_eval(0, 0, unit([0.2, -0.4, 0.9])) == pytest.approx(1.0)
    assert basis_eval(1, 0, E3) == pytest.approx(np.sqrt(3.0))
    for n in range(1, 7):
        for j in range(-n, n + 1):
            if j != 0:
                assert basis_eval(n, j, E3) == 0.0


def test_basis_index_out_of_range():
    with pytest.raises(IndexError):
        basis_eval(2, 3, E3)


def test_basis_matches_scipy_up_to_convention(rng):
    # scipy's complex Y_n^m is normalized for the area measure and carries the
    # Condon-Shortley phase; undo both to compare with the real basis
    from scipy.special import sph_harm_y

    x = random_sphere_points(30, rng)
    theta = np.arccos(x[:, 2])
    phi = np.arctan2(x[:, 1], x[:, 0])
    for n in range(0, 6):
        B = basis_matrix(n, x)
        for m in range(0, n + 1):
            y = sph_harm_y(n, m, theta, phi) * np.sqrt(4 * np.pi) * (-1) ** m
            if m == 0:
                assert np.allclose(B[:, n], y.real, atol=1e-12)
            else:
                assert np.allclose(B[:, n + m], np.sqrt(2) * y.real, atol=1e-12)
                assert np.allclose(B[:, n - m], np.sqrt(2) * y.imag, atol=1e-12)


def test_orthonormal_for_probability_measure():
    for n in (0, 1, 5, 12, 25):
        pts, w = sphere_quadrature(n)
        assert w.sum() == pytest.approx(1.0, abs=1e-14)
        Y = basis_matrix(n, pts)
        assert np.allclose((Y * w[:, None]).T @ Y, np.eye(2 * n + 1), atol=1e-12)


def test_zonal_examples(rng):
    assert zonal_eval(1, E1, E2) == 0.0
    for n in range(9):
        a = random_sphere_points(1, rng)[0]
        assert zonal_eval(n, a, a) == pytest.approx(2 * n + 1, abs=1e-12)
        assert np.sum(basis_matrix(n, a) ** 2) == pytest.approx(2 * n + 1, abs=1e-11)


def test_addition_theorem(rng):
    for _ in range(200):
        n = int(rng.integers(0, 11))
        a, x = random_sphere_points(2, rng)
        lhs = basis_matrix(n, a) @ basis_matrix(n, x)
        assert abs(lhs - (2 * n + 1) * legendre_eval(n, a @ x)) < 1e-9


def test_zonal_rotation_invariance(rng):
    for n in (1, 4, 9):
        a, x = random_sphere_points(2, rng)
        R = Rotation.random(random_state=int(rng.integers(1 << 30))).as_matrix()
        assert zonal_eval(n, R @ a, R @ x) == pytest.approx(zonal_eval(n, a, x), abs=1e-12)


def test_evaluate_examples(rng):
    x = random_sphere_points(5, rng)
    for j in (-2, 0, 1):
        assert np.allclose(evaluate(RealHarmonic.basis_vector(2, j), x), basis_eval(2, j, x))
    assert np.all(evaluate(RealHarmonic(3, np.zeros(7)), x) == 0.0)
    a = random_sphere_points(1, rng)[0]
    assert np.allclose(zonal_harmonic(4, a)(x), zonal_eval(4, a, x), atol=1e-10)


def test_gradient_examples(rng):
    u = RealHarmonic.basis_vector(1, 0)
    assert np.allclose(gradient_sphere(u, E1), [0, 0, np.sqrt(3)])
    v = sample_uniform(5, rng)
    x = random_sphere_points(50, rng)
    assert np.max(np.abs(np.sum(gradient_sphere(v, x) * x, axis=1))) < 1e-12
    a = random_sphere_points(1, rng)[0]
    assert np.linalg.norm(gradient_sphere(zonal_harmonic(3, a), a)) < 1e-11


def test_gradient_by_geodesic_differences(rng):
    u = sample_uniform(6, rng)
    x = random_sphere_points(1, rng)[0]
    g = gradient_sphere(u, x)
    h = 1e-6
    for t in np.linalg.svd(x[None, :])[2][1:]:
        fd = (u(unit(x + h * t)) - u(unit(x - h * t))) / (2 * h)
        assert fd == pytest.approx(g @ t, abs=1e-7)


def test_laplacian_eigenfunction(rng):
    h = 1e-3
    for n in range(1, 7):
        u = sample_uniform(n, rng)
        for x in random_sphere_points(5, rng):
            t1 = unit(np.cross(x, [0.3, 0.5, 0.7]))
            t2 = np.cross(x, t1)
            ring = [np.cos(h) * x + np.sin(h) * s * t for t in (t1, t2) for s in (1, -1)]
            lap = (sum(u(p) for p in ring) - 4 * u(x)) / h**2
            assert abs(lap + n * (n + 1) * u(x)) < 1e-3 * n * (n + 1) * u.norm


def test_inner_product_properties(rng):
    for n in (1, 3, 8):
        i, j = 0, 2 * n
        assert inner_product(RealHarmonic.basis_vector(n, i - n), RealHarmonic.basis_vector(n, i - n)) == pytest.approx(1)
        assert abs(inner_product(RealHarmonic.basis_vector(n, i - n), RealHarmonic.basis_vector(n, j - n))) < 1e-13
        u = sample_uniform(n, rng) * 3.0
        assert inner_product(u, u) == pytest.approx(np.sum(u.coeffs**2), rel=1e-12)


def test_reproducing_property(rng):
    for _ in range(200):
        n = int(rng.integers(1, 9))
        u = sample_uniform(n, rng)
        a = random_sphere_points(1, rng)[0]
        assert abs(inner_product(u, zonal_harmonic(n, a)) - u(a)) < 1e-9


def test_inner_product_degree_mismatch():
    with pytest.raises(ValueError, match="degree"):
        inner_product(RealHarmonic.basis_vector(1, 0), RealHarmonic.basis_vector(2, 0))


def test_sample_uniform_deterministic_and_normalized():
    a, b = sample_uniform(4, 7), sample_uniform(4, 7)
    assert np.array_equal(a.coeffs, b.coeffs)
    assert a.norm == pytest.approx(1.0, abs=2e-16)
    assert not np.array_equal(a.coeffs, sample_uniform(4, 8).coeffs)


def test_sample_uniform_mean_is_zero():
    rng = np.random.default_rng(5)
    g = rng.standard_normal((100_000, 7))
    c = g / np.linalg.norm(g, axis=1, keepdims=True)
    assert np.all(np.abs(c.mean(axis=0)) < 3 / np.sqrt(100_000))


def test_project_recovers_polynomial():
    # x1 x2 is a degree-2 harmonic
    u = RealHarmonic(2, project(lambda P: P[:, 0] * P[:, 1], 2).real)
    x = random_sphere_points(10, 3)
    assert np.allclose(u(x), x[:, 0] * x[:, 1], atol=1e-14)


def test_power_harmonic():
    x = random_sphere_points(10, 4)
    for axes in ((0, 1), (1, 2)):
        for imaginary in (False, True):
            u = power_harmonic(4, axes, imaginary)
            z = (x[:, axes[0]] + 1j * x[:, axes[1]]) ** 4
            ratio = u(x) / (z.imag if imaginary else z.real)
            assert np.allclose(ratio, ratio[0]) and ratio[0] > 0
            assert u.norm == pytest.approx(1.0)


def test_coefficients_read_only_and_shape_checked():
    u = RealHarmonic(2, [1, 2, 3, 4, 5])
    with pytest.raises(ValueError):
        u.coeffs[0] = 3.0
    with pytest.raises(ValueError, match="needs 5"):
        RealHarmonic(2, [1, 2, 3])


def test_arithmetic():
    u, v = sample_uniform(3, 1), sample_uniform(3, 2)
    x = random_sphere_points(4, 0)
    assert np.allclose((u + 2 * v)(x), u(x) + 2 * v(x))
    assert np.allclose((u - v)(x), u(x) - v(x))
    assert np.allclose((-u)(x), -u(x))
    assert u.eigenvalue == 12


def test_json_round_trip():
    u = sample_uniform(5, 3)
    d = json.loads(u.to_json())
    assert d["basis"] == BASIS_NAME
    assert np.array_equal(RealHarmonic.from_json(u.to_json()).coeffs, u.coeffs)
    with pytest.raises(ValueError, match="basis"):
        RealHarmonic.from_dict({"degree": 1, "basis": "other", "coeffs": [0, 0, 1]})


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**31 - 1))
def test_linearity_of_evaluation(n, seed):
    u, v = sample_uniform(n, seed), sample_uniform(n, seed + 1)
    x = random_sphere_points(3, seed)
    assert np.allclose((u + v)(x), u(x) + v(x), atol=1e-12)
    # homogeneity of the solid extension
    assert np.allclose(evaluate(u, 2.0 * x), 2.0**n * u(x), rtol=1e-12, atol=1e-12)
