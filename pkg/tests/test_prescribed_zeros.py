import numpy as np
import pytest

from nodal_lab.harmonics import RealHarmonic, inner_product, random_sphere_points, zonal_harmonic
from nodal_lab.prescribed_zeros import (
    PointConfiguration,
    SingularConfigurationError,
    harmonic_vanishing_at,
    independence_rank,
    interpolate,
    kernel_determinant,
)

E1, E2, E3 = np.eye(3)


def _cos(u, v):
    return abs(u.coeffs @ v.coeffs) / (u.norm * v.norm)


def test_rank_examples(rng):
    assert independence_rank(PointConfiguration(3, [E3])) == (1, True)
    a = random_sphere_points(1, rng)[0]
    assert independence_rank(PointConfiguration(2, [a, -a])) == (1, False)
    assert independence_rank(PointConfiguration(2, random_sphere_points(3, rng))) == (3, True)


def test_antipodal_pairs_by_parity(rng):
    a = random_sphere_points(1, rng)[0]
    for n in range(1, 7):
        rank, ok = independence_rank(PointConfiguration(n, [a, -a]))
        # phi_{-a} = (-1)^n phi_a, so the pair is always dependent
        assert (rank, ok) == (1, False)


def test_too_many_points():
    with pytest.raises(ValueError, match="at most 3"):
        PointConfiguration(1, random_sphere_points(4, 0))


def test_degree_one_example():
    v = harmonic_vanishing_at([E3], 1, E1)
    # 9 x_1 written in the basis (Y_{1,1} = sqrt(3) x_1)
    assert np.allclose(v.coeffs, [0, 0, 9 / np.sqrt(3)], atol=1e-14)


def test_dependent_points_give_zero(rng):
    a = random_sphere_points(1, rng)[0]
    v = harmonic_vanishing_at([a, -a], 2, random_sphere_points(1, rng)[0])
    assert np.max(np.abs(v.coeffs)) < 1e-9


def test_vanishing_and_orthogonality(rng):
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 6))
        k = int(rng.integers(1, 2 * n + 1))
        pts = random_sphere_points(k, rng)
        v = harmonic_vanishing_at(pts, n, random_sphere_points(1, rng)[0])
        worst = max(worst, np.max(np.abs(v(pts))) / v.norm)
        for a in pts[:2]:
            assert abs(inner_product(v, zonal_harmonic(n, a))) < 1e-8 * v.norm
    assert worst < 1e-8


def test_uniqueness_at_full_codimension(rng):
    for n in (2, 3, 5):
        pts = random_sphere_points(2 * n, rng)
        outs = [harmonic_vanishing_at(pts, n, y) for y in random_sphere_points(5, rng)]
        for u in outs[1:]:
            assert _cos(outs[0], u) > 1 - 1e-8


def test_matches_literal_determinant(rng):
    pts = random_sphere_points(3, rng)
    y = random_sphere_points(1, rng)[0]
    v = harmonic_vanishing_at(pts, 3, y)
    for x in random_sphere_points(5, rng):
        assert v(x) == pytest.approx(kernel_determinant(pts, 3, x, y), rel=1e-9, abs=1e-9)


def test_kernel_determinant_symmetric(rng):
    for k in (1, 2, 3):
        pts = random_sphere_points(k, rng)
        x, y = random_sphere_points(2, rng)
        a, b = kernel_determinant(pts, 4, x, y), kernel_determinant(pts, 4, y, x)
        assert abs(a - b) < 1e-10 * max(1.0, abs(a))


def test_point_count_bounds():
    with pytest.raises(ValueError):
        harmonic_vanishing_at(random_sphere_points(5, 1), 2, E1)


def test_interpolate_examples(rng):
    a = random_sphere_points(1, rng)[0]
    u = interpolate([a], [7.0], 3)
    assert np.allclose(u.coeffs, zonal_harmonic(3, a).coeffs)
    assert np.all(interpolate(random_sphere_points(3, rng), np.zeros(3), 2).coeffs == 0)
    pts = random_sphere_points(5, rng)
    vals = rng.standard_normal(5)
    assert np.max(np.abs(interpolate(pts, vals, 2)(pts) - vals)) < 1e-8


def test_interpolate_singular_names_tolerance(rng):
    a = random_sphere_points(1, rng)[0]
    with pytest.raises(SingularConfigurationError, match="1e-09"):
        interpolate([a, -a], [1.0, 1.0], 2)


def test_interpolant_has_minimal_norm(rng):
    pts = random_sphere_points(3, rng)
    u = interpolate(pts, [1.0, -2.0, 0.5], 3)
    w = harmonic_vanishing_at(pts, 3, random_sphere_points(1, rng)[0])
    assert abs(inner_product(u, w)) < 1e-9 * u.norm * w.norm
    assert (u + w * (0.1 / w.norm)).norm > u.norm
