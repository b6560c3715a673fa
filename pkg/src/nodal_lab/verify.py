"""Invariant suites behind ``nodal-lab verify``.

Each suite returns a list of checks ``{"name", "value", "threshold",
"passed"}``; values are measured residuals or counts. All randomness is
seeded, so a report is reproducible byte for byte.
"""

import math

import numpy as np

from . import mean_measure as mm
from .harmonics import (
    RealHarmonic,
    basis_matrix,
    inner_product,
    power_harmonic,
    random_sphere_points,
    sample_uniform,
    sphere_quadrature,
    zonal_harmonic,
)
from .legendre import J0_FIRST_ZERO, legendre_eval, legendre_roots, theta_bound_check
from .mesh import icosphere
from .nodal_geometry import (
    common_zeros,
    critical_points,
    crofton_length,
    green_residual,
    nodal_length,
    trace_nodal,
)
from .nullcone import (
    coefficient_cosine,
    detcc_direct,
    detcc_eval,
    inner_product_identity_check,
    poles,
    random_complex_harmonic,
    reconstruct,
)
from .prescribed_zeros import harmonic_vanishing_at

SUITES = ("kernel", "nullcone", "geometry", "mean")


def _check(name, value, threshold, passed=None):
    value = float(value)
    if passed is None:
        passed = value < threshold
    return {"name": name, "value": value, "threshold": threshold, "passed": bool(passed)}


def kernel_suite(seed=0):
    rng = np.random.default_rng(seed)
    repro, addition = 0.0, 0.0
    for _ in range(200):
        n = int(rng.integers(1, 9))
        u = sample_uniform(n, rng)
        a, x = random_sphere_points(2, rng)
        repro = max(repro, abs(inner_product(u, zonal_harmonic(n, a)) - u(a)))
        lhs = basis_matrix(n, a) @ basis_matrix(n, x)
        addition = max(addition, abs(lhs - (2 * n + 1) * legendre_eval(n, a @ x)) / (2 * n + 1))

    ortho = 0.0
    for n in range(1, 9):
        pts, w = sphere_quadrature(n)
        Y = basis_matrix(n, pts)
        ortho = max(ortho, np.max(np.abs((Y * w[:, None]).T @ Y - np.eye(2 * n + 1))))

    vanish, cosine = 0.0, 0.0
    for _ in range(100):
        n = int(rng.integers(1, 6))
        k = int(rng.integers(1, 2 * n + 1))
        pts = random_sphere_points(k, rng)
        v = harmonic_vanishing_at(pts, n, random_sphere_points(1, rng)[0])
        vanish = max(vanish, np.max(np.abs(v(pts))) / v.norm)
        if k == 2 * n:
            w = harmonic_vanishing_at(pts, n, random_sphere_points(1, rng)[0])
            cosine = max(cosine, 1.0 - abs(np.dot(v.coeffs, w.coeffs)) / (v.norm * w.norm))

    bound_ok = all(theta_bound_check(n)[2] for n in range(1, 101))
    ntheta = [n * legendre_roots(n).theta_n for n in range(1, 101)]
    increasing = bool(np.all(np.diff(ntheta) > 0) and ntheta[-1] < J0_FIRST_ZERO)
    return [
        _check("reproducing property", repro, 1e-9),
        _check("addition theorem", addition, 1e-9),
        _check("orthonormality n<=8", ortho, 1e-12),
        _check("prescribed zeros residual", vanish, 1e-8),
        _check("uniqueness 1-cos at k=2n", cosine, 1e-8),
        _check("theta_n < j0/(n+1/2), n<=100", 0.0 if bound_ok else 1.0, 0.5),
        _check("n*theta_n increasing to j0", 0.0 if increasing else 1.0, 0.5),
    ]


def nullcone_suite(seed=0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in range(1, 6):
        for i in range(50):
            p = random_complex_harmonic(n, [seed, n, i])
            q = reconstruct(poles(p, seed=i), n, seed=i)
            worst = max(worst, 1.0 - coefficient_cosine(p, q))
    detcc = 0.0
    for k in range(1, 5):
        for _ in range(20):
            a = rng.standard_normal((k + 1, 2)) + 1j * rng.standard_normal((k + 1, 2))
            b = rng.standard_normal((k + 1, 2)) + 1j * rng.standard_normal((k + 1, 2))
            direct = detcc_direct(a, b, k)
            detcc = max(detcc, abs(detcc_eval(a, b, k) - direct) / abs(direct))
    ident = 0.0
    for _ in range(100):
        a = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        lhs, rhs = inner_product_identity_check(a, b)
        ident = max(ident, abs(lhs - rhs))
    return [
        _check("round trip 1-cos, n<=5", worst, 1e-8),
        _check("detcc relative error, k<=4", detcc, 1e-9),
        _check("<ka,kb> = -2<a,jb>^2", ident, 1e-12),
    ]


def geometry_suite(seed=0):
    mesh = icosphere(6)
    checks = []
    equator = nodal_length(trace_nodal(RealHarmonic(1, [0.0, 1.0, 0.0]), mesh))
    checks.append(_check("equator length rel. error", abs(equator / (2 * math.pi) - 1), 1e-3))
    for n in (2, 3, 5):
        psi = power_harmonic(n)
        rel = abs(nodal_length(trace_nodal(psi, mesh)) / (2 * math.pi * n) - 1)
        checks.append(_check(f"psi_{n} mesh length rel. error", rel, 5e-3))
        est, err = crofton_length(psi, 10_000, seed)
        gap = abs(est - 2 * math.pi * n)
        checks.append(_check(f"psi_{n} Crofton |error| (<= 3 stderr)", gap, 3 * err, gap <= 3 * err))
    for n in (2, 3, 4):
        z = common_zeros(zonal_harmonic(n, [1.0, 0.0, 0.0]), power_harmonic(n, (1, 2)), mesh)
        checks.append(_check(f"extremal pair n={n}: count - 2n^2", abs(z.count - 2 * n * n), 0.5))
    z = common_zeros(power_harmonic(3), power_harmonic(3, imaginary=True), mesh)
    checks.append(_check("Re/Im pair: count - 2", abs(z.count - 2), 0.5))
    crit = critical_points(RealHarmonic(1, [0.3, -0.5, 0.8]), mesh, seed)
    checks.append(_check("critical points n=1: count - 2", abs(crit.count - 2), 0.5))
    pert = zonal_harmonic(2, [1.0, 0.0, 0.0]).normalized() + power_harmonic(2, (1, 2)) * 0.05
    crit = critical_points(pert, mesh, seed)
    checks.append(_check("critical points perturbed n=2: count - 6", abs(crit.count - 6), 0.5))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(5):
        n = int(rng.integers(1, 5))
        u, v = sample_uniform(n, rng), sample_uniform(n, rng)
        curves = trace_nodal(u, mesh)
        if curves.regular:
            worst = max(worst, green_residual(u, v, curves=curves))
    checks.append(_check("Green residual", worst, 1e-3))
    return checks


def mean_suite(seed=0):
    checks = []
    closed = mm.mean_measure_closed(mm.MeanSpec(2, 2, (2, 2)))
    checks.append(_check("closed form (2,2) - 6", abs(closed - 6.0), 1e-12))
    rel = max(
        abs(mm.mean_measure_closed(s) / mm.mean_measure_product(s) - 1)
        for s in (mm.MeanSpec(2, 1, (3,)), mm.MeanSpec(3, 3, (1, 1, 1)), mm.MeanSpec(4, 2, (2, 5)))
    )
    checks.append(_check("theorem form vs product of scales", rel, 1e-14))
    rng = np.random.default_rng(seed)
    scale = 0.0
    for n in range(1, 9):
        a = rng.standard_normal(3)
        s = mm.immersion_scale_numeric(n, a, rng.standard_normal(3))
        scale = max(scale, abs(s / mm.immersion_scale(n) - 1))
    checks.append(_check("numeric immersion scale rel. error", scale, 1e-4))
    r = mm.mc_mean_nodal_length(1, 50, seed)
    checks.append(_check("MC length n=1: |mean - 2pi|", abs(r.mean - 2 * math.pi), 1e-12))
    r = mm.mc_mean_common_zeros(1, 1, 50, seed)
    checks.append(_check("MC zeros (1,1): |mean - 2| + stderr", abs(r.mean - 2) + r.stderr, 1e-12))
    r = mm.mc_mean_common_zeros(2, 2, 300, seed)
    gap = abs(r.mean - 6.0)
    checks.append(_check("MC zeros (2,2): |mean - 6| (<= 3 stderr)", gap, 3 * r.stderr, gap <= 3 * r.stderr))
    return checks


_RUNNERS = {
    "kernel": kernel_suite,
    "nullcone": nullcone_suite,
    "geometry": geometry_suite,
    "mean": mean_suite,
}


def run_suite(name, seed=0):
    """Run one suite (or ``"all"``); returns ``{suite: [checks]}``."""
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n not in _RUNNERS:
            raise ValueError(f"unknown suite {n!r}")
    return {n: _RUNNERS[n](seed) for n in names}


def all_passed(report):
    return all(c["passed"] for checks in report.values() for c in checks)
