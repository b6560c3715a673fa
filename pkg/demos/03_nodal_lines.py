"""
Nodal lines: length, inner radius, common zeros
===============================================

Nodal sets are traced on an icosphere by marching triangles. The length of
a degree-n nodal set is at most 2 pi n, with equality for Re(x1 + i x2)^n,
and a random great circle meets it at most 2n times.
"""

import math

import numpy as np

from nodal_lab.harmonics import power_harmonic, sample_uniform, zonal_harmonic
from nodal_lab.legendre import J0_FIRST_ZERO, legendre_roots
from nodal_lab.mesh import icosphere
from nodal_lab.nodal_geometry import (
    common_zeros,
    critical_points,
    crofton_length,
    inner_radius,
    nodal_length,
    trace_nodal,
)

mesh = icosphere(6)

for n in (2, 3, 5):
    psi = power_harmonic(n)
    est, err = crofton_length(psi, 2000, seed=0)
    print(f"psi_{n}: mesh {nodal_length(trace_nodal(psi, mesh)):.4f}, "
          f"Crofton {est:.4f} +- {err:.1e}, 2 pi n = {2 * math.pi * n:.4f}")

###############################################################################
# Random harmonics sit between the two length bounds.
rng = np.random.default_rng(1)
for n in (2, 4, 6, 8):
    u = sample_uniform(n, rng)
    curves = trace_nodal(u, mesh)
    lo, hi = 2 * math.pi / J0_FIRST_ZERO * (n + 0.5), 2 * math.pi * n
    print(f"n={n}: {lo:7.3f} < {nodal_length(curves):7.3f} <= {hi:7.3f}, "
          f"{len(curves)} components, inr {inner_radius(u, mesh, curves):.3f} "
          f"(theta_n {legendre_roots(n).theta_n:.3f})")

###############################################################################
# Two harmonics of degree n have at most 2n^2 isolated common zeros. The
# pair below attains the bound.
for n in (2, 3, 4):
    z = common_zeros(zonal_harmonic(n, [1.0, 0.0, 0.0]), power_harmonic(n, (1, 2)), mesh)
    print(f"n={n}: {z.count} common zeros, 2n^2 = {2 * n * n}")

u = zonal_harmonic(2, [1.0, 0.0, 0.0]).normalized() + power_harmonic(2, (1, 2)) * 0.05
print("critical points of the perturbed pair:", critical_points(u, mesh).count)
