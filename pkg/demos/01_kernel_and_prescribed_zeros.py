"""
Zonal kernels and harmonics with prescribed zeros
=================================================

The degree-n zonal function phi_a(x) = (2n+1) P_n(<a, x>) reproduces point
values: <u, phi_a> = u(a) for every u of degree n. Determinants of these
kernels give harmonics vanishing at chosen points.
"""

import numpy as np

from nodal_lab import harmonics as hm
from nodal_lab.prescribed_zeros import PointConfiguration, harmonic_vanishing_at, independence_rank

rng = np.random.default_rng(0)

# reproducing property for a random degree-5 harmonic
u = hm.sample_uniform(5, rng)
a = hm.random_sphere_points(1, rng)[0]
print("u(a)          =", u(a))
print("<u, phi_a>    =", hm.inner_product(u, hm.zonal_harmonic(5, a)))

###############################################################################
# Up to 2n points in general position are always the zero set of some
# degree-n harmonic. Antipodal pairs are not independent: phi_{-a} = +-phi_a.
n = 3
pts = hm.random_sphere_points(2 * n, rng)
print("rank of 6 random points:", independence_rank(PointConfiguration(n, pts)))
print("rank of {a, -a}:        ", independence_rank(PointConfiguration(n, [a, -a])))

v = harmonic_vanishing_at(pts, n, hm.random_sphere_points(1, rng)[0])
print("max |v(a_i)| / |v| =", np.max(np.abs(v(pts))) / v.norm)

# the result does not depend on the auxiliary point y, up to scale
w = harmonic_vanishing_at(pts, n, hm.random_sphere_points(1, rng)[0])
print("cosine between two choices of y:", abs(v.coeffs @ w.coeffs) / (v.norm * w.norm))
