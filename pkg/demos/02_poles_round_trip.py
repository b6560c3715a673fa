"""
Poles on the null cone
======================

A complex harmonic of degree n restricted to the null cone of x1^2+x2^2+x3^2
becomes a binary form of degree 2n in (zeta1, zeta2). Its 2n projective roots
(the poles) determine the harmonic up to a constant.
"""

import numpy as np

from nodal_lab.harmonics import project
from nodal_lab.nullcone import (
    ComplexHarmonic,
    coefficient_cosine,
    poles,
    random_complex_harmonic,
    reconstruct,
)

# (x1 + i x2)^3 has a single pole of multiplicity 6
p = ComplexHarmonic(3, project(lambda P: (P[:, 0] + 1j * P[:, 1]) ** 3, 3))
print("multiplicities of (x1+ix2)^3:", poles(p).multiplicities)

###############################################################################
# A random harmonic has 2n distinct poles, and the harmonic is rebuilt from
# them by a Gram-type determinant of the powers <x, a_k>^n.
for n in range(1, 6):
    p = random_complex_harmonic(n, [42, n])
    ps = poles(p, seed=n)
    q = reconstruct(ps, n, seed=n)
    print(f"n={n}: {ps.total} poles, 1 - cos(p, q) = {max(0.0, 1 - coefficient_cosine(p, q)):.1e}")
