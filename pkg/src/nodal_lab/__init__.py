"""Spherical harmonics on S^2 and their nodal sets.

Kernel constructions with prescribed zeros, pole decomposition on the
complex null cone, nodal-curve geometry and Monte Carlo checks of mean
intersection measures.
"""

__version__ = "0.1.0"

from .harmonics import (  # noqa: E402
    BASIS_NAME,
    RealHarmonic,
    evaluate,
    gradient_sphere,
    inner_product,
    power_harmonic,
    project,
    sample_uniform,
    zonal_harmonic,
)
from .legendre import J0_FIRST_ZERO, legendre_roots, theta_bound_check  # noqa: E402
from .mesh import icosphere  # noqa: E402
from .nodal_geometry import (  # noqa: E402
    common_zeros,
    critical_points,
    crofton_length,
    inner_radius,
    nodal_length,
    trace_nodal,
)
from .nullcone import ComplexHarmonic, PoleSet, poles, reconstruct, restrict  # noqa: E402
from .prescribed_zeros import harmonic_vanishing_at, interpolate  # noqa: E402
from .mean_measure import MeanSpec, mean_measure_closed  # noqa: E402
