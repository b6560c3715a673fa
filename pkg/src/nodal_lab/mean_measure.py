"""
Mean measures of intersections of nodal sets of random harmonics.

For independent uniform ``u_j`` on the unit sphere of ``H_{n_j}`` over
``S^m`` the mean ``(m-k)``-measure of ``N_{u_1} ∩ ... ∩ N_{u_k}`` is

    M = omega_{m-k} * m^{-k/2} * sqrt(lambda_{n_1} ... lambda_{n_k})

with ``lambda_n = n(n+m-1)``. On ``S^2`` this is checked by Monte Carlo:
mean nodal length for ``k=1`` and mean number of common zeros for ``k=2``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .harmonics import basis_matrix, sample_uniform, unit
from .mesh import icosphere, level_for_degree
from .nodal_geometry import common_zeros, crofton_length, nodal_length, trace_nodal
from .parallel import ordered_map

__all__ = [
    "MeanSpec",
    "MonteCarloResult",
    "omega",
    "lambda_n",
    "immersion_scale",
    "mean_measure_closed",
    "mean_measure_product",
    "immersion_scale_numeric",
    "mc_mean_nodal_length",
    "mc_mean_common_zeros",
]

_FD_STEP = 1e-5
_MAX_REDRAWS = 100


@dataclass(frozen=True)
class MeanSpec:
    m: int
    k: int
    degrees: tuple

    def __post_init__(self):
        degrees = tuple(int(n) for n in self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if self.m < 2:
            raise ValueError("sphere dimension m must be at least 2")
        if not 1 <= self.k <= self.m:
            raise ValueError(f"need 1 <= k <= m, got k={self.k}, m={self.m}")
        if len(degrees) != self.k:
            raise ValueError(f"expected {self.k} degrees, got {len(degrees)}")
        if min(degrees) < 1:
            raise ValueError("degrees must be positive")


def omega(k):
    """Volume of the unit ``k``-sphere, ``2 pi^{(k+1)/2} / Gamma((k+1)/2)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return 2.0 * math.pi ** ((k + 1) / 2) / math.gamma((k + 1) / 2)


def lambda_n(n, m=2):
    """Laplace eigenvalue ``n(n+m-1)`` of degree-``n`` harmonics on ``S^m``."""
    return float(n * (n + m - 1))


def immersion_scale(n, m=2):
    """Homothety factor ``sqrt(lambda_n / m)`` of the normalized kernel immersion."""
    return math.sqrt(lambda_n(n, m) / m)


def mean_measure_closed(spec):
    """``omega_{m-k} m^{-k/2} sqrt(prod lambda_{n_j})``."""
    m, k = spec.m, spec.k
    prod = math.prod(lambda_n(n, m) for n in spec.degrees)
    return omega(m - k) * m ** (-k / 2) * math.sqrt(prod)


def mean_measure_product(spec):
    """The same quantity written as ``omega_{m-k} prod s_{n_j}``."""
    return omega(spec.m - spec.k) * math.prod(immersion_scale(n, spec.m) for n in spec.degrees)


def immersion_scale_numeric(n, a, v, step=_FD_STEP):
    """Speed of ``x -> phi_x / |phi_x|`` at ``a`` along the unit tangent ``v``.

    ``phi_x`` has coefficients ``Y_{n,j}(x)`` and norm ``sqrt(2n+1)``; the
    curve is the great circle through ``a`` with velocity ``v`` and the
    derivative is a central difference.
    """
    a = unit(a)
    v = np.asarray(v, dtype=float)
    v = unit(v - np.dot(v, a) * a)
    pts = np.stack([np.cos(step) * a + np.sin(step) * v, np.cos(step) * a - np.sin(step) * v])
    Y = basis_matrix(n, pts) / math.sqrt(2 * n + 1)
    return float(np.linalg.norm(Y[0] - Y[1]) / (2.0 * step))


@dataclass(frozen=True)
class MonteCarloResult:
    mean: float
    stderr: float
    samples: int
    rejected: int = 0

    def to_dict(self):
        return {"mc_mean": self.mean, "mc_stderr": self.stderr, "samples": self.samples, "rejected": self.rejected}


def _summarize(values, rejected=0):
    # exactly rounded sums, so identical samples give zero variance
    values = [float(x) for x in values]
    count = len(values)
    mean = math.fsum(values) / count
    var = math.fsum((x - mean) ** 2 for x in values) / (count - 1)
    return MonteCarloResult(mean, math.sqrt(var / count), count, rejected)


def mc_mean_nodal_length(n, samples, seed, circles=200, method="crofton", mesh_level=None):
    """Monte Carlo mean nodal length of a uniform ``u`` in ``H_n`` on ``S^2``.

    Sample ``i`` draws ``u`` (and, for Crofton, its great circles) from the
    generator seeded with ``[seed, i]``, so results do not depend on the
    order in which samples are evaluated. ``method`` is ``"crofton"``
    (unbiased, ``circles`` circles per sample) or ``"mesh"``.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    if method not in ("crofton", "mesh"):
        raise ValueError(f"unknown method {method!r}")
    mesh = icosphere(level_for_degree(n) if mesh_level is None else mesh_level)

    def one(i):
        rng = np.random.default_rng([seed, i])
        u = sample_uniform(n, rng)
        if method == "crofton":
            return crofton_length(u, circles, rng).estimate
        return nodal_length(trace_nodal(u, mesh))

    return _summarize(ordered_map(one, range(samples)))


def mc_mean_common_zeros(n1, n2, samples, seed, mesh_level=None):
    """Monte Carlo mean number of common zeros of independent uniform pairs.

    Pairs with a near-singular common zero or an unresolved cell are redrawn
    from the same per-sample generator; ``rejected`` counts the redraws.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    mesh = icosphere(level_for_degree(max(n1, n2)) if mesh_level is None else mesh_level)

    def one(i):
        rng = np.random.default_rng([seed, i])
        for attempt in range(_MAX_REDRAWS):
            u = sample_uniform(n1, rng)
            v = sample_uniform(n2, rng)
            z = common_zeros(u, v, mesh)
            if z.clean:
                return z.count, attempt
        raise RuntimeError(f"sample {i}: no clean pair in {_MAX_REDRAWS} draws")

    results = ordered_map(one, range(samples))
    counts = [c for c, _ in results]
    return _summarize(counts, sum(r for _, r in results))
