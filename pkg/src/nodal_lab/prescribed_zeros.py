"""
Harmonics with prescribed zeros from reproducing-kernel determinants.

For points ``a_1..a_k`` and an auxiliary point ``y``, the function

    x -> det [[phi(a_i, a_j), phi(a_i, y)], [phi(x, a_j), phi(x, y)]]

lies in ``H_n`` and vanishes at every ``a_i``. Expanding along the last row
gives its coefficients in the kernel sections ``phi_{a_j}``, ``phi_y``.
"""

from dataclasses import dataclass, field

import numpy as np

from .harmonics import RealHarmonic, basis_matrix, unit, zonal_eval

__all__ = [
    "DEFAULT_RANK_TOL",
    "PointConfiguration",
    "SingularConfigurationError",
    "independence_rank",
    "harmonic_vanishing_at",
    "kernel_determinant",
    "interpolate",
    "kernel_matrix",
]

DEFAULT_RANK_TOL = 1e-9


class SingularConfigurationError(ValueError):
    """The kernel sections at the given points are linearly dependent."""


def kernel_matrix(n, A, B):
    """Matrix ``phi(A_i, B_j) = (2n+1) P_n(<A_i, B_j>)``."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    return zonal_eval(n, A[:, None, :], B[None, :, :])


@dataclass(frozen=True)
class PointConfiguration:
    degree: int
    points: np.ndarray
    gram: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        pts = unit(np.atleast_2d(self.points))
        if pts.shape[0] > 2 * self.degree + 1:
            raise ValueError(
                f"at most {2 * self.degree + 1} points fit in degree {self.degree}, got {pts.shape[0]}"
            )
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "gram", kernel_matrix(self.degree, pts, pts))

    @property
    def k(self):
        return self.points.shape[0]


def independence_rank(cfg, tol=DEFAULT_RANK_TOL):
    """Numerical rank of the Gram matrix of the kernel sections.

    Singular values below ``tol`` times the largest one are discarded.

    Returns
    -------
    rank : int
    independent : bool
        ``rank == k``.
    """
    sv = np.linalg.svd(cfg.gram, compute_uv=False)
    rank = int(np.sum(sv > tol * sv[0]))
    return rank, rank == cfg.k


def _last_row_cofactors(top):
    """Signed cofactors of the last row for a ``(k+1) x (k+1)`` matrix whose
    first ``k`` rows are ``top``."""
    k = top.shape[0]
    cof = np.empty(k + 1)
    for j in range(k + 1):
        minor = np.delete(top, j, axis=1)
        cof[j] = (-1) ** (k + j) * np.linalg.det(minor)
    return cof


def harmonic_vanishing_at(points, n, y):
    """Harmonic of degree ``n`` vanishing at ``points`` (determinant construction).

    Parameters
    ----------
    points : array_like, shape (k, 3)
        Prescribed zeros, ``1 <= k <= 2n``.
    n : int
        Degree.
    y : array_like, shape (3,)
        Auxiliary point fixing the last column of the determinant.

    Returns
    -------
    RealHarmonic
        Zero when the points are dependent; otherwise unique up to scale if
        ``k = 2n`` and the points are independent.
    """
    A = unit(np.atleast_2d(points))
    k = A.shape[0]
    if not 1 <= k <= 2 * n:
        raise ValueError(f"need 1 <= k <= 2n = {2 * n} points, got {k}")
    y = unit(y)
    nodes = np.vstack([A, y])
    top = kernel_matrix(n, A, nodes)
    cof = _last_row_cofactors(top)
    # phi_b has basis coefficients Y_{n,j}(b)
    return RealHarmonic(n, cof @ basis_matrix(n, nodes))


def kernel_determinant(points, n, x, y):
    """The literal determinant ``Phi_k^a(x, y)`` (for small ``k``; tests use it)."""
    A = unit(np.atleast_2d(points))
    rows = np.vstack([A, unit(x)])
    cols = np.vstack([A, unit(y)])
    return float(np.linalg.det(kernel_matrix(n, rows, cols)))


def interpolate(points, values, n, tol=DEFAULT_RANK_TOL):
    """Minimal-norm ``u in H_n`` with ``u(a_i) = values_i``.

    ``u`` is sought in the span of the kernel sections ``phi_{a_i}``, which by
    the reproducing property is the orthogonal complement of the harmonics
    vanishing on all ``a_i``.

    Raises
    ------
    SingularConfigurationError
        When the Gram matrix has numerical rank below ``k`` at relative
        tolerance ``tol``.
    """
    cfg = PointConfiguration(n, points)
    values = np.asarray(values, dtype=float)
    if values.shape != (cfg.k,):
        raise ValueError(f"expected {cfg.k} values, got shape {values.shape}")
    rank, independent = independence_rank(cfg, tol)
    if not independent:
        raise SingularConfigurationError(
            f"points are dependent for degree {n}: Gram rank {rank} < {cfg.k} at relative tol {tol:g}"
        )
    weights = np.linalg.solve(cfg.gram, values)
    return RealHarmonic(n, weights @ basis_matrix(n, cfg.points))
