"""
Legendre polynomials: evaluation, roots and the angle of the largest root.

The zonal harmonic of degree ``n`` vanishes on the parallel circles
``<a, x> = t_k`` where ``t_k`` are the roots of ``P_n``; the smallest of these
circles has angular radius ``theta_n = arccos(max t_k)``, which bounds the
inner radius of every nodal domain from above.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "J0_FIRST_ZERO",
    "LegendreRoots",
    "legendre_eval",
    "legendre_eval_with_derivative",
    "legendre_roots",
    "gauss_legendre",
    "theta_bound_check",
]

#: least positive zero of the Bessel function J_0
J0_FIRST_ZERO = 2.404825557695773

_NEWTON_MAX_ITER = 100
_NEWTON_TOL = 1e-14


class NewtonDivergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class LegendreRoots:
    """Roots of ``P_degree`` in ascending order and ``theta_n = arccos(max root)``."""

    degree: int
    roots: np.ndarray
    theta_n: float


def legendre_eval_with_derivative(n, t):
    """Return ``(P_n(t), P_n'(t))`` via the three-term recurrence.

    Works elementwise on arrays and for ``t`` outside ``[-1, 1]``.
    The derivative uses ``P'_{k+1} = P'_{k-1} + (2k+1) P_k``, which stays
    finite at ``t = +-1``.
    """
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    t = np.asarray(t, dtype=float)
    p_prev, p = np.ones_like(t), t.copy()
    d_prev, d = np.zeros_like(t), np.ones_like(t)
    if n == 0:
        return p_prev, d_prev
    for k in range(1, n):
        p_next = ((2 * k + 1) * t * p - k * p_prev) / (k + 1)
        d_next = d_prev + (2 * k + 1) * p
        p_prev, p = p, p_next
        d_prev, d = d, d_next
    return p, d


def legendre_eval(n, t):
    """Value of the Legendre polynomial ``P_n`` at ``t``.

    Parameters
    ----------
    n : int
        Degree, ``n >= 0``.
    t : float or array_like
        Evaluation point(s).

    Returns
    -------
    float or ndarray
        ``P_n(t)``; a Python float when ``t`` is a scalar.
    """
    value, _ = legendre_eval_with_derivative(n, t)
    return float(value) if value.ndim == 0 else value


def legendre_roots(n):
    """All ``n`` roots of ``P_n``, Newton-polished from Chebyshev-angle guesses.

    Raises
    ------
    NewtonDivergenceError
        If Newton does not settle within 100 iterations. This is a bug, not a
        property of the input.
    """
    if n < 1:
        raise ValueError(f"degree must be positive, got {n}")
    k = np.arange(1, n + 1)
    t = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(_NEWTON_MAX_ITER):
        p, dp = legendre_eval_with_derivative(n, t)
        step = p / dp
        t = t - step
        if np.max(np.abs(step)) < _NEWTON_TOL:
            break
    else:
        raise NewtonDivergenceError(f"Legendre root iteration did not converge for n={n}")
    t = np.sort(t)
    # enforce the exact t <-> -t symmetry of the root set
    t = 0.5 * (t - t[::-1])
    return LegendreRoots(degree=n, roots=t, theta_n=float(np.arccos(t[-1])))


def gauss_legendre(n):
    """Nodes and weights of the ``n``-point Gauss-Legendre rule on ``[-1, 1]``."""
    nodes = legendre_roots(n).roots
    _, dp = legendre_eval_with_derivative(n, nodes)
    weights = 2.0 / ((1.0 - nodes**2) * dp**2)
    return nodes, weights


def theta_bound_check(n):
    """Compare ``theta_n`` with the Bessel-zero bound ``j_0 / (n + 1/2)``.

    Returns
    -------
    theta_n, bound : float
    ok : bool
        ``0 < theta_n < bound``.
    """
    theta = legendre_roots(n).theta_n
    bound = J0_FIRST_ZERO / (n + 0.5)
    return theta, bound, bool(0.0 < theta < bound)
