"""
Real spherical harmonics on S^2 in a pinned orthonormal basis.

Convention ``real-orthonormal-prob-v1``::

    Y_{n,0}  = sqrt(2n+1) P_n(cos theta)
    Y_{n,j}  = sqrt(2(2n+1)(n-j)!/(n+j)!) P_n^j(cos theta) cos(j phi),   j > 0
    Y_{n,-j} = same with sin(j phi)

with ``P_n^j`` taken without the Condon-Shortley phase, orthonormal for the
rotation-invariant probability measure on the sphere.

The basis is evaluated as homogeneous polynomials in ``(x1, x2, x3)``
(solid harmonics), so every routine here also accepts points off the unit
sphere and complex points; the latter is what the null-cone code relies on.
"""

import json
from dataclasses import dataclass

import numpy as np

from .legendre import gauss_legendre, legendre_eval

__all__ = [
    "BASIS_NAME",
    "RealHarmonic",
    "basis_matrix",
    "basis_gradient",
    "basis_eval",
    "zonal_eval",
    "zonal_harmonic",
    "power_harmonic",
    "evaluate",
    "gradient_sphere",
    "inner_product",
    "sample_uniform",
    "sphere_quadrature",
    "project",
    "random_sphere_points",
    "unit",
]

BASIS_NAME = "real-orthonormal-prob-v1"


def unit(x):
    x = np.asarray(x, dtype=float)
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def _solid_basis(n, X, with_gradient):
    X = np.asarray(X)
    if not np.iscomplexobj(X):
        X = X.astype(float)
    x, y, z = X[..., 0], X[..., 1], X[..., 2]
    r2 = x * x + y * y + z * z
    shape = X.shape[:-1]
    out = np.zeros(shape + (2 * n + 1,), dtype=X.dtype)
    grad = np.zeros(shape + (2 * n + 1, 3), dtype=X.dtype) if with_gradient else None

    ez = np.zeros(3)
    ez[2] = 1.0

    # Re/Im parts (as polynomials) of (x + iy)^m and their gradients
    cos_part = [np.ones(shape, dtype=X.dtype)]
    sin_part = [np.zeros(shape, dtype=X.dtype)]
    for m in range(1, n + 1):
        c, s = cos_part[-1], sin_part[-1]
        cos_part.append(x * c - y * s)
        sin_part.append(x * s + y * c)

    sectoral = 1.0
    for m in range(0, n + 1):
        if m > 0:
            sectoral *= np.sqrt((2 * m + 1) / (2 * m))
        # q_l = normalized associated Legendre factor, a polynomial in (z, r^2)
        q_prev = None
        q = np.full(shape, sectoral, dtype=X.dtype)
        dq_prev = None
        dq = np.zeros(shape + (3,), dtype=X.dtype) if with_gradient else None
        for l in range(m + 1, n + 1):
            if l == m + 1:
                q_next = np.sqrt(2 * m + 3) * z * q
                if with_gradient:
                    dq_next = np.sqrt(2 * m + 3) * (z[..., None] * dq + q[..., None] * ez)
            else:
                a = np.sqrt((4.0 * l * l - 1.0) / (l * l - m * m))
                b = np.sqrt(((l - 1.0) ** 2 - m * m) / (4.0 * (l - 1.0) ** 2 - 1.0))
                q_next = a * (z * q - b * r2 * q_prev)
                if with_gradient:
                    dq_next = a * (
                        z[..., None] * dq
                        + q[..., None] * ez
                        - b * (r2[..., None] * dq_prev + 2.0 * X * q_prev[..., None])
                    )
            q_prev, q = q, q_next
            if with_gradient:
                dq_prev, dq = dq, dq_next

        if m == 0:
            out[..., n] = q
            if with_gradient:
                grad[..., n, :] = dq
            continue

        root2 = np.sqrt(2.0)
        c, s = cos_part[m], sin_part[m]
        out[..., n + m] = root2 * q * c
        out[..., n - m] = root2 * q * s
        if with_gradient:
            c1, s1 = cos_part[m - 1], sin_part[m - 1]
            dc = np.zeros(shape + (3,), dtype=X.dtype)
            ds = np.zeros(shape + (3,), dtype=X.dtype)
            dc[..., 0], dc[..., 1] = m * c1, -m * s1
            ds[..., 0], ds[..., 1] = m * s1, m * c1
            grad[..., n + m, :] = root2 * (dq * c[..., None] + q[..., None] * dc)
            grad[..., n - m, :] = root2 * (dq * s[..., None] + q[..., None] * ds)
    return out, grad


def basis_matrix(n, X):
    """Values of all basis functions ``Y_{n,-n} .. Y_{n,n}`` at points ``X``.

    Parameters
    ----------
    n : int
        Degree.
    X : array_like, shape (..., 3)
        Points; real or complex. Off the unit sphere the homogeneous
        (degree ``n``) extension is evaluated.

    Returns
    -------
    ndarray, shape (..., 2n+1)
    """
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    values, _ = _solid_basis(n, X, with_gradient=False)
    return values


def basis_gradient(n, X):
    """Basis values and ambient gradients of the homogeneous extensions.

    Returns
    -------
    values : ndarray, shape (..., 2n+1)
    gradients : ndarray, shape (..., 2n+1, 3)
    """
    return _solid_basis(n, X, with_gradient=True)


def basis_eval(n, j, x):
    """Value of the single basis function ``Y_{n,j}`` at ``x``."""
    if not -n <= j <= n:
        raise IndexError(f"basis index j={j} out of range for degree {n}")
    return basis_matrix(n, x)[..., j + n]


def zonal_eval(n, a, x):
    """Reproducing kernel ``(2n+1) P_n(<a, x>)`` of degree ``n``."""
    t = np.sum(np.asarray(a, dtype=float) * np.asarray(x, dtype=float), axis=-1)
    return (2 * n + 1) * legendre_eval(n, t)


@dataclass(frozen=True)
class RealHarmonic:
    """Degree ``n`` real spherical harmonic, stored by its basis coefficients.

    ``coeffs[j + n]`` multiplies ``Y_{n,j}``. The coefficient vector is made
    read-only so instances can be shared freely.
    """

    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.shape != (2 * self.degree + 1,):
            raise ValueError(
                f"degree {self.degree} needs {2 * self.degree + 1} coefficients, got shape {c.shape}"
            )
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __call__(self, x):
        return evaluate(self, x)

    def __add__(self, other):
        _check_degrees(self, other)
        return RealHarmonic(self.degree, self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_degrees(self, other)
        return RealHarmonic(self.degree, self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return RealHarmonic(self.degree, float(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self):
        return RealHarmonic(self.degree, -self.coeffs)

    @property
    def norm(self):
        """L^2 norm for the probability measure (Parseval)."""
        return float(np.linalg.norm(self.coeffs))

    @property
    def eigenvalue(self):
        return self.degree * (self.degree + 1)

    def gradient(self, x):
        return gradient_sphere(self, x)

    def normalized(self):
        return RealHarmonic(self.degree, self.coeffs / self.norm)

    def to_dict(self):
        return {"degree": self.degree, "basis": BASIS_NAME, "coeffs": [float(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data):
        basis = data.get("basis", BASIS_NAME)
        if basis != BASIS_NAME:
            raise ValueError(f"unsupported basis convention {basis!r}")
        return cls(int(data["degree"]), np.asarray(data["coeffs"], dtype=float))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    @classmethod
    def basis_vector(cls, n, j):
        c = np.zeros(2 * n + 1)
        c[j + n] = 1.0
        return cls(n, c)


def _check_degrees(u, v):
    if u.degree != v.degree:
        raise ValueError(f"degree mismatch: {u.degree} != {v.degree}")


def evaluate(u, x):
    """``sum_j coeffs_j Y_{n,j}(x)``; vectorized over leading axes of ``x``."""
    return basis_matrix(u.degree, x) @ u.coeffs


def gradient_sphere(u, x):
    """Surface gradient of ``u`` at unit vector(s) ``x``, shape (..., 3).

    Computed as the ambient gradient of the homogeneous extension, projected
    onto the tangent plane.
    """
    x = np.asarray(x, dtype=float)
    _, grads = basis_gradient(u.degree, x)
    g = np.einsum("...jk,j->...k", grads, u.coeffs)
    return g - np.sum(g * x, axis=-1, keepdims=True) * x


def zonal_harmonic(n, a):
    """The kernel section ``phi_a`` expanded in the basis (coefficients ``Y_{n,j}(a)``)."""
    return RealHarmonic(n, basis_matrix(n, unit(a)))


def power_harmonic(n, axes=(0, 1), imaginary=False):
    """Unit-norm positive multiple of ``Re`` (or ``Im``) of ``(x_p + i x_q)^n``.

    For ``axes=(0, 1)`` this is the sectoral basis vector itself, with no
    rounding in the coefficients; other planes are projected.
    """
    p, q = axes
    if (p, q) == (0, 1):
        return RealHarmonic.basis_vector(n, -n if imaginary else n)
    part = np.imag if imaginary else np.real
    u = RealHarmonic(n, project(lambda P: part((P[:, p] + 1j * P[:, q]) ** n), n).real)
    return u.normalized()


def sphere_quadrature(n):
    """Product rule exact for polynomials of degree ``<= 2n`` on the sphere.

    ``n + 1`` Gauss-Legendre nodes in ``cos theta`` times ``2n + 2`` uniform
    longitudes. Weights sum to one (probability measure).

    Returns
    -------
    points : ndarray, shape (N, 3)
    weights : ndarray, shape (N,)
    """
    t, wt = gauss_legendre(n + 1)
    nphi = 2 * n + 2
    phi = 2.0 * np.pi * np.arange(nphi) / nphi
    s = np.sqrt(1.0 - t**2)
    points = np.stack(
        [
            np.outer(s, np.cos(phi)).ravel(),
            np.outer(s, np.sin(phi)).ravel(),
            np.repeat(t, nphi),
        ],
        axis=-1,
    )
    weights = np.repeat(wt / 2.0, nphi) / nphi
    return points, weights


def project(func, n):
    """Basis coefficients ``int f Y_{n,j} d sigma`` of a vectorized function.

    Exact when ``f`` is a polynomial of degree ``<= n`` on the sphere. If
    ``f`` returns complex values the coefficients are complex.
    """
    points, weights = sphere_quadrature(n)
    values = np.asarray(func(points))
    return (weights * values) @ basis_matrix(n, points)


def inner_product(u, v):
    """``int u v d sigma`` by the exact product quadrature."""
    _check_degrees(u, v)
    points, weights = sphere_quadrature(u.degree)
    return float(np.sum(weights * evaluate(u, points) * evaluate(v, points)))


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_uniform(n, seed):
    """Uniformly distributed harmonic on the unit sphere of ``H_n``.

    ``seed`` is an int (or anything ``numpy.random.default_rng`` accepts) or a
    ``Generator``; equal seeds give identical coefficients.
    """
    g = _rng(seed).standard_normal(2 * n + 1)
    return RealHarmonic(n, g / np.linalg.norm(g))


def random_sphere_points(count, seed):
    return unit(_rng(seed).standard_normal((count, 3)))
