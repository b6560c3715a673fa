"""
Complex null cone ``z1^2 + z2^2 + z3^2 = 0`` and the poles of a harmonic.

The map ``kappa(zeta) = (2 zeta1 zeta2, zeta1^2 - zeta2^2, i(zeta1^2 + zeta2^2))``
covers the cone two-to-one. Composing a degree ``n`` harmonic with ``kappa``
gives a binary form of degree ``2n``; its ``2n`` projective roots (the poles)
determine the harmonic up to a complex factor, and ``reconstruct`` rebuilds
it from them through a ``(2n+1) x (2n+1)`` determinant of powers of bilinear
inner products.

All inner products in this module are bilinear (no complex conjugation),
except the Hermitian ``coefficient_cosine`` used to compare results.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from .harmonics import BASIS_NAME, RealHarmonic, basis_matrix, sphere_quadrature

__all__ = [
    "ComplexHarmonic",
    "BinaryForm",
    "PoleSet",
    "CoincidentPolesError",
    "ReconstructionError",
    "kappa",
    "j_map",
    "bilinear",
    "restrict_function",
    "restrict",
    "poles",
    "detcc_eval",
    "detcc_direct",
    "inner_product_identity_check",
    "reconstruct",
    "power_functions",
    "coefficient_cosine",
    "random_complex_harmonic",
    "MERGE_RADIUS",
]

#: pole representatives closer than this (projective sine distance) are one line
MERGE_RADIUS = 1e-7
# radii for grouping companion eigenvalues into candidate multiple roots;
# an m-fold root smears to about eps**(1/m), so start coarse
_CLUSTER_RADII = (1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 1e-4, 1e-5, 1e-6)
_MULTIPLE_ROOT_TOL = 1e-9
_RECONSTRUCT_TRIES = 5
_RECONSTRUCT_REL_TOL = 1e-10


class CoincidentPolesError(ValueError):
    pass


class ReconstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ComplexHarmonic:
    """``u + i v`` with ``u, v`` real harmonics of the same degree."""

    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != (2 * self.degree + 1,):
            raise ValueError(f"degree {self.degree} needs {2 * self.degree + 1} coefficients")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_real(cls, u, v=None):
        imag = np.zeros_like(u.coeffs) if v is None else v.coeffs
        if v is not None and v.degree != u.degree:
            raise ValueError("real and imaginary parts must share a degree")
        return cls(u.degree, u.coeffs + 1j * imag)

    @property
    def real(self):
        return RealHarmonic(self.degree, self.coeffs.real)

    @property
    def imag(self):
        return RealHarmonic(self.degree, self.coeffs.imag)

    @property
    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def __call__(self, z):
        """Holomorphic extension evaluated at ``z`` in ``C^3`` (any shape (..., 3))."""
        return basis_matrix(self.degree, np.asarray(z, dtype=complex)) @ self.coeffs

    def to_dict(self):
        return {"real": self.real.to_dict(), "imag": self.imag.to_dict()}

    @classmethod
    def from_dict(cls, data):
        if "real" in data:
            u = RealHarmonic.from_dict(data["real"])
            v = RealHarmonic.from_dict(data["imag"]) if "imag" in data else None
            return cls.from_real(u, v)
        return cls.from_real(RealHarmonic.from_dict(data))


@dataclass(frozen=True)
class BinaryForm:
    """``sum_i coeffs[i] zeta1^i zeta2^(d - i)``."""

    coeffs: np.ndarray

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, zeta):
        zeta = np.asarray(zeta, dtype=complex)
        i = np.arange(self.degree + 1)
        z1 = zeta[..., 0, None] ** i
        z2 = zeta[..., 1, None] ** (self.degree - i)
        return np.sum(self.coeffs * z1 * z2, axis=-1)

    @property
    def norm(self):
        return float(np.linalg.norm(self.coeffs))


@dataclass(frozen=True)
class PoleSet:
    """Distinct pole lines ``C zeta`` (unit representatives) with multiplicities."""

    roots: np.ndarray
    multiplicities: tuple

    @property
    def distinct(self):
        return all(m == 1 for m in self.multiplicities)

    @property
    def total(self):
        return int(sum(self.multiplicities))

    @property
    def representatives(self):
        """All ``2n`` representatives, repeated according to multiplicity."""
        return np.repeat(self.roots, self.multiplicities, axis=0)

    @property
    def cone_points(self):
        return kappa(self.roots)

    def to_dict(self):
        return {
            "roots": [[z[0].real, z[0].imag, z[1].real, z[1].imag] for z in self.roots.tolist()],
            "multiplicities": list(self.multiplicities),
            "distinct": self.distinct,
        }

    @classmethod
    def from_dict(cls, data):
        r = np.asarray(data["roots"], dtype=float)
        roots = np.stack([r[:, 0] + 1j * r[:, 1], r[:, 2] + 1j * r[:, 3]], axis=-1)
        mult = tuple(int(m) for m in data.get("multiplicities", [1] * len(roots)))
        return cls(roots, mult)


def kappa(zeta):
    """Parametrization of the null cone, vectorized over leading axes."""
    zeta = np.asarray(zeta, dtype=complex)
    z1, z2 = zeta[..., 0], zeta[..., 1]
    return np.stack([2 * z1 * z2, z1**2 - z2**2, 1j * (z1**2 + z2**2)], axis=-1)


def j_map(zeta):
    """``(zeta1, zeta2) -> (-zeta2, zeta1)``."""
    zeta = np.asarray(zeta, dtype=complex)
    return np.stack([-zeta[..., 1], zeta[..., 0]], axis=-1)


def bilinear(a, b):
    return np.sum(np.asarray(a) * np.asarray(b), axis=-1)


def _unit_nodes(d):
    # roots of unity: the Vandermonde system on them is a DFT
    return np.exp(2j * np.pi * np.arange(d + 1) / (d + 1))


def restrict_function(func, n, transform=None):
    """Binary form ``func o kappa`` for a homogeneous polynomial of degree ``n``.

    ``func`` takes points of shape (N, 3) (complex) and returns N values.
    ``transform``, a 2x2 matrix ``U``, restricts ``func o kappa o U`` instead.
    """
    d = 2 * n
    w = _unit_nodes(d)
    zeta = np.stack([w, np.ones_like(w)], axis=-1)
    if transform is not None:
        zeta = zeta @ np.asarray(transform).T
    values = np.asarray(func(kappa(zeta)), dtype=complex)
    return BinaryForm(np.fft.fft(values) / (d + 1))


def restrict(p):
    """Binary form ``p o kappa`` of degree ``2n`` for a complex harmonic ``p``."""
    return restrict_function(p, p.degree)


def _random_su2(rng):
    q = rng.standard_normal(4)
    q /= np.linalg.norm(q)
    a, b = q[0] + 1j * q[1], q[2] + 1j * q[3]
    return np.array([[a, b], [-np.conj(b), np.conj(a)]])


def _projective_distance(u, v):
    u = u / np.linalg.norm(u, axis=-1, keepdims=True)
    v = v / np.linalg.norm(v, axis=-1, keepdims=True)
    overlap = np.abs(np.sum(u * np.conj(v), axis=-1))
    return np.sqrt(np.clip(1.0 - overlap**2, 0.0, None))


def _taylor(coeffs, c, order):
    """Taylor coefficients ``g^(j)(c)/j!``, ``j < order``, by repeated synthetic
    division; ``coeffs`` ascending."""
    out = []
    work = np.array(coeffs[::-1], dtype=complex)  # descending
    for _ in range(order):
        acc = np.empty_like(work)
        acc[0] = work[0]
        for i in range(1, len(work)):
            acc[i] = acc[i - 1] * c + work[i]
        out.append(acc[-1])
        work = acc[:-1]
        if len(work) == 0:
            break
    return np.array(out)


def _is_multiple_root(coeffs, c, m):
    taylor = _taylor(coeffs, c, m)
    i = np.arange(len(coeffs))
    absc = np.abs(coeffs)
    for j, t in enumerate(taylor):
        scale = np.sum(np.array([comb(int(k), j) for k in i]) * absc * np.abs(c) ** np.clip(i - j, 0, None))
        if abs(t) > _MULTIPLE_ROOT_TOL * scale:
            return False
    return True


def _single_linkage(points, radius):
    k = len(points)
    labels = np.arange(k)
    dist = _projective_distance(points[:, None, :], points[None, :, :])
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(i + 1, k):
                if dist[i, j] < radius and labels[i] != labels[j]:
                    lo, hi = sorted((labels[i], labels[j]))
                    labels[labels == hi] = lo
                    changed = True
    return [np.flatnonzero(labels == lab) for lab in np.unique(labels)]


def _polish(coeffs, x, iters=8):
    desc = coeffs[::-1]
    ddesc = np.polyder(desc)
    best, best_res = x, abs(np.polyval(desc, x))
    for _ in range(iters):
        dp = np.polyval(ddesc, x)
        if dp == 0:
            break
        x = x - np.polyval(desc, x) / dp
        res = abs(np.polyval(desc, x))
        if res < best_res:
            best, best_res = x, res
    return best


def _canonical_phase(zeta):
    zeta = zeta / np.linalg.norm(zeta)
    k = int(np.argmax(np.abs(zeta)))
    return zeta * (np.abs(zeta[k]) / zeta[k])


def poles(p, seed=0):
    """Projective roots of ``p o kappa`` with multiplicities.

    A random SU(2) change of coordinates (seeded) keeps the roots away from
    infinity; the dehomogenized polynomial is solved through the eigenvalues
    of its companion matrix, simple roots are Newton-polished, and clusters
    of eigenvalues that form a genuine multiple root are replaced by their
    centroid.
    """
    if not np.any(p.coeffs):
        raise ValueError("the zero harmonic has no poles")
    d = 2 * p.degree
    rng = np.random.default_rng(seed)
    U = _random_su2(rng)
    g = restrict_function(p, p.degree, transform=U).coeffs  # ascending in eta1

    lead = g[-1]
    companion = np.zeros((d, d), dtype=complex)
    companion[1:, :-1] = np.eye(d - 1)
    companion[:, -1] = -g[:-1] / lead
    x = np.linalg.eigvals(companion)

    eta = np.stack([x, np.ones_like(x)], axis=-1)
    unassigned = np.ones(d, dtype=bool)
    lines, mult = [], []
    for radius in _CLUSTER_RADII:
        idx = np.flatnonzero(unassigned)
        if len(idx) < 2:
            break
        for group in _single_linkage(eta[idx], radius):
            if len(group) < 2:
                continue
            members = idx[group]
            centre = np.mean(x[members])
            if _is_multiple_root(g, centre, len(members)):
                lines.append(centre)
                mult.append(len(members))
                unassigned[members] = False
    for i in np.flatnonzero(unassigned):
        lines.append(_polish(g, x[i]))
        mult.append(1)

    zeta = np.array([_canonical_phase(U @ np.array([xi, 1.0])) for xi in lines])

    # final merge of representatives that coincide projectively
    merged_roots, merged_mult = [], []
    for z, m in zip(zeta, mult):
        for k, r in enumerate(merged_roots):
            if _projective_distance(z, r) < MERGE_RADIUS:
                merged_mult[k] += m
                break
        else:
            merged_roots.append(z)
            merged_mult.append(m)
    order = np.lexsort((np.angle(np.array(merged_roots)[:, 1]), np.angle(np.array(merged_roots)[:, 0])))
    roots = np.array(merged_roots)[order]
    return PoleSet(roots, tuple(int(merged_mult[i]) for i in order))


def detcc_direct(avec, bvec, k):
    """Brute-force ``det(<a_r, b_s>^k)``."""
    return complex(np.linalg.det(bilinear(np.asarray(avec)[:, None, :], np.asarray(bvec)[None, :, :]) ** k))


def detcc_eval(avec, bvec, k):
    """Closed form of ``det(<a_r, b_s>^k)_{r,s=0..k}`` for ``a_r, b_s`` in ``C^2``.

    Equals ``prod_r C(k, r) * prod_{s<r} <a_r, j a_s> * prod_{s<r} <b_r, j b_s>``.
    """
    a = np.asarray(avec, dtype=complex)
    b = np.asarray(bvec, dtype=complex)
    if a.shape != (k + 1, 2) or b.shape != (k + 1, 2):
        raise ValueError(f"need {k + 1} vectors in C^2 on each side")
    value = complex(1.0)
    for r in range(1, k + 1):
        value *= comb(k, r)
        for s in range(r):
            value *= _jpair(a[r], a[s]) * _jpair(b[r], b[s])
    return value


def _jpair(x, y):
    # <x, j y> with python scalars: vectorized complex products may fuse
    # multiply-adds and break the exact antisymmetry
    x0, x1, y0, y1 = (complex(c) for c in (x[0], x[1], y[0], y[1]))
    return x1 * y0 - x0 * y1


def inner_product_identity_check(a, b):
    """``(<kappa a, kappa b>, -2 <a, j b>^2)``; the two agree identically."""
    lhs = complex(bilinear(kappa(a), kappa(b)))
    rhs = complex(-2.0 * bilinear(a, j_map(b)) ** 2)
    return lhs, rhs


def power_functions(nodes, n):
    """Basis coefficients of ``x -> <x, w>^n`` for each row ``w`` of ``nodes``.

    Harmonic whenever ``w`` lies on the null cone; the quadrature projection
    is exact for any ``w`` since the integrand has degree ``2n``.
    """
    points, weights = sphere_quadrature(n)
    values = (points @ np.asarray(nodes, dtype=complex).T) ** n
    return (weights[:, None] * values).T @ basis_matrix(n, points)


def _last_row_cofactors(top):
    k = top.shape[0]
    cof = np.empty(k + 1, dtype=complex)
    for j in range(k + 1):
        cof[j] = (-1) ** (k + j) * np.linalg.det(np.delete(top, j, axis=1))
    return cof


def reconstruct(poleset, n, seed=0):
    """Harmonic (up to a complex factor) with the given ``2n`` distinct poles.

    Expands ``det [[<a_r, a_s>^n, <a_r, y>^n], [<x, a_s>^n, <x, y>^n]]`` along
    its last row for a generic ``y = kappa(eta)`` on the cone.

    Raises
    ------
    CoincidentPolesError
        If any pole line is repeated.
    ReconstructionError
        If five random choices of ``y`` all give a degenerate expansion.
    """
    if not poleset.distinct:
        raise CoincidentPolesError(f"pole lines must be distinct, multiplicities {poleset.multiplicities}")
    if poleset.total != 2 * n:
        raise ValueError(f"degree {n} needs {2 * n} poles, got {poleset.total}")
    a = kappa(poleset.roots)
    powers_a = power_functions(a, n)
    rng = np.random.default_rng(seed)
    for _ in range(_RECONSTRUCT_TRIES):
        eta = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        y = kappa(eta / np.linalg.norm(eta))
        nodes = np.vstack([a, y])
        top = bilinear(a[:, None, :], nodes[None, :, :]) ** n
        cof = _last_row_cofactors(top)
        powers = np.vstack([powers_a, power_functions(y[None, :], n)])
        coeffs = cof @ powers
        scale = np.sum(np.abs(cof) * np.linalg.norm(powers, axis=1))
        if np.linalg.norm(coeffs) > _RECONSTRUCT_REL_TOL * scale:
            return ComplexHarmonic(n, coeffs)
    raise ReconstructionError(f"no generic cone point found in {_RECONSTRUCT_TRIES} tries")


def coefficient_cosine(p, q):
    """``|<p, q>| / (|p| |q|)`` with the Hermitian product on coefficients."""
    pc, qc = np.asarray(getattr(p, "coeffs", p)), np.asarray(getattr(q, "coeffs", q))
    return float(abs(np.vdot(pc, qc)) / (np.linalg.norm(pc) * np.linalg.norm(qc)))


def random_complex_harmonic(n, seed):
    rng = np.random.default_rng(seed)
    return ComplexHarmonic(n, rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1))
