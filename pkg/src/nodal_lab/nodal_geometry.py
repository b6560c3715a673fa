"""
Nodal curves of spherical harmonics on S^2 and their geometry.

Nodal sets are extracted by marching triangles on an icosphere and snapped
onto the curve by a few Newton steps. Length is measured on the resulting
polylines and, independently, by the Crofton formula on S^2::

    length(N_u) = pi * E[#(N_u intersected with a random great circle)]

Common zeros of two harmonics are located by two-dimensional Newton
iterations seeded from triangles where both functions change sign.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.spatial import cKDTree

from .harmonics import RealHarmonic, basis_gradient, basis_matrix, evaluate, gradient_sphere, project, unit
from .legendre import gauss_legendre
from .mesh import icosphere, level_for_degree
from .parallel import ordered_map

__all__ = [
    "NodalCurveSet",
    "GreatCircle",
    "CroftonResult",
    "CommonZeros",
    "CrossingCountError",
    "BezoutViolation",
    "ZonalHarmonicError",
    "trace_nodal",
    "nodal_length",
    "crossing_counts",
    "circle_crossings",
    "crofton_length",
    "inner_radius",
    "common_zeros",
    "rotation_derivative",
    "critical_points",
    "two_points_per_component_check",
    "green_residual",
    "sign_changes_on_components",
]

REGULAR_GRADIENT_TOL = 1e-4
CRITICAL_GRADIENT_TOL = 1e-6
SINGULAR_JACOBIAN_TOL = 1e-5
DEDUPE_RADIUS = 1e-6
_CROFTON_CHUNK = 500
_BISECTION_TOL = 1e-10
_CLUSTER_GAP = 1e-2
_CLUSTER_RADIUS = 0.05
_CLUSTER_MARGIN = 2e-3
_CLUSTER_SAMPLES = 1024
_REFINE_LEVELS = 10
_REFINE_MAX_CELLS = 200_000


class CrossingCountError(RuntimeError):
    """A great circle met the nodal set more than ``2n`` times."""


class BezoutViolation(RuntimeError):
    """More isolated regular common zeros than Bezout allows."""


class ZonalHarmonicError(ValueError):
    """The harmonic is a multiple of a zonal one; its critical set is not finite."""


def _mesh(mesh, n):
    if mesh is None:
        return icosphere(level_for_degree(n))
    if isinstance(mesh, (int, np.integer)):
        return icosphere(int(mesh))
    return mesh


def _geodesic(x, y):
    return 2.0 * np.arcsin(np.clip(np.linalg.norm(x - y, axis=-1) / 2.0, 0.0, 1.0))


@dataclass(frozen=True)
class NodalCurveSet:
    """Closed polylines (cyclic vertex arrays) approximating ``N_u``."""

    components: tuple
    regular: bool
    min_gradient: float = float("nan")

    def __len__(self):
        return len(self.components)

    @property
    def lengths(self):
        return [float(np.sum(_geodesic(c, np.roll(c, -1, axis=0)))) for c in self.components]

    def to_dict(self):
        return {"components": [c.tolist() for c in self.components], "regular": self.regular}

    def to_csv(self):
        lines = ["component,vertex,x,y,z"]
        for i, c in enumerate(self.components):
            for j, p in enumerate(c):
                x, y, z = (float(c) for c in p)
                lines.append(f"{i},{j},{x!r},{y!r},{z!r}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GreatCircle:
    e1: np.ndarray
    e2: np.ndarray

    def __post_init__(self):
        e1 = unit(self.e1)
        e2 = np.asarray(self.e2, dtype=float)
        e2 = unit(e2 - np.dot(e2, e1) * e1)
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)[..., None]
        return np.cos(t) * self.e1 + np.sin(t) * self.e2


def _surface_values_and_gradients(u, X):
    values, grads = basis_gradient(u.degree, X)
    f = values @ u.coeffs
    g = np.einsum("...jk,j->...k", grads, u.coeffs)
    g = g - np.sum(g * X, axis=-1, keepdims=True) * X
    return f, g


def _snap(u, X, steps, max_step):
    for _ in range(steps):
        f, g = _surface_values_and_gradients(u, X)
        g2 = np.sum(g * g, axis=-1)
        step = -np.divide(f, g2, out=np.zeros_like(f), where=g2 > 0)[:, None] * g
        size = np.linalg.norm(step, axis=-1, keepdims=True)
        step *= np.minimum(1.0, max_step / np.maximum(size, 1e-300))
        X = unit(X + step)
    return X


def _stitch(neighbours):
    count = len(neighbours)
    visited = np.zeros(count, dtype=bool)
    loops = []
    for start in range(count):
        if visited[start]:
            continue
        loop = [start]
        visited[start] = True
        prev, cur = -1, start
        while True:
            a, b = neighbours[cur]
            nxt = a if a != prev else b
            if nxt == start or visited[nxt]:
                break
            visited[nxt] = True
            loop.append(nxt)
            prev, cur = cur, nxt
        loops.append(loop)
    return loops


def trace_nodal(u, mesh=None, newton_steps=3):
    """Nodal set of ``u`` as closed polylines on the sphere.

    Parameters
    ----------
    u : RealHarmonic
        Nonzero harmonic.
    mesh : SphereMesh or int, optional
        Triangulation or icosphere level; default from the degree
        (edge length at most ``0.2 / n``, level at least 6).
    newton_steps : int
        Snapping steps applied to every polyline vertex.

    Returns
    -------
    NodalCurveSet
        ``regular`` is False when some snapped vertex has
        ``|grad u| < 1e-4 |u| sqrt(lambda_n)``.
    """
    if not np.any(u.coeffs):
        raise ValueError("the zero harmonic has no nodal curve")
    mesh = _mesh(mesh, u.degree)
    V = mesh.vertices
    f = evaluate(u, V)
    positive = f >= 0.0
    e0, e1 = mesh.edges[:, 0], mesh.edges[:, 1]
    crossing = positive[e0] != positive[e1]
    edge_ids = np.flatnonzero(crossing)
    if len(edge_ids) == 0:
        return NodalCurveSet((), True)
    local = np.full(len(mesh.edges), -1)
    local[edge_ids] = np.arange(len(edge_ids))

    f0, f1 = f[e0[edge_ids]], f[e1[edge_ids]]
    s = (f0 / (f0 - f1))[:, None]
    X = unit(V[e0[edge_ids]] + s * (V[e1[edge_ids]] - V[e0[edge_ids]]))

    tri_cross = crossing[mesh.triangle_edges]
    active = np.flatnonzero(tri_cross.sum(axis=1) == 2)
    te = mesh.triangle_edges[active]
    tc = tri_cross[active]
    pairs = np.array([local[row[mask]] for row, mask in zip(te, tc)])
    ids = np.concatenate([pairs[:, 0], pairs[:, 1]])
    others = np.concatenate([pairs[:, 1], pairs[:, 0]])
    order = np.argsort(ids, kind="stable")
    neighbours = others[order].reshape(-1, 2)

    X = _snap(u, X, newton_steps, max_step=mesh.edge_length)
    _, g = _surface_values_and_gradients(u, X)
    grad_norm = np.linalg.norm(g, axis=-1)
    threshold = REGULAR_GRADIENT_TOL * u.norm * np.sqrt(u.eigenvalue)
    min_grad = float(grad_norm.min())
    components = tuple(X[loop] for loop in _stitch(neighbours))
    return NodalCurveSet(components, bool(min_grad >= threshold), min_grad)


def nodal_length(curves):
    """Total geodesic length of the closed polylines."""
    return float(sum(curves.lengths))


def _circle_points(e1, e2, t):
    return np.cos(t)[..., None] * e1[:, None, :] + np.sin(t)[..., None] * e2[:, None, :]


def _companion_roots(coeffs):
    """Roots of each row of ascending ``coeffs`` (batched companion eigenvalues)."""
    count, size = coeffs.shape
    d = size - 1
    lead = coeffs[:, -1]
    scale = np.max(np.abs(coeffs), axis=1)
    good = np.abs(lead) > 1e-13 * scale
    roots = np.full((count, d), np.nan + 0j)
    if np.any(good):
        comp = np.zeros((int(good.sum()), d, d), dtype=complex)
        comp[:, 1:, :-1] = np.eye(d - 1)
        comp[:, :, -1] = -coeffs[good, :-1] / lead[good, None]
        roots[good] = np.linalg.eigvals(comp)
    for i in np.flatnonzero(~good):
        r = np.roots(coeffs[i, ::-1])
        roots[i, : len(r)] = r
    return roots


def _trig_eval(coeffs, t):
    """Evaluate rows of ``sum_k c_k e^{ikt}`` (``k = -n..n``) at angles ``t``."""
    n = (coeffs.shape[-1] - 1) // 2
    z = np.exp(1j * t)[..., None] ** np.arange(-n, n + 1)
    return np.sum(coeffs * z, axis=-1).real


def _sign_change_angles(u, e1, e2, t, refine, coeffs):
    """Cyclic sign changes along rows of sorted sample angles ``t``.

    Signs come from direct evaluation of ``u``; the bisection uses the
    trigonometric polynomial ``coeffs`` of each row.
    """
    f = evaluate(u, _circle_points(e1, e2, t))
    pos = f >= 0.0
    t_next = np.concatenate([t[:, 1:], t[:, :1] + 2.0 * np.pi], axis=1)
    change = pos != np.roll(pos, -1, axis=1)
    rows, cols = np.nonzero(change)
    lo, hi = t[rows, cols], t_next[rows, cols]
    if refine and len(rows):
        pos_lo = pos[rows, cols]
        while np.max(hi - lo) > _BISECTION_TOL:
            mid = 0.5 * (lo + hi)
            pm = _trig_eval(coeffs[rows], mid) >= 0.0
            same = pm == pos_lo
            lo = np.where(same, mid, lo)
            hi = np.where(same, hi, mid)
    angles = np.mod(0.5 * (lo + hi), 2.0 * np.pi)
    return np.split(angles, np.searchsorted(rows, np.arange(1, len(t))))


def _cluster_windows(roots):
    """Angular windows around close pairs of root arguments.

    Only roots near the unit circle count: the others come in pairs
    ``z, 1/conj(z)`` with equal arguments.
    """
    roots = roots[np.isfinite(roots)]
    near = np.abs(np.abs(roots) - 1.0) < _CLUSTER_RADIUS
    theta = np.sort(np.mod(np.angle(roots[near]), 2.0 * np.pi))
    windows = []
    if len(theta) < 2:
        return windows
    gaps = np.diff(np.concatenate([theta, theta[:1] + 2.0 * np.pi]))
    close = gaps < _CLUSTER_GAP
    if not np.any(close):
        return windows
    for i in np.flatnonzero(close):
        a, b = theta[i], theta[i] + gaps[i]
        windows.append((a - _CLUSTER_MARGIN, b + _CLUSTER_MARGIN))
    return windows


def circle_crossings(u, e1, e2, refine=True):
    """Crossing angles of ``N_u`` with great circles ``cos t e1 + sin t e2``.

    The restriction to a great circle is a trigonometric polynomial of degree
    ``n``. It is sampled on a ``16n`` grid augmented by midpoints between the
    arguments of its ``2n`` complex roots; circles whose roots cluster (the
    circle passes near a singular point of ``N_u``) get a dense local grid
    over each cluster. Sign changes are counted cyclically and each is
    refined by bisection to ``1e-10``.

    Returns
    -------
    list of ndarray
        Crossing angles per circle.

    Raises
    ------
    CrossingCountError
        If some circle shows more than ``2n`` sign changes.
    """
    e1 = np.atleast_2d(e1)
    e2 = np.atleast_2d(e2)
    n = u.degree
    m = 16 * n
    grid = 2.0 * np.pi * np.arange(m) / m
    vals = evaluate(u, _circle_points(e1, e2, np.broadcast_to(grid, (len(e1), m))))
    c = np.fft.fft(vals, axis=1) / m
    k = np.arange(-n, n + 1)
    coeffs = c[:, k % m]
    roots = _companion_roots(coeffs)
    theta = np.sort(np.where(np.isnan(roots), 0.0, np.mod(np.angle(roots), 2.0 * np.pi)), axis=1)
    nxt = np.concatenate([theta[:, 1:], theta[:, :1] + 2.0 * np.pi], axis=1)
    mids = np.mod(0.5 * (theta + nxt), 2.0 * np.pi)
    t = np.sort(np.concatenate([np.broadcast_to(grid, (len(e1), m)), mids], axis=1), axis=1)
    out = _sign_change_angles(u, e1, e2, t, refine, coeffs)

    for i in range(len(e1)):
        windows = _cluster_windows(roots[i])
        if not windows:
            continue
        local = [np.linspace(a, b, _CLUSTER_SAMPLES) for a, b in windows]
        ti = np.unique(np.mod(np.concatenate([t[i]] + local), 2.0 * np.pi))
        out[i] = _sign_change_angles(u, e1[i : i + 1], e2[i : i + 1], ti[None, :], refine, coeffs[i : i + 1])[0]

    for i, a in enumerate(out):
        if len(a) > 2 * n:
            raise CrossingCountError(f"circle {i} crosses the nodal set {len(a)} > 2n = {2 * n} times")
    return out


def crossing_counts(u, e1, e2, refine=True):
    return np.array([len(a) for a in circle_crossings(u, e1, e2, refine)])


def random_great_circles(count, seed):
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    g = rng.standard_normal((count, 2, 3))
    e1 = unit(g[:, 0])
    e2 = unit(g[:, 1] - np.sum(g[:, 1] * e1, axis=1, keepdims=True) * e1)
    return e1, e2


class CroftonResult(NamedTuple):
    estimate: float
    stderr: float


def crofton_length(u, num_circles=10_000, seed=0, refine=True):
    """Nodal length from crossings with uniformly random great circles.

    ``estimate = pi * mean(count)``; ``stderr`` is the standard error of that
    mean. Circles are drawn up front from ``seed`` and processed in chunks,
    so the result does not depend on the thread count.
    """
    if num_circles < 100:
        raise ValueError("use at least 100 circles")
    e1, e2 = random_great_circles(num_circles, seed)
    chunks = [slice(i, i + _CROFTON_CHUNK) for i in range(0, num_circles, _CROFTON_CHUNK)]
    counts = np.concatenate(ordered_map(lambda s: crossing_counts(u, e1[s], e2[s], refine), chunks))
    mean = np.pi * counts.mean()
    stderr = np.pi * counts.std(ddof=1) / np.sqrt(num_circles)
    return CroftonResult(float(mean), float(stderr))


def _densify(component, spacing):
    nxt = np.roll(component, -1, axis=0)
    theta = _geodesic(component, nxt)
    pieces = []
    for x, y, th in zip(component, nxt, theta):
        k = max(1, int(np.ceil(th / spacing)))
        s = np.arange(k)[:, None] / k
        pieces.append(unit((1 - s) * x + s * y))
    return np.vstack(pieces)


def inner_radius(u, mesh=None, curves=None):
    """Largest distance from a mesh vertex to the traced nodal set.

    A lower approximation of the inner radius, accurate to about the mesh
    edge length.
    """
    mesh = _mesh(mesh, u.degree)
    if curves is None:
        curves = trace_nodal(u, mesh)
    if len(curves) == 0:
        raise ValueError("no nodal curve traced")
    pts = np.vstack([_densify(c, mesh.edge_length / 8.0) for c in curves.components])
    chord, _ = cKDTree(pts).query(mesh.vertices)
    return float(np.max(2.0 * np.arcsin(np.clip(chord / 2.0, 0.0, 1.0))))


@dataclass(frozen=True)
class CommonZeros:
    """Common zeros with near-singular flags and cells where Newton failed."""

    points: np.ndarray
    singular: np.ndarray
    unresolved: np.ndarray

    @property
    def count(self):
        return int(len(self.points))

    @property
    def regular_count(self):
        return int(np.sum(~self.singular))

    @property
    def clean(self):
        """No near-singular zero and no unresolved cell."""
        return not np.any(self.singular) and len(self.unresolved) == 0

    def to_dict(self):
        return {
            "count": self.count,
            "points": self.points.tolist(),
            "singular": [bool(s) for s in self.singular],
            "unresolved": self.unresolved.tolist(),
        }


def _tangent_frame(X):
    axis = np.zeros_like(X)
    axis[np.arange(len(X)), np.argmin(np.abs(X), axis=1)] = 1.0
    t1 = unit(np.cross(X, axis))
    t2 = np.cross(X, t1)
    return t1, t2


def _newton_pair(u, v, X, max_step, maxiter=100):
    X = X.copy()
    su, sv = u.norm, v.norm
    done = np.zeros(len(X), dtype=bool)
    for _ in range(maxiter):
        act = np.flatnonzero(~done)
        if len(act) == 0:
            break
        Y = X[act]
        fu, gu = _surface_values_and_gradients(u, Y)
        fv, gv = _surface_values_and_gradients(v, Y)
        small = np.abs(fu) / su + np.abs(fv) / sv < 1e-14
        t1, t2 = _tangent_frame(Y)
        a, b = np.sum(gu * t1, 1), np.sum(gu * t2, 1)
        c, d = np.sum(gv * t1, 1), np.sum(gv * t2, 1)
        det = a * d - b * c
        ok = det != 0
        safe = np.where(ok, det, 1.0)
        d1 = np.where(ok, -(d * fu - b * fv) / safe, 0.0)
        d2 = np.where(ok, -(-c * fu + a * fv) / safe, 0.0)
        size = np.hypot(d1, d2)
        shrink = np.minimum(1.0, max_step / np.maximum(size, 1e-300))
        step = (d1 * shrink)[:, None] * t1 + (d2 * shrink)[:, None] * t2
        X[act] = np.where(small[:, None], Y, unit(Y + step))
        done[act] = small | (size < 1e-12)
    fu, _ = _surface_values_and_gradients(u, X)
    fv, _ = _surface_values_and_gradients(v, X)
    converged = np.abs(fu) / su + np.abs(fv) / sv < 1e-9
    return X, converged


def _jacobian_smin(u, v, X):
    _, gu = _surface_values_and_gradients(u, X)
    _, gv = _surface_values_and_gradients(v, X)
    gu = gu / (u.norm * np.sqrt(u.eigenvalue))
    gv = gv / (v.norm * np.sqrt(v.eigenvalue))
    J = np.stack([gu, gv], axis=1)  # (k, 2, 3); rows lie in the tangent plane
    return np.linalg.svd(J, compute_uv=False)[:, -1]


def _both_change(u, v, tris):
    fu = evaluate(u, tris.reshape(-1, 3)).reshape(-1, 3) >= 0.0
    fv = evaluate(v, tris.reshape(-1, 3)).reshape(-1, 3) >= 0.0
    return (fu.any(1) & ~fu.all(1)) & (fv.any(1) & ~fv.all(1))


def _refine_cells(u, v, tris, edge):
    """Subdivide cells where no seed converged nearby.

    Subtriangles are kept while both functions still change sign on them.
    Survivors at the finest level are seeded again; those whose Newton run
    fails are reported as unresolved.
    """
    for _ in range(_REFINE_LEVELS):
        if len(tris) == 0 or len(tris) > _REFINE_MAX_CELLS:
            break
        a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
        ab, bc, ca = unit(a + b), unit(b + c), unit(c + a)
        sub = np.concatenate(
            [np.stack(t, axis=1) for t in ((a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca))]
        )
        tris = sub[_both_change(u, v, sub)]
        edge = edge / 2.0
    if len(tris) == 0:
        return np.zeros((0, 3)), np.zeros((0, 3))
    centroid = unit(tris.mean(axis=1))
    X, conv = _newton_pair(u, v, centroid, max_step=edge)
    return X[conv], centroid[~conv]


def common_zeros(u, v, mesh=None):
    """Common zeros of ``u`` and ``v`` on the sphere.

    Candidate triangles are those where both functions change sign. Each is
    seeded at its centroid and three interior points; Newton runs in the
    tangent plane with renormalization after every step. Zeros closer than
    ``1e-6`` are merged; near-singular zeros (smallest singular value of the
    normalized Jacobian below ``1e-5``) are flagged, and merged within one
    mesh edge since Newton only converges linearly there.

    Raises
    ------
    BezoutViolation
        If there are no flags or unresolved cells and more than
        ``2 n_u n_v`` zeros were found.
    """
    if not np.any(u.coeffs) or not np.any(v.coeffs):
        raise ValueError("common zeros need nonzero harmonics")
    mesh = _mesh(mesh, max(u.degree, v.degree))
    V, T = mesh.vertices, mesh.triangles
    pu = (evaluate(u, V) >= 0.0)[T]
    pv = (evaluate(v, V) >= 0.0)[T]
    cand = np.flatnonzero((pu.any(1) & ~pu.all(1)) & (pv.any(1) & ~pv.all(1)))
    if len(cand) == 0:
        return CommonZeros(np.zeros((0, 3)), np.zeros(0, dtype=bool), np.zeros((0, 3)))

    corners = V[T[cand]]  # (c, 3, 3)
    centroid = unit(corners.mean(axis=1))
    seeds = np.concatenate([centroid[:, None, :], unit(0.5 * (corners + centroid[:, None, :]))], axis=1)
    X, conv = _newton_pair(u, v, seeds.reshape(-1, 3), max_step=mesh.edge_length)
    X = X.reshape(len(cand), 4, 3)
    conv = conv.reshape(len(cand), 4)
    near = _geodesic(X, centroid[:, None, :]) < 1.5 * mesh.edge_length
    found = X[conv]
    doubtful = ~np.any(conv & near, axis=1)
    if np.any(doubtful):
        extra, unresolved = _refine_cells(u, v, corners[doubtful], mesh.edge_length)
        found = np.vstack([found, extra])
    else:
        unresolved = np.zeros((0, 3))

    if len(found) == 0:
        return CommonZeros(np.zeros((0, 3)), np.zeros(0, dtype=bool), unresolved)
    smin = _jacobian_smin(u, v, found)
    singular = smin < SINGULAR_JACOBIAN_TOL
    residual = np.abs(evaluate(u, found)) / u.norm + np.abs(evaluate(v, found)) / v.norm
    order = np.lexsort((residual, ~singular))  # regular first, then by residual
    keep_pts, keep_sing = [], []
    for i in order:
        x = found[i]
        dup = False
        for y, sy in zip(keep_pts, keep_sing):
            radius = mesh.edge_length if (sy or singular[i]) else DEDUPE_RADIUS
            if _geodesic(x, y) < radius:
                dup = True
                break
        if not dup:
            keep_pts.append(x)
            keep_sing.append(bool(singular[i]))
    pts = np.array(keep_pts)
    sing = np.array(keep_sing, dtype=bool)
    # canonical order for reproducible output
    idx = np.lexsort((pts[:, 2], pts[:, 1], pts[:, 0]))
    result = CommonZeros(pts[idx], sing[idx], unresolved)
    bound = 2 * u.degree * v.degree
    if result.clean and result.count > bound:
        raise BezoutViolation(f"{result.count} regular common zeros exceed 2*{u.degree}*{v.degree} = {bound}")
    return result


def rotation_derivative(u, axis):
    """``xi u`` for the rotation field ``x -> axis x x``; again a harmonic of degree n."""
    axis = np.asarray(axis, dtype=float)

    def field_derivative(P):
        _, grads = basis_gradient(u.degree, P)
        g = np.einsum("...jk,j->...k", grads, u.coeffs)
        return np.sum(g * np.cross(axis, P), axis=-1)

    return RealHarmonic(u.degree, project(field_derivative, u.degree).real)


def _is_zonal(u):
    d = np.array([rotation_derivative(u, e).coeffs for e in np.eye(3)])
    sv = np.linalg.svd(d, compute_uv=False)
    return sv[-1] < 1e-8 * max(sv[0], 1e-300)


def critical_points(u, mesh=None, seed=0):
    """Critical points of ``u`` as common zeros of two rotation derivatives.

    The two rotation axes are drawn at random from ``seed`` (redrawn if a
    derivative vanishes identically). Points where the two fields are
    parallel can be spurious common zeros; every returned point is checked
    to satisfy ``|grad u| < 1e-6 |u| sqrt(lambda_n)``.

    Raises
    ------
    ZonalHarmonicError
        For ``n >= 2`` multiples of zonal harmonics, whose critical set
        contains whole circles.
    """
    n = u.degree
    if n >= 2 and _is_zonal(u):
        raise ZonalHarmonicError("u is a multiple of a zonal harmonic: critical points form circles")
    rng = np.random.default_rng(seed)
    scale = u.norm * np.sqrt(u.eigenvalue)
    for _ in range(10):
        axes = unit(rng.standard_normal((2, 3)))
        xi, eta = rotation_derivative(u, axes[0]), rotation_derivative(u, axes[1])
        if xi.norm > 1e-8 * scale and eta.norm > 1e-8 * scale:
            break
    else:
        raise ZonalHarmonicError("rotation derivatives vanish for every axis tried")
    zeros = common_zeros(xi, eta, mesh)
    if zeros.count == 0:
        return zeros
    grad = np.linalg.norm(gradient_sphere(u, zeros.points), axis=-1)
    keep = grad < CRITICAL_GRADIENT_TOL * scale
    return CommonZeros(zeros.points[keep], zeros.singular[keep], zeros.unresolved)


def sign_changes_on_components(curves, v):
    """Cyclic sign changes of ``v`` along each traced component."""
    out = []
    for c in curves.components:
        s = evaluate(v, c) >= 0.0
        out.append(int(np.sum(s != np.roll(s, -1))))
    return out


def two_points_per_component_check(u, v, mesh=None, curves=None):
    """True iff ``v`` changes sign at least twice along every component of ``N_u``."""
    if curves is None:
        curves = trace_nodal(u, mesh)
    if not curves.regular:
        raise ValueError("u is not regular at this mesh resolution")
    return all(k >= 2 for k in sign_changes_on_components(curves, v))


def green_residual(u, v, mesh=None, curves=None):
    """Normalized ``max_C |int_C v du/dn ds|`` over components ``C`` of ``N_u``.

    The normal is ``grad u / |grad u|``, so the integrand is ``v |grad u|``.
    Each polyline arc is integrated along the great-circle arc with
    three-point Gauss-Legendre. The normalizer is
    ``length(C) * |v| * mean_C |grad u|`` with ``|v|`` the L^2 norm.
    """
    if curves is None:
        curves = trace_nodal(u, mesh)
    if not curves.regular:
        raise ValueError("u is not regular at this mesh resolution")
    s, w = gauss_legendre(3)
    s = 0.5 * (s + 1.0)
    w = 0.5 * w
    worst = 0.0
    for c in curves.components:
        nxt = np.roll(c, -1, axis=0)
        theta = _geodesic(c, nxt)
        sin_t = np.sin(theta)
        safe = np.where(sin_t > 0, sin_t, 1.0)
        a = np.where(sin_t[:, None] > 0, np.sin((1 - s)[None, :] * theta[:, None]) / safe[:, None], 1 - s)
        b = np.where(sin_t[:, None] > 0, np.sin(s[None, :] * theta[:, None]) / safe[:, None], s)
        P = unit(a[..., None] * c[:, None, :] + b[..., None] * nxt[:, None, :])
        grad = np.linalg.norm(gradient_sphere(u, P), axis=-1)
        vals = evaluate(v, P)
        ds = theta[:, None] * w[None, :]
        integral = np.sum(vals * grad * ds)
        length = np.sum(theta)
        mean_grad = np.sum(grad * ds) / length
        worst = max(worst, abs(integral) / (length * v.norm * mean_grad))
    return float(worst)
