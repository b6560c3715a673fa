"""Icosahedral geodesic triangulations of the unit sphere."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = ["SphereMesh", "icosphere", "level_for_degree", "DEFAULT_LEVEL"]

DEFAULT_LEVEL = 6

# A fixed generic rotation keeps mesh vertices off the coordinate planes,
# where the nodal sets of the textbook examples live.
_EULER = (0.3141, 0.5772, 1.2345)


def _rotation(alpha, beta, gamma):
    ca, sa = np.cos(alpha), np.sin(alpha)
    cb, sb = np.cos(beta), np.sin(beta)
    cg, sg = np.cos(gamma), np.sin(gamma)
    rz1 = np.array([[ca, -sa, 0], [sa, ca, 0], [0, 0, 1]])
    ry = np.array([[cb, 0, sb], [0, 1, 0], [-sb, 0, cb]])
    rz2 = np.array([[cg, -sg, 0], [sg, cg, 0], [0, 0, 1]])
    return rz1 @ ry @ rz2


def _icosahedron():
    p = (1.0 + np.sqrt(5.0)) / 2.0
    v = np.array(
        [
            [-1, p, 0], [1, p, 0], [-1, -p, 0], [1, -p, 0],
            [0, -1, p], [0, 1, p], [0, -1, -p], [0, 1, -p],
            [p, 0, -1], [p, 0, 1], [-p, 0, -1], [-p, 0, 1],
        ],
        dtype=float,
    )
    f = np.array(
        [
            [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
            [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
            [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
            [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
        ]
    )
    return v / np.linalg.norm(v, axis=1, keepdims=True), f


def _edges(triangles):
    e = np.concatenate([triangles[:, [0, 1]], triangles[:, [1, 2]], triangles[:, [2, 0]]])
    e.sort(axis=1)
    edges, inverse = np.unique(e, axis=0, return_inverse=True)
    t = len(triangles)
    tri_edges = inverse.reshape(3, t).T  # edge opposite nothing; order: (01, 12, 20)
    return edges, tri_edges


def _subdivide(vertices, triangles):
    edges, tri_edges = _edges(triangles)
    mid = vertices[edges[:, 0]] + vertices[edges[:, 1]]
    mid /= np.linalg.norm(mid, axis=1, keepdims=True)
    nv = len(vertices)
    m = tri_edges + nv  # midpoint vertex ids: m01, m12, m20
    a, b, c = triangles.T
    m01, m12, m20 = m.T
    new = np.concatenate(
        [
            np.stack([a, m01, m20], axis=1),
            np.stack([b, m12, m01], axis=1),
            np.stack([c, m20, m12], axis=1),
            np.stack([m01, m12, m20], axis=1),
        ]
    )
    return np.vstack([vertices, mid]), new


@dataclass(frozen=True, eq=False)
class SphereMesh:
    """Geodesic triangulation: unit ``vertices``, ``triangles`` (index triples),
    unique ``edges`` and, per triangle, the ids of its three edges."""

    level: int
    vertices: np.ndarray
    triangles: np.ndarray
    edges: np.ndarray
    triangle_edges: np.ndarray

    @property
    def edge_length(self):
        """Longest geodesic edge length (the mesh resolution)."""
        v = self.vertices
        cos = np.sum(v[self.edges[:, 0]] * v[self.edges[:, 1]], axis=1)
        return float(np.max(np.arccos(np.clip(cos, -1.0, 1.0))))


@lru_cache(maxsize=8)
def icosphere(level=DEFAULT_LEVEL):
    """Icosahedron subdivided ``level`` times (``10 * 4**level + 2`` vertices)."""
    if level < 0:
        raise ValueError("level must be nonnegative")
    v, f = _icosahedron()
    for _ in range(level):
        v, f = _subdivide(v, f)
    v = v @ _rotation(*_EULER).T
    edges, tri_edges = _edges(f)
    for arr in (v, f, edges, tri_edges):
        arr.setflags(write=False)
    return SphereMesh(level, v, f, edges, tri_edges)


def level_for_degree(n, minimum=DEFAULT_LEVEL):
    """Smallest level with edge length ``<= 0.2 / n``, but at least ``minimum``."""
    level = 0
    while 1.33 / 2**level > 0.2 / max(n, 1):
        level += 1
    return max(level, minimum)
