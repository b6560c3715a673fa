import numpy as np
import pytest

from nodal_lab.mesh import icosphere, level_for_degree


@pytest.mark.parametrize("level", [0, 1, 3])
def test_counts_and_euler_characteristic(level):
    m = icosphere(level)
    V, E, F = len(m.vertices), len(m.edges), len(m.triangles)
    assert V == 10 * 4**level + 2
    assert V - E + F == 2
    assert np.allclose(np.linalg.norm(m.vertices, axis=1), 1.0)


def test_triangles_are_consistently_oriented():
    m = icosphere(2)
    a, b, c = (m.vertices[m.triangles[:, i]] for i in range(3))
    orient = np.sum(np.cross(b - a, c - a) * (a + b + c), axis=1)
    assert np.all(orient > 0) or np.all(orient < 0)


def test_triangle_edges_match():
    m = icosphere(2)
    for t, e in zip(m.triangles[:50], m.triangle_edges[:50]):
        pairs = {tuple(sorted(p)) for p in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0]))}
        assert pairs == {tuple(m.edges[i]) for i in e}


def test_edge_length_halves_per_level():
    ratio = icosphere(4).edge_length / icosphere(5).edge_length
    assert ratio == pytest.approx(2.0, rel=0.05)


def test_level_rule():
    assert level_for_degree(1) == 6
    assert level_for_degree(8) == 6
    # the rule bounds the icosahedral edge by 1.33 / 2**level
    for n in (20, 40):
        level = level_for_degree(n)
        assert 1.33 / 2**level <= 0.2 / n < 1.33 / 2 ** (level - 1)


def test_read_only_and_cached():
    m = icosphere(1)
    assert m is icosphere(1)
    with pytest.raises(ValueError):
        m.vertices[0, 0] = 2.0


def test_negative_level():
    with pytest.raises(ValueError):
        icosphere(-1)
