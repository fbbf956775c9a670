from fractions import Fraction

import numpy as np
import pytest

from degdiam.cayley import (
    ConnectionSetError,
    ExplicitSizeError,
    NotGeneratingError,
    build_cayley_explicit,
    cayley_bfs,
    cayley_diameter_implicit,
    close_connection_set,
    generator_indices,
    parse_pairs,
)
from degdiam.graphcore import average_distance, cycle_graph, diameter, girth
from degdiam.groups import SemidirectSpec, TwoCoordGroup, TwoCoordSpec, sd_validate
from degdiam.records import CHECKS

# Frozen from an independent oracle: pure-Python group arithmetic plus
# networkx breadth-first search over the explicit graph.
HIST_9_4 = (1, 9, 72, 532, 1026)
HIST_7_6 = (1, 7, 42, 252, 1463, 5957, 4542)
HIST_10_4 = (1, 10, 90, 660, 1486, 84)
HIST_ABAS = (1, 16, 183)


def _sd(M, A, N, gens):
    g = sd_validate(SemidirectSpec(M, A, N))
    return g, close_connection_set(g, generator_indices(g, gens))


def _abas():
    g = TwoCoordGroup(TwoCoordSpec(10))
    return g, close_connection_set(g, [g.encode(e) for e in CHECKS[(16, 2)].generators])


def test_closure_abas_degree_16():
    g, conn = _abas()
    assert conn.degree == 16
    assert [g.decode(s) for s in conn.involutions] == [(0, 0, 1), (5, 0, 0)]


def test_closure_small_cases():
    g = sd_validate(SemidirectSpec(2, 1, 4))
    inv = g.encode((1, 0))
    assert close_connection_set(g, [inv]).degree == 1
    s = g.encode((0, 1))
    c = close_connection_set(g, [s])
    assert c.degree == 2 and set(c.elements) == {s, g.inv(s)}
    assert close_connection_set(g, [s, g.inv(s), s]).degree == 2


def test_closure_errors():
    g = sd_validate(SemidirectSpec(3, 1, 3))
    with pytest.raises(ConnectionSetError):
        close_connection_set(g, [])
    with pytest.raises(ConnectionSetError):
        close_connection_set(g, [0, 1])


def test_explicit_cyclic_is_cycle():
    g, conn = _sd(1, 1, 5, [(0, 1)])
    assert build_cayley_explicit(g, conn) == cycle_graph(5)


@pytest.mark.parametrize("n", [2, 3, 10, 101, 1000])
def test_cyclic_diameter(n):
    g, conn = _sd(1, 1, n, [(0, 1)])
    assert cayley_diameter_implicit(g, conn) == (n // 2, n)


def test_9_4_explicit_and_implicit():
    g, conn = _sd(40, 24, 41, [(25, 28), (14, 40), (29, 11), (39, 12), (20, 35)])
    assert conn.degree == 9 and len(conn.involutions) == 1
    G = build_cayley_explicit(g, conn)
    assert G.n == 1640 and np.all(G.degrees() == 9)
    res = cayley_bfs(g, conn)
    assert res.histogram == HIST_9_4
    assert diameter(G) == 4 and girth(G) == 5
    assert average_distance(G) == res.average_distance == Fraction(5853, 1639)


def test_7_6_implicit():
    g, conn = _sd(24, 90, 511, [(13, 77), (6, 157), (15, 50), (12, 7)])
    assert cayley_diameter_implicit(g, conn) == (6, 12264)
    assert cayley_bfs(g, conn).histogram == HIST_7_6
    assert girth(build_cayley_explicit(g, conn), assume_vertex_transitive=True) == 8


def test_10_4_published_generators_reach_distance_5():
    g, conn = _sd(9, 44, 259, [(8, 132), (2, 171), (2, 71), (4, 236), (6, 240)])
    res = cayley_bfs(g, conn)
    assert res.generates and conn.degree == 10
    assert res.histogram == HIST_10_4


def test_abas():
    g, conn = _abas()
    G = build_cayley_explicit(g, conn)
    assert G.n == 200 and np.all(G.degrees() == 16)
    assert diameter(G) == 2 and girth(G) == 3
    assert average_distance(G) == Fraction(382, 199)
    assert cayley_bfs(g, conn).histogram == HIST_ABAS


class _Proxy:
    """Hides the group type so cayley_bfs takes its generic path."""

    def __init__(self, g):
        self._g = g
        self.order, self.identity = g.order, g.identity

    def right_mul(self, idx, s):
        return self._g.right_mul(idx, s)


def test_generic_path_matches_compiled():
    for mirrored in (False, True):
        g = sd_validate(SemidirectSpec(24, 90, 511), mirrored=mirrored)
        conn = close_connection_set(g, generator_indices(g, [(13, 77), (6, 157), (15, 50), (12, 7)]))
        assert cayley_bfs(_Proxy(g), conn).histogram == cayley_bfs(g, conn).histogram == HIST_7_6


def test_not_generating():
    g, conn = _sd(4, 1, 6, [(2, 0), (0, 3)])
    with pytest.raises(NotGeneratingError) as info:
        cayley_diameter_implicit(g, conn)
    assert info.value.reached == 4 and info.value.order == 24
    res = cayley_bfs(g, conn)
    assert not res.generates and res.average_distance is None


def test_explicit_cap():
    g, conn = _sd(24, 90, 511, [(13, 77)])
    with pytest.raises(ExplicitSizeError):
        build_cayley_explicit(g, conn, cap=1000)


def test_parse_pairs():
    assert parse_pairs("[13,77],[6, 157]") == [(13, 77), (6, 157)]
    assert parse_pairs("13,77 6,157") == [(13, 77), (6, 157)]
