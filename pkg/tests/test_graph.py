from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packdom import generators as gen
from packdom import graph as gc
from packdom.graph import DisconnectedGraphError, Graph, GraphFormatError

from .conftest import to_nx


@st.composite
def graphs(draw, max_n: int = 9, connected: bool = False) -> Graph:
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected:
        chosen = list({*chosen, *((draw(st.integers(0, v - 1)), v) for v in range(1, n))})
    return Graph(n, chosen)


class TestConstruction:
    def test_rejects_loops_and_bad_vertices(self):
        with pytest.raises(GraphFormatError):
            Graph(3, [(1, 1)])
        with pytest.raises(GraphFormatError):
            Graph(2, [(0, 2)])

    def test_edges_are_normalised(self):
        g = Graph(3, [(2, 0), (1, 2)])
        assert g.sorted_edges() == [(0, 2), (1, 2)] and g.has_edge(2, 0)

    def test_rejects_duplicates(self):
        with pytest.raises(GraphFormatError, match="duplicate"):
            Graph(3, [(2, 0), (0, 2)])


class TestParsing:
    def test_text_round_trip(self):
        g = gc.cycle_graph(5)
        assert gc.parse_graph(gc.format_graph(g)).edges == g.edges

    def test_json_form(self):
        g = gc.parse_graph('{"n": 3, "edges": [[0, 1], [1, 2]]}')
        assert g.n == 3 and g.m == 2

    @pytest.mark.parametrize(
        "text, needle",
        [
            ("3 1\n0 0\n", "line 2"),
            ("3 2\n0 1\n", "announces 2"),
            ("3 1\n0 5\n", "outside"),
            ("3 2\n0 1\n1 0\n", "duplicate"),
            ("x y\n", "line 1"),
            ("", "empty"),
        ],
    )
    def test_errors_name_the_problem(self, text, needle):
        with pytest.raises(GraphFormatError, match=needle):
            gc.parse_graph(text)

    def test_comments_skipped(self):
        assert gc.parse_graph("# path\n2 1\n0 1\n").m == 1


class TestMetric:
    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_distances_match_networkx(self, g):
        ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
        for u in range(g.n):
            for v in range(g.n):
                assert g.dist(u, v) == ref[u].get(v, gc.INF)

    @settings(max_examples=40, deadline=None)
    @given(graphs(connected=True))
    def test_radius_diameter(self, g):
        h = to_nx(g)
        assert gc.radius(g) == nx.radius(h)
        assert gc.diameter(g) == nx.diameter(h)

    def test_disconnected_radius_raises(self):
        with pytest.raises(DisconnectedGraphError):
            gc.radius(Graph(3, [(0, 1)]))

    def test_diametral_path_is_isometric(self):
        g = gc.cycle_graph(7)
        p = gc.diametral_path(g)
        assert len(p) - 1 == gc.diameter(g) and gc.is_isometric_path(g, p)

    def test_ball(self):
        assert gc.ball(gc.path_graph(5), 2, 1) == frozenset({1, 2, 3})

    def test_components_and_packing_radius(self):
        g = Graph(6, [(0, 1), (1, 2), (3, 4)])
        assert gc.components(g) == [[0, 1, 2], [3, 4], [5]]
        assert gc.packing_radius(g) == 1


class TestRecognition:
    @settings(max_examples=80, deadline=None)
    @given(graphs())
    def test_chordal_bipartite_match_networkx(self, g):
        h = to_nx(g)
        assert gc.is_chordal(g) == nx.is_chordal(h)
        assert gc.is_bipartite(g) == nx.is_bipartite(h)

    @settings(max_examples=60, deadline=None)
    @given(graphs())
    def test_blocks_match_networkx(self, g):
        ours = sorted(sorted(b) for b, _ in gc.biconnected_blocks(g))
        ref = sorted(sorted(c) for c in nx.biconnected_components(to_nx(g)))
        assert ours == ref

    def test_classify_c4(self):
        flags = gc.classify(gc.cycle_graph(4)).as_dict()
        assert flags == {
            "connected": True,
            "bipartite": True,
            "chordal": False,
            "cactus": True,
            "claw_free": True,
            "regular_degree": 2,
        }

    def test_claw(self):
        assert not gc.is_claw_free(gc.star_graph(3))
        assert gc.is_claw_free(gc.complete_graph(5))

    def test_cactus(self):
        assert gc.is_cactus(gc.cycle_graph(6))
        assert not gc.is_cactus(gc.complete_graph(4))
        # two triangles sharing a vertex form a cactus
        assert gc.is_cactus(Graph(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]))

    def test_random_generators_have_their_class(self):
        rng = random.Random(5)
        for _ in range(30):
            assert gc.is_chordal(gen.random_chordal(rng, rng.randint(1, 14)))
            assert gc.is_cactus(gen.random_cactus(rng, rng.randint(1, 30)))
            t = gen.random_tree(rng, rng.randint(1, 14))
            assert t.m == t.n - 1 and t.metric.connected

    def test_peo(self):
        g = gen.random_chordal(random.Random(2), 12)
        assert gc.is_perfect_elimination_ordering(g, gc.perfect_elimination_candidate(g))


class TestHyperbolicity:
    @pytest.mark.parametrize(
        "g, expected",
        [
            (gc.path_graph(6), Fraction(0)),
            (gc.star_graph(5), Fraction(0)),
            (gc.cycle_graph(4), Fraction(1)),
            (gc.cycle_graph(5), Fraction(1, 2)),
            (gc.complete_graph(5), Fraction(0)),
        ],
    )
    def test_values(self, g, expected):
        assert gc.hyperbolicity(g) == expected

    @settings(max_examples=25, deadline=None)
    @given(graphs(max_n=8, connected=True))
    def test_matches_four_point_recount(self, g):
        d = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
        best = Fraction(0)
        for x, y, z, w in combinations(range(g.n), 4):
            s = sorted([d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]])
            best = max(best, Fraction(s[2] - s[1], 2))
        assert gc.hyperbolicity(g) == best
