from __future__ import annotations

from itertools import combinations, product

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packdom import graph as gc
from packdom.graph import Graph
from packdom.oracles import (
    Broadcast,
    Inconclusive,
    Infeasible,
    SetSystem,
    default_budget,
    gamma_b_exact,
    gamma_b_unrestricted,
    maximum_independent,
    minimum_dominating,
    minimum_hitting,
    minimum_total_dominating,
    mp_atleast,
    mp_exact,
    verify_broadcast,
    verify_multipacking,
    verify_r_multipacking,
)

from .conftest import to_nx
from .test_graph import graphs


def naive_r_multipacking(g: Graph, M: set[int], r: int) -> bool:
    d = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    return all(
        sum(1 for u in M if d[v].get(u, g.n + 1) <= s) <= s for v in range(g.n) for s in range(1, r + 1)
    )


def brute_mp(g: Graph, r: int) -> int:
    for size in range(g.n, 0, -1):
        if any(naive_r_multipacking(g, set(c), r) for c in combinations(range(g.n), size)):
            return size
    return 0


def brute_broadcast(g: Graph) -> int:
    d = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    ecc = [max(d[v].values()) for v in range(g.n)]
    best = g.n
    for f in product(*(range(max(1, e) + 1) for e in ecc)):
        cost = sum(f)
        if cost >= best:
            continue
        if all(any(f[v] and d[v][u] <= f[v] for v in range(g.n)) for u in range(g.n)):
            best = cost
    return best


class TestVerifiers:
    def test_adjacent_pair_is_not_a_multipacking(self):
        assert not verify_multipacking(gc.path_graph(3), {0, 1})

    def test_distance_three_pair_is(self):
        assert verify_multipacking(gc.path_graph(4), {0, 3})

    def test_c6_antipodal_triple_fails_radius_two(self):
        # every vertex of C6 sees two of {0, 2, 4} at distance 1
        assert not verify_r_multipacking(gc.cycle_graph(6), {0, 2, 4}, 1)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            verify_multipacking(gc.path_graph(3), {5})

    def test_broadcast_verdicts(self):
        g = gc.path_graph(5)
        assert verify_broadcast(g, {2: 2}).dominating
        assert not verify_broadcast(g, {0: 1}).dominating
        v = verify_broadcast(g, {0: 1, 1: 1})
        assert v.dominating is False and v.efficient is False and v.cost == 2

    def test_broadcast_rejects_negative(self):
        with pytest.raises(ValueError):
            Broadcast({0: -1})


class TestMultipackingOracle:
    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=8, connected=True))
    def test_matches_brute_force(self, g):
        size, w = mp_exact(g)
        r = max(1, gc.radius(g))
        assert size == brute_mp(g, r)
        assert naive_r_multipacking(g, set(w.members), r)

    @settings(max_examples=30, deadline=None)
    @given(graphs(max_n=7, connected=True), st.integers(1, 3))
    def test_r_version_matches_brute_force(self, g, r):
        assert mp_exact(g, r)[0] == brute_mp(g, r)

    def test_atleast_agrees_with_exact(self):
        g = gc.cycle_graph(9)
        size, _ = mp_exact(g)
        assert mp_atleast(g, size)[0] and not mp_atleast(g, size + 1)[0]

    def test_budget(self, monkeypatch):
        g = gc.cycle_graph(30)
        with pytest.raises(Inconclusive):
            mp_exact(g, budget=2)
        monkeypatch.setenv("PACKDOM_BUDGET", "7")
        assert default_budget() == 7


class TestBroadcastOracle:
    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=7, connected=True))
    def test_matches_brute_force(self, g):
        cost, f = gamma_b_exact(g)
        assert cost == brute_broadcast(g)
        assert verify_broadcast(g, f).dominating

    @settings(max_examples=30, deadline=None)
    @given(graphs(max_n=6))
    def test_efficient_restriction_loses_nothing(self, g):
        assert gamma_b_exact(g)[0] == gamma_b_unrestricted(g)[0]

    def test_single_vertex(self):
        assert gamma_b_exact(Graph(1))[0] == 1

    @pytest.mark.parametrize("n, expected", [(2, 1), (3, 1), (4, 2), (7, 3), (10, 4)])
    def test_paths(self, n, expected):
        # gamma_b(P_n) = ceil(n/3)
        assert gamma_b_exact(gc.path_graph(n))[0] == expected


class TestSetProblems:
    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=8))
    def test_domination_family(self, g):
        h = to_nx(g)
        dom, d = minimum_dominating(g)
        assert nx.is_dominating_set(h, d)
        assert dom == min(
            k for k in range(1, g.n + 1) for c in combinations(range(g.n), k) if nx.is_dominating_set(h, c)
        )
        alpha, ind = maximum_independent(g)
        comp = nx.complement(h)
        assert alpha == max(len(c) for c in nx.find_cliques(comp)) and len(ind) == alpha
        if any(g.degree(v) == 0 for v in range(g.n)):
            with pytest.raises(Infeasible):
                minimum_total_dominating(g)
        else:
            t, td = minimum_total_dominating(g)
            assert all(g.adj[v] & set(td) for v in range(g.n))
            assert t == min(
                k
                for k in range(1, g.n + 1)
                for c in combinations(range(g.n), k)
                if all(g.adj[v] & set(c) for v in range(g.n))
            )

    def test_hitting_set(self):
        sys = SetSystem(4, (frozenset({0, 1}), frozenset({1, 2}), frozenset({3})))
        assert minimum_hitting(sys)[0] == 2
        with pytest.raises(Infeasible):
            minimum_hitting(SetSystem(2, (frozenset(),)))

    def test_set_system_validates(self):
        with pytest.raises(ValueError):
            SetSystem(2, (frozenset({2}),))
