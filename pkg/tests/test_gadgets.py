from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest

from packdom import graph as gc
from packdom.acceptance import _planar_source, _prism
from packdom.gadgets import (
    GadgetError,
    MappingFailure,
    format_set_system,
    havel_hakimi_regular,
    hs_to_mp,
    is_to_rmp,
    map_solution,
    normalized_endpoints,
    parse_set_system,
    reassign,
    tds_to_mp,
    validate_structure,
)
from packdom.graph import Graph
from packdom.oracles import (
    SetSystem,
    maximum_independent,
    minimum_hitting,
    minimum_total_dominating,
    mp_atleast,
    mp_exact,
    verify_r_multipacking,
)

from .conftest import to_nx


def singletons(n: int) -> SetSystem:
    return SetSystem(n, tuple(frozenset({i}) for i in range(n)))


class TestHavelHakimi:
    def test_k4(self):
        assert havel_hakimi_regular(4, 3).edges == gc.complete_graph(4).edges

    def test_odd_degree_sum(self):
        with pytest.raises(GadgetError, match="odd"):
            havel_hakimi_regular(5, 3)

    @pytest.mark.parametrize("n, d", [(4, 2), (9, 2), (16, 3), (9, 6), (10, 5)])
    def test_regular(self, n, d):
        g = havel_hakimi_regular(n, d)
        assert g.n == n and gc.regular_degree(g) == d


class TestHittingSet:
    def test_forward_picks_path_ends(self):
        inst = hs_to_mp("chordal", SetSystem(2, (frozenset({0}), frozenset({1}))), 2)
        out = map_solution(inst, "fwd", [0, 1])
        assert [inst.names[v] for v in out] == ["u_0^1", "u_1^1"]

    @pytest.mark.parametrize("variant, k", [("chordal", 2), ("half_hyperbolic", 3), ("bipartite", 3), ("clawfree", 3)])
    def test_structure_and_round_trip(self, variant, k):
        sys = SetSystem(3, (frozenset({0, 1}), frozenset({1, 2}), frozenset({2})))
        inst = hs_to_mp(variant, sys, k)
        assert all(validate_structure(inst).values())
        _, h = minimum_hitting(sys)
        fwd = map_solution(inst, "fwd", h)
        assert source_ok(sys, map_solution(inst, "bwd", fwd), k)

    def test_minimum_k(self):
        with pytest.raises(GadgetError):
            hs_to_mp("clawfree", singletons(2), 2)

    def test_empty_set_rejected(self):
        with pytest.raises(GadgetError, match="empty"):
            hs_to_mp("chordal", SetSystem(2, (frozenset(),)), 2)

    def test_universe_is_padded(self):
        inst = hs_to_mp("chordal", SetSystem(1, (frozenset({0}),)), 3)
        assert inst.params["n"] == 3 and inst.tables["universe"] == 1

    def test_bipartite_k2_accepts_a_no_instance(self):
        # known defect: two set vertices share the apex, so a 2-multipacking
        # exists whatever the instance
        sys = singletons(3)
        inst = hs_to_mp("bipartite", sys, 2)
        assert minimum_hitting(sys)[0] == 3
        assert mp_atleast(inst.graph, 2)[0]

    def test_bipartite_k3_decides_correctly(self):
        sys = singletons(4)
        assert not mp_atleast(hs_to_mp("bipartite", sys, 3).graph, 3)[0]

    def test_set_system_round_trip(self):
        sys = SetSystem(4, (frozenset({0, 3}), frozenset(), frozenset({2})))
        assert parse_set_system(format_set_system(sys)) == sys

    @pytest.mark.parametrize("text", ["", "2 2\n0\n", "2 1\nx\n", "2 1\n0\n1\n"])
    def test_set_system_errors(self, text):
        with pytest.raises(ValueError):
            parse_set_system(text)


def source_ok(sys: SetSystem, sol: list[int], k: int) -> bool:
    return sys.is_hitting(sol) and len(sol) <= k


class TestTotalDomination:
    def test_conv_sources_are_planar(self):
        rng = random.Random(3)
        for _ in range(40):
            g = _planar_source(rng)
            assert nx.check_planarity(to_nx(g))[0]
            inst = tds_to_mp("conv", g, 3) if g.n >= 3 else None
            assert inst is None or all(validate_structure(inst).values())

    def test_conv_round_trip(self):
        g = gc.cycle_graph(5)
        t, td = minimum_total_dominating(g)
        inst = tds_to_mp("conv", g, t)
        back = map_solution(inst, "bwd", map_solution(inst, "fwd", td))
        assert len(back) <= t and all(g.adj[v] & set(back) for v in range(g.n))

    def test_conv_euler_rejection(self):
        with pytest.raises(GadgetError, match="planar"):
            tds_to_mp("conv", gc.complete_graph(6), 3)

    def test_regular_prism(self):
        g = _prism()
        inst = tds_to_mp("regular", g, 4)
        assert validate_structure(inst) == {"2d_regular": True}
        _, td = minimum_total_dominating(g)
        fwd = map_solution(inst, "fwd", td)
        assert len(map_solution(inst, "bwd", fwd)) <= 4

    @pytest.mark.parametrize(
        "g, k",
        [(gc.complete_graph(4), 4), (_prism(), 3), (gc.cycle_graph(6), 4)],
    )
    def test_regular_rejections(self, g, k):
        with pytest.raises(GadgetError):
            tds_to_mp("regular", g, k)

    def test_source_needs_k_vertices(self):
        with pytest.raises(GadgetError):
            tds_to_mp("conv", gc.path_graph(3), 4)


class TestIndependentSet:
    def test_triangle_r2(self):
        inst = is_to_rmp("planar_bipartite", gc.complete_graph(3), 1, 2)
        assert inst.target == 4
        assert mp_exact(inst.graph, 2)[0] == 4
        fwd = map_solution(inst, "fwd", [0])
        assert map_solution(inst, "bwd", fwd) == [0]

    def test_chordal_radius(self):
        inst = is_to_rmp("chordal", gc.path_graph(3), 1, 3)
        assert validate_structure(inst) == {"chordal": True, "radius<=r+1": True}

    @pytest.mark.parametrize("src", [gc.complete_graph(4), _prism()])
    def test_cubic_source_degree(self, src):
        inst = is_to_rmp("planar_bipartite", src, 2, 2)
        assert max(inst.graph.degree(v) for v in range(inst.graph.n)) <= 4

    def test_apex_target_is_out_of_reach(self):
        # known defect: the stated target exceeds the true optimum by one
        src = gc.complete_graph(3)
        inst = is_to_rmp("bipartite", src, 1, 2)
        alpha = maximum_independent(src)[0]
        assert inst.target == 5
        assert mp_exact(inst.graph, 2)[0] == alpha + src.m * 1 == 4
        with pytest.raises(MappingFailure):
            map_solution(inst, "fwd", [0])

    @pytest.mark.parametrize("r", [2, 3])
    def test_reassign_normalises(self, r):
        rng = random.Random(r)
        src = Graph(4, [(0, 1), (1, 2), (2, 3)])
        inst = is_to_rmp("planar_bipartite", src, 2, r)
        ends = normalized_endpoints(inst)
        _, w = mp_exact(inst.graph, r)
        out = reassign(inst, w)
        assert len(out) == len(w) and set(out.members) <= ends
        assert verify_r_multipacking(inst.graph, out.members, r)
        assert reassign(inst, out).members == out.members
        # a random smaller multipacking exercises the p < r branch
        small = set(rng.sample(sorted(w.members), len(w) // 2))
        part = reassign(inst, small)
        assert len(part) == len(small) and set(part.members) <= ends

    def test_reassign_rejects_non_packing(self):
        inst = is_to_rmp("planar_bipartite", gc.path_graph(2), 1, 2)
        with pytest.raises(GadgetError):
            reassign(inst, range(inst.graph.n))

    def test_small_sources_decide_correctly(self):
        for src in [gc.path_graph(3), gc.cycle_graph(4), gc.star_graph(3)]:
            alpha = maximum_independent(src)[0]
            for k in (alpha, alpha + 1):
                inst = is_to_rmp("chordal", src, k, 2)
                assert mp_atleast(inst.graph, inst.target, 2)[0] == (alpha >= k)


def test_map_rejects_bad_direction():
    inst = hs_to_mp("chordal", singletons(2), 2)
    with pytest.raises(GadgetError):
        map_solution(inst, "sideways", [0, 1])


def test_json_maps_are_serialisable():
    import json

    inst = hs_to_mp("half_hyperbolic", singletons(3), 3)
    data = json.loads(json.dumps(inst.to_json()))
    assert data["target"] == 3 and "y" in data["maps"]
    assert all("," in key for key in data["maps"]["y"])
    assert len(data["maps"]["y"]) == len(list(combinations(range(3), 2)))
