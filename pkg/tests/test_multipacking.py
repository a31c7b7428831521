from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from packdom import generators as gen
from packdom import graph as gc
from packdom.families import gen_pentagon_chain
from packdom.multipacking import (
    WeightFunction,
    bounds_report,
    diametral_approx,
    parse_weight_json,
    third_vertex_multipacking,
    verify_fractional_multipacking,
)
from packdom.oracles import gamma_b_exact, mp_exact, verify_multipacking

from .test_graph import graphs


class TestApprox:
    @settings(max_examples=50, deadline=None)
    @given(graphs(max_n=10, connected=True))
    def test_diametral_size_and_validity(self, g):
        w = diametral_approx(g)
        assert verify_multipacking(g, w)
        assert len(w) == -(-(gc.diameter(g) + 1) // 3)

    def test_third_vertex_needs_isometric_path(self):
        g = gc.cycle_graph(6)
        with pytest.raises(ValueError):
            third_vertex_multipacking(g, [0, 1, 2, 3, 4])

    def test_pentagon_g1(self):
        assert len(diametral_approx(gen_pentagon_chain(1).graph)) == 3


class TestFractional:
    def test_pentagon_weights_feasible(self):
        b = gen_pentagon_chain(1)
        ok, value = verify_fractional_multipacking(b.graph, b.fractional)
        assert ok and value == 4

    def test_overweight_rejected(self):
        g = gc.path_graph(3)
        ok, _ = verify_fractional_multipacking(g, WeightFunction({0: Fraction(1), 1: Fraction(1, 2)}))
        assert not ok

    def test_json_round_trip(self):
        w = WeightFunction({0: Fraction(1, 3), 4: Fraction(2, 3)})
        assert parse_weight_json(json.dumps(w.to_json())) == w

    def test_negative_weight(self):
        with pytest.raises(ValueError):
            WeightFunction({0: Fraction(-1)})

    @settings(max_examples=30, deadline=None)
    @given(graphs(max_n=8, connected=True))
    def test_indicator_of_multipacking_is_feasible(self, g):
        _, w = mp_exact(g)
        ok, value = verify_fractional_multipacking(g, WeightFunction({v: 1 for v in w.members}))
        assert ok and value == len(w)


class TestBounds:
    def test_report_brackets_exact_values(self):
        rng = random.Random(11)
        for _ in range(40):
            g = gen.random_connected_graph(rng, rng.randint(2, 11))
            rep = bounds_report(g)
            mp, _ = mp_exact(g)
            gb, _ = gamma_b_exact(g)
            lo, hi = rep.best("MP")
            glo, ghi = rep.best("gamma_b")
            assert lo <= mp <= hi and glo <= gb <= ghi
            assert rep.consistent()

    def test_without_exact_oracles(self):
        g = gen.random_cactus(random.Random(3), 30)
        rep = bounds_report(g, exact_threshold=0)
        assert rep.exact == {}
        assert any(b.rule == "cactus pipeline witness" for b in rep.lower)
        assert rep.consistent()

    def test_chordal_rules_present(self):
        rep = bounds_report(gen.random_chordal(random.Random(1), 10))
        assert any(b.rule.startswith("chordal") for b in rep.upper)

    def test_json_shape(self):
        g = gc.cycle_graph(7)
        out = bounds_report(g).to_json()
        assert set(out) == {"lower", "upper", "flags", "exact", "consistent"}
        assert out["flags"]["hyperbolicity"] == str(gc.hyperbolicity(g))
