from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from packdom.generators import random_point_set
from packdom.geometry import (
    GeneralPositionError,
    PointFormatError,
    PointSet,
    bounds_points,
    build_nng,
    format_points,
    gamma_b_points_exact,
    gamma_b_points_unrestricted,
    line_r_multipacking,
    mdb,
    min_edge_cover,
    mp_points_exact,
    parse_points,
    verify_point_broadcast,
    verify_point_multipacking,
)


def line(*xs: int) -> PointSet:
    return PointSet(tuple((Fraction(x),) for x in xs))


def brute_mp(P: PointSet, r: int) -> int:
    """Largest subset passing a direct recount of every neighbourhood."""
    def ok(M: set[int]) -> bool:
        for v in range(P.n):
            by_dist = sorted(range(P.n), key=lambda u: sum((a - b) ** 2 for a, b in zip(P.points[v], P.points[u])))
            for s in range(1, r + 1):
                if len(M & set(by_dist[: s + 1])) > (s + 1) // 2:
                    return False
        return True

    return max(k for k in range(P.n + 1) for c in combinations(range(P.n), k) if ok(set(c)))


@st.composite
def point_sets(draw, max_n: int = 7, dims: tuple[int, ...] = (1, 2, 3)) -> PointSet:
    seed = draw(st.integers(0, 10**6))
    n = draw(st.integers(2, max_n))
    d = draw(st.sampled_from(dims))
    return PointSet(tuple(random_point_set(random.Random(seed), n, d)))


class TestPointSet:
    def test_equal_distances_rejected(self):
        with pytest.raises(GeneralPositionError, match="equidistant"):
            line(0, 1, 2)

    def test_duplicates_rejected(self):
        with pytest.raises(GeneralPositionError, match="coincide"):
            line(0, 0)

    def test_mixed_dimensions(self):
        with pytest.raises(PointFormatError):
            parse_points("0,1\n3\n")

    def test_bad_token(self):
        with pytest.raises(PointFormatError, match="line 2"):
            parse_points("0\nabc\n")

    def test_round_trip(self):
        P = parse_points("# pts\n0, 1/2\n3,7\n-2.5,4\n")
        assert parse_points(format_points(P)) == P
        assert P.points[2] == (Fraction(-5, 2), Fraction(4))

    def test_neighbourhoods(self):
        P = line(0, 1, 3, 7)
        assert P.nbhd(3, 2) == (3, 2, 1) and P.rank(0, 3) == 3


class TestNearestNeighbourGraph:
    def test_line_example(self):
        nng = build_nng(line(0, 1, 3, 7))
        assert nng.arcs() == [(0, 1), (1, 0), (2, 1), (3, 2)]
        assert nng.bi_roots() == [(0, 1)]

    @settings(max_examples=60, deadline=None)
    @given(point_sets(max_n=12))
    def test_one_mutual_pair_per_component(self, P):
        assert build_nng(P).validate()

    @settings(max_examples=60, deadline=None)
    @given(point_sets(max_n=12))
    def test_cover_size_is_gallai(self, P):
        nng = build_nng(P)
        h = nx.Graph(nng.edges())
        nu = len(nx.max_weight_matching(h, maxcardinality=True))
        cover = min_edge_cover(nng)
        assert len(cover) == P.n - nu
        assert {x for e in cover for x in e} == set(range(P.n))


class TestBroadcast:
    def test_line_example(self):
        f = mdb(line(0, 1, 3, 7))
        assert f.weights == {0: 1, 3: 1} and f.cost == 2

    def test_single_point(self):
        P = line(5)
        assert mdb(P).weights == {0: 1} and gamma_b_points_exact(P)[0] == 1

    @settings(max_examples=60, deadline=None)
    @given(point_sets(max_n=9))
    def test_mdb_is_optimal(self, P):
        f = mdb(P)
        assert verify_point_broadcast(P, f)
        assert f.cost == gamma_b_points_exact(P)[0]

    @settings(max_examples=25, deadline=None)
    @given(point_sets(max_n=5))
    def test_strength_one_towers_suffice(self, P):
        assert gamma_b_points_unrestricted(P)[0] == mdb(P).cost

    def test_overlong_tower_rejected(self):
        assert not verify_point_broadcast(line(0, 1, 3), {0: 3})


class TestMultipacking:
    def test_three_point_example(self):
        P = line(0, 1, 5)
        assert not verify_point_multipacking(P, [0, 2])
        assert mp_points_exact(P)[0] == 1
        assert line_r_multipacking(P, 2)[0] == 1

    def test_index_check(self):
        with pytest.raises(IndexError):
            verify_point_multipacking(line(0, 1, 3), [4])

    @settings(max_examples=40, deadline=None)
    @given(point_sets(max_n=7), st.integers(1, 3))
    def test_exact_matches_brute_force(self, P, r):
        r = min(r, P.n - 1)
        size, M = mp_points_exact(P, r)
        assert size == brute_mp(P, r) and verify_point_multipacking(P, M, r)

    @settings(max_examples=60, deadline=None)
    @given(point_sets(max_n=8, dims=(1,)), st.integers(1, 7))
    def test_line_dp_matches_brute_force(self, P, r):
        r = min(r, P.n - 1)
        size, M = line_r_multipacking(P, r)
        assert size == brute_mp(P, r) and len(M) == size

    def test_line_dp_needs_one_dimension(self):
        with pytest.raises(ValueError):
            line_r_multipacking(PointSet(((Fraction(0), Fraction(0)), (Fraction(1), Fraction(3)))), 1)

    def test_single_point(self):
        assert mp_points_exact(line(2)) == (1, [0])
        assert line_r_multipacking(line(2), 1) == (1, [0])


class TestBounds:
    @pytest.mark.parametrize(
        "n, d, lo, hi",
        [(12, 2, 6, 10), (10, 1, 5, 6), (13, 3, 7, 12)],
    )
    def test_gamma_b_interval(self, n, d, lo, hi):
        P = PointSet(tuple(random_point_set(random.Random(n), n, d)))
        assert bounds_points(P).best("gamma_b") == (lo, hi)

    def test_line_multipacking_bounds(self):
        rep = bounds_points(line(*(2**i for i in range(10))))
        assert rep.best("MP") == (3, 5)

    def test_single_point(self):
        assert bounds_points(line(0)).best("gamma_b") == (1, 1)

    @settings(max_examples=40, deadline=None)
    @given(point_sets(max_n=8, dims=(1, 2)))
    def test_bounds_bracket_exact(self, P):
        rep = bounds_points(P)
        lo, hi = rep.best("MP")
        glo, ghi = rep.best("gamma_b")
        assert lo <= mp_points_exact(P)[0] <= hi
        assert glo <= gamma_b_points_exact(P)[0] <= ghi
