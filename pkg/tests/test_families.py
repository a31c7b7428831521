from __future__ import annotations

import pytest

from packdom import graph as gc
from packdom.families import FAMILIES, certify, gen_pentagon_chain, pentagon_diametral_path
from packdom.oracles import gamma_b_exact, mp_exact, verify_broadcast


@pytest.mark.parametrize(
    "name, n, m",
    [("pentagon", 15, 17), ("fk", 18, 29), ("hk", 18, 26)],
)
def test_sizes_at_k1(name, n, m):
    g = FAMILIES[name](1).graph
    assert (g.n, g.m) == (n, m)


@pytest.mark.parametrize("name", sorted(FAMILIES))
@pytest.mark.parametrize("k", [1, 2])
def test_exact_values_match_claims(name, k):
    b = FAMILIES[name](k)
    assert mp_exact(b.graph)[0] == b.claimed_mp == 3 * k
    assert gamma_b_exact(b.graph)[0] == b.claimed_gamma_b == 4 * k


@pytest.mark.parametrize("name", ["pentagon", "fk"])
@pytest.mark.parametrize("k", [1, 2, 5])
def test_certificates_pin_both_values(name, k):
    rep = certify(FAMILIES[name](k))
    assert rep.exact
    assert rep.mp_interval == (3 * k, 3 * k) and rep.gamma_b_interval == (4 * k, 4 * k)


@pytest.mark.parametrize("k", [1, 3, 6])
def test_hk_has_no_fractional_certificate(k):
    b = FAMILIES["hk"](k)
    rep = certify(b)
    assert rep.fractional_ok is None and not rep.exact
    assert rep.mp_interval == (3 * k, 3 * k)
    assert verify_broadcast(b.graph, b.broadcast).cost == 4 * k


def test_graph_classes():
    assert gc.is_cactus(FAMILIES["pentagon"](3).graph)
    assert gc.is_chordal(FAMILIES["fk"](3).graph)
    assert gc.is_bipartite(FAMILIES["hk"](3).graph)


def test_pentagon_diametral_path():
    b = gen_pentagon_chain(2)
    p = pentagon_diametral_path(b)
    assert len(p) - 1 == 9 * b.k - 1 == gc.diameter(b.graph)
    assert gc.is_isometric_path(b.graph, p)


def test_k_must_be_positive():
    with pytest.raises(ValueError):
        gen_pentagon_chain(0)
