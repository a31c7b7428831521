"""Deterministic certificate families with ``MP = 3k`` and ``γ_b = 4k``.

Each generator lays out ``3k`` blocks consecutively and returns the graph
together with its named vertices, a maximum multipacking, an optimal
dominating broadcast and, where one is known, a fractional multipacking of
value ``4k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .graph import Graph
from .multipacking import WeightFunction, verify_fractional_multipacking
from .oracles import Broadcast, PackingWitness, verify_broadcast, verify_multipacking


@dataclass(frozen=True)
class FamilyBundle:
    name: str
    k: int
    graph: Graph
    labels: dict[str, int]
    blocks: tuple[tuple[int, ...], ...]
    mp_witness: PackingWitness
    broadcast: Broadcast
    fractional: WeightFunction | None
    claimed_mp: int
    claimed_gamma_b: int

    def vertex(self, name: str) -> int:
        return self.labels[name]

    def names(self) -> dict[int, str]:
        return {v: s for s, v in self.labels.items()}


@dataclass(frozen=True)
class CertificateReport:
    witness_ok: bool
    broadcast_ok: bool
    fractional_ok: bool | None
    blocks_ok: bool
    mp_interval: tuple[int, int | None]
    gamma_b_interval: tuple[int | None, int]

    @property
    def exact(self) -> bool:
        lo, hi = self.mp_interval
        glo, ghi = self.gamma_b_interval
        return lo == hi and glo == ghi


def certify(bundle: FamilyBundle) -> CertificateReport:
    """Prove bounds from certificates alone, without search.

    * the witness gives ``MP >= |M|``;
    * blocks partition ``V`` and have diameter at most 2 inside ``G``, and
      members of a multipacking are pairwise at distance at least 3, so
      ``MP <= #blocks``;
    * the broadcast gives ``γ_b <= cost``;
    * a feasible fractional multipacking gives ``γ_b >= value`` by weak
      duality.
    """
    g = bundle.graph
    witness_ok = verify_multipacking(g, bundle.mp_witness)
    verdict = verify_broadcast(g, bundle.broadcast)
    broadcast_ok = verdict.dominating and verdict.cost == bundle.claimed_gamma_b
    covered = sorted(v for blk in bundle.blocks for v in blk)
    blocks_ok = covered == list(range(g.n)) and all(
        g.dist(u, v) <= 2 for blk in bundle.blocks for u, v in combinations(blk, 2)
    )
    mp_lo = len(bundle.mp_witness) if witness_ok else 0
    mp_hi = len(bundle.blocks) if blocks_ok else None
    gb_hi = verdict.cost if verdict.dominating else g.n
    frac_ok: bool | None = None
    gb_lo: int | None = None
    if bundle.fractional is not None:
        feasible, value = verify_fractional_multipacking(g, bundle.fractional)
        frac_ok = feasible and value == bundle.claimed_gamma_b
        if feasible:
            gb_lo = -((-value.numerator) // value.denominator)
    return CertificateReport(witness_ok, broadcast_ok, frac_ok, blocks_ok, (mp_lo, mp_hi), (gb_lo, gb_hi))


def _layout(k: int, letters: str) -> tuple[dict[str, int], list[tuple[int, ...]]]:
    if k < 1:
        raise ValueError("k must be at least 1")
    labels: dict[str, int] = {}
    blocks = []
    for i in range(1, 3 * k + 1):
        base = (i - 1) * len(letters)
        for off, ch in enumerate(letters):
            labels[f"{ch}_{i}"] = base + off
        blocks.append(tuple(range(base, base + len(letters))))
    return labels, blocks


def _tower_broadcast(labels: dict[str, int], k: int, letter: str) -> Broadcast:
    return Broadcast({labels[f"{letter}_{i}"]: 4 for i in range(1, 3 * k + 1) if i % 3 == 2})


def gen_pentagon_chain(k: int) -> FamilyBundle:
    """``G_k``: ``3k`` five-cycles ``(a_i, b_i, c_i, d_i, e_i)`` chained by
    ``b_i e_{i+1}``.  A cactus with ``MP = 3k`` and ``γ_b = 4k``."""
    labels, blocks = _layout(k, "abcde")
    L = labels
    edges = []
    for i in range(1, 3 * k + 1):
        ring = [L[f"{ch}_{i}"] for ch in "abcde"]
        edges += [(ring[j], ring[(j + 1) % 5]) for j in range(5)]
        if i < 3 * k:
            edges.append((L[f"b_{i}"], L[f"e_{i + 1}"]))
    third = Fraction(1, 3)
    frac = WeightFunction({L[f"{ch}_{i}"]: third for i in range(1, 3 * k + 1) for ch in "bcde"})
    return FamilyBundle(
        "pentagon", k, Graph(15 * k, edges), labels, tuple(blocks),
        PackingWitness(frozenset(L[f"a_{i}"] for i in range(1, 3 * k + 1))),
        _tower_broadcast(L, k, "a"), frac, 3 * k, 4 * k,
    )


def pentagon_diametral_path(bundle: FamilyBundle) -> list[int]:
    """``(e_1, a_1, b_1, e_2, a_2, b_2, ..., b_{3k})``, of length ``9k - 1``."""
    L = bundle.labels
    return [L[f"{ch}_{i}"] for i in range(1, 3 * bundle.k + 1) for ch in "eab"]


def gen_hexagon_triangle_chain(k: int) -> FamilyBundle:
    """``F_k``: six-cycles ``(g_i, a_i, b_i, c_i, d_i, e_i)`` with the triangle
    ``a_i c_i e_i``, chained by ``b_i g_{i+1}``.  Chordal."""
    labels, blocks = _layout(k, "gabcde")
    L = labels
    edges = []
    for i in range(1, 3 * k + 1):
        ring = [L[f"{ch}_{i}"] for ch in "gabcde"]
        edges += [(ring[j], ring[(j + 1) % 6]) for j in range(6)]
        edges += [(L[f"a_{i}"], L[f"c_{i}"]), (L[f"c_{i}"], L[f"e_{i}"]), (L[f"a_{i}"], L[f"e_{i}"])]
        if i < 3 * k:
            edges.append((L[f"b_{i}"], L[f"g_{i + 1}"]))
    third = Fraction(1, 3)
    weights: dict[int, Fraction] = {}
    for i in range(1, 3 * k + 1):
        weights[L[f"g_{i}"]] = third
        weights[L[f"b_{i}"]] = third
        weights[L[f"d_{i}"]] = 2 * third
    return FamilyBundle(
        "fk", k, Graph(18 * k, edges), labels, tuple(blocks),
        PackingWitness(frozenset(L[f"a_{i}"] for i in range(1, 3 * k + 1))),
        _tower_broadcast(L, k, "a"), WeightFunction(weights), 3 * k, 4 * k,
    )


def gen_hartnell_mynhardt(k: int) -> FamilyBundle:
    """``H_k``: copies of ``K_{2,4}`` with sides ``{w_i, y_i}`` and
    ``{x_i, u_i, v_i, z_i}``, chained by ``z_i x_{i+1}``.

    No fractional certificate is attached.  The broadcast puts weight 4 on
    ``w_i`` for ``i ≡ 2 (mod 3)``; from ``w_i`` the chain edges reach every
    vertex of blocks ``i-1``, ``i`` and ``i+1`` within distance 4.
    """
    labels, blocks = _layout(k, "wyxuvz")
    L = labels
    edges = []
    for i in range(1, 3 * k + 1):
        for s in "wy":
            for t in "xuvz":
                edges.append((L[f"{s}_{i}"], L[f"{t}_{i}"]))
        if i < 3 * k:
            edges.append((L[f"z_{i}"], L[f"x_{i + 1}"]))
    return FamilyBundle(
        "hk", k, Graph(18 * k, edges), labels, tuple(blocks),
        PackingWitness(frozenset(L[f"w_{i}"] for i in range(1, 3 * k + 1))),
        _tower_broadcast(L, k, "w"), None, 3 * k, 4 * k,
    )


FAMILIES = {
    "pentagon": gen_pentagon_chain,
    "fk": gen_hexagon_triangle_chain,
    "hk": gen_hartnell_mynhardt,
}
