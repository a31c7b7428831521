"""Constructive multipacking for cacti of size at least ``(2/3)·rad − 11/3``.

Pipeline: pick a centre ``c``; take two radial isometric paths ``P`` and
``Q`` sharing only ``c``; look for the (at most one) path ``F1`` joining
them away from ``c``; rename the resulting cycle-plus-pendant-paths
subgraph ``H`` and read a multipacking off it with one of three "every
third vertex" constructions, chosen by where the vertices at distance
``rad`` from the midpoint of ``F1`` lie.

Each construction is verified against the whole graph before it is
returned.  The code is quadratic (it relies on all-pairs BFS distances);
the linear-time bound is not a goal at this scale.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .graph import INF, Graph, bfs, is_cactus, shortest_path
from .oracles import PackingWitness, verify_multipacking

Side = Literal["P", "Q"]


class NotACactusError(ValueError):
    pass


# radial paths ----------------------------------------------------------------


def find_radial_pair(g: Graph, c: int) -> tuple[list[int], list[int]]:
    """Two isometric paths from ``c``: ``P`` of length ``ecc(c)`` and the
    longest ``Q`` sharing only ``c`` with ``P``.

    The search for ``Q`` runs BFS in ``G - (V(P) - c)`` and keeps a vertex
    only when its restricted distance equals its distance in ``G``; such a
    restricted shortest path is then isometric in ``G``.  Works on any
    connected graph; on a graph of radius ``r`` with centre ``c`` the
    returned ``Q`` has length ``r-1`` or ``r``.
    """
    dist = g.metric.dist[c]
    r = int(g.metric.ecc[c])
    if r < 1:
        raise ValueError("radial paths need eccentricity at least 1")
    far = min(v for v in range(g.n) if dist[v] == r)
    P = shortest_path(g, c, far)
    allowed = set(range(g.n)) - set(P[1:])
    restricted = bfs(g, c, allowed)
    best, best_d = c, 0
    for u in range(g.n):
        du = restricted[u]
        if du != INF and du == dist[u] and du > best_d:
            best, best_d = u, int(du)
    Q = shortest_path(g, c, best, allowed)
    return P, Q


def find_joining_path(g: Graph, P: Sequence[int], Q: Sequence[int]) -> tuple[int, int, list[int]] | None:
    """The path ``F1`` from some ``v_i`` of ``P - c`` to some ``w_j`` of
    ``Q - c`` avoiding ``c`` and meeting ``P``, ``Q`` only at its ends.

    Returns ``(i, j, F1)`` with ``F1`` running from ``v_i`` to ``w_j``, or
    ``None``.  In a cactus there is at most one such path.
    """
    if not P or not Q or P[0] != Q[0]:
        raise ValueError("P and Q must start at the same centre")
    c = P[0]
    if set(P) & set(Q) != {c}:
        raise ValueError("P and Q must share only their first vertex")
    p_index = {v: i for i, v in enumerate(P) if i > 0}
    q_index = {w: j for j, w in enumerate(Q) if j > 0}
    blocked = set(P) | set(Q)
    parent: dict[int, int | None] = {v: None for v in p_index}
    queue = deque(sorted(p_index, key=lambda v: p_index[v]))
    while queue:
        u = queue.popleft()
        for w in sorted(g.adj[u]):
            if w in q_index:
                path = [w, u]
                cur = parent[u]
                while cur is not None:
                    path.append(cur)
                    cur = parent[cur]
                path.reverse()
                return p_index[path[0]], q_index[w], path
            if w in blocked or w in parent:
                continue
            parent[w] = u
            queue.append(w)
    return None


# the H structure -------------------------------------------------------------


@dataclass(frozen=True)
class HStructure:
    """Cycle ``c_0..c_{γ-1}`` with pendant isometric paths ``a`` at ``c_0``,
    ``b`` at ``c_m`` and (optionally) ``e`` at ``c_t``.

    ``γ = 0`` encodes the case without a joining path; the pendant paths
    then describe ``P`` and ``Q`` themselves.
    """

    cycle: tuple[int, ...]
    a: tuple[int, ...]
    b: tuple[int, ...]
    m: int
    e: tuple[int, ...] = ()
    t: int | None = None
    isometric_path_case: bool = False
    meta: dict[str, int] = field(default_factory=dict, compare=False)

    @property
    def gamma(self) -> int:
        return len(self.cycle)

    @property
    def alpha(self) -> int:
        return len(self.a) - 1

    @property
    def beta(self) -> int:
        return len(self.b) - 1

    @property
    def delta(self) -> int:
        return max(0, len(self.e) - 1)

    def c(self, i: int) -> int:
        return self.cycle[i % self.gamma]

    def reflected(self) -> HStructure:
        """Same subgraph with the cycle read backwards from ``c_0``."""
        gam = self.gamma
        cyc = tuple(self.cycle[(-i) % gam] for i in range(gam))
        t = None if self.t is None else (-self.t) % gam
        return HStructure(cyc, self.a, self.b, (gam - self.m) % gam, self.e, t, False, dict(self.meta))

    def vertices(self) -> set[int]:
        return set(self.cycle) | set(self.a) | set(self.b) | set(self.e)

    def validate(self, g: Graph) -> None:
        gam = self.gamma
        if gam:
            for i in range(gam):
                if not g.has_edge(self.cycle[i], self.cycle[(i + 1) % gam]):
                    raise ValueError(f"c_{i} c_{(i + 1) % gam} is not an edge")
            if len(set(self.cycle)) != gam:
                raise ValueError("cycle repeats a vertex")
            if self.a[0] != self.cycle[0] or self.b[0] != self.cycle[self.m]:
                raise ValueError("pendant paths must start at c_0 and c_m")
        for name, path in (("a", self.a), ("b", self.b), ("e", self.e)):
            for u, v in zip(path, path[1:]):
                if not g.has_edge(u, v):
                    raise ValueError(f"path {name} uses a non-edge {u}-{v}")
        cyc = set(self.cycle)
        paths = [set(self.a), set(self.b), set(self.e)]
        anchors = [{self.a[0]}, {self.b[0]}, {self.e[0]} if self.e else set()]
        if gam:
            for s, anchor in zip(paths, anchors):
                if s and s & cyc != anchor:
                    raise ValueError("a pendant path meets the cycle outside its anchor")
        for i in range(3):
            for j in range(i + 1, 3):
                if paths[i] & paths[j] - (cyc if gam else set(self.a[:1])):
                    raise ValueError("pendant paths share interior vertices")


def build_h(
    g: Graph,
    P: Sequence[int],
    Q: Sequence[int],
    joining: tuple[int, int, Sequence[int]] | None = None,
    r_prime: Sequence[int] | None = None,
) -> HStructure:
    """Relabel ``P ∪ Q ∪ F1 ∪ R'`` into the ``H`` form.

    With ``F1 = (v_i, ..., w_j)`` the cycle is
    ``F2 = (v_i, ..., v_1, c, w_1, ..., w_j)`` followed by the interior of
    ``F1`` walked back from ``w_j`` to ``v_i``.  ``r_prime`` must start on
    the cycle.
    """
    if joining is None:
        return HStructure((), tuple(P), tuple(Q), 0, isometric_path_case=True,
                          meta={"r": len(P) - 1, "r_prime": len(Q) - 1})
    i, j, F1 = joining
    if F1[0] != P[i] or F1[-1] != Q[j]:
        raise ValueError("joining path must run from v_i to w_j")
    F2 = list(P[i::-1]) + list(Q[1 : j + 1])
    cycle = F2 + list(F1[-2:0:-1])
    m = i + j
    e: tuple[int, ...] = ()
    t = None
    if r_prime:
        if r_prime[0] not in cycle:
            raise ValueError("R' must start on the cycle")
        t = cycle.index(r_prime[0])
        e = tuple(r_prime)
    h = HStructure(
        tuple(cycle), tuple(P[i:]), tuple(Q[j:]), m, e, t,
        meta={"i": i, "j": j, "k": i, "x": len(F1) - 1, "r": len(P) - 1, "r_prime": len(Q) - 1},
    )
    h.validate(g)
    return h


# the three constructions -------------------------------------------------------


def _every_third(seq: Sequence[int], start: int = 0) -> set[int]:
    return {seq[i] for i in range(start, len(seq), 3)}


def choice1(h: HStructure, alpha1: int, beta1: int) -> PackingWitness:
    """``{a_i} ∪ {c_i : i <= α1} ∪ {b_i} ∪ {c_i : m <= i <= m+β1}`` (every
    third index, residue fixed by each path's anchor) minus ``c_0, c_m``."""
    gam, m = h.gamma, h.m
    half = gam // 2
    if not (0 <= alpha1 <= m - 1 and 0 <= beta1 <= gam - 1 - m):
        raise ValueError("choice1 needs 0 <= α1 <= m-1 and 0 <= β1 <= γ-1-m")
    if alpha1 > half - 1 or beta1 > half - 1:
        raise ValueError("choice1 needs α1, β1 <= floor(γ/2) - 1")
    out = _every_third(h.a) | _every_third(h.b)
    out |= {h.cycle[i] for i in range(0, alpha1 + 1, 3)}
    out |= {h.cycle[i] for i in range(m, m + beta1 + 1, 3)}
    out -= {h.cycle[0], h.cycle[m]}
    return PackingWitness(frozenset(out))


def choice1_bound(h: HStructure, alpha1: int, beta1: int) -> int:
    return (h.alpha + alpha1 + 1) // 3 + (h.beta + beta1 + 1) // 3 - 2


def choice2(h: HStructure, side: Side) -> PackingWitness:
    """Every third vertex of one pendant path together with every third
    vertex of the cycle in phase with that path's anchor, minus the anchor."""
    gam = h.gamma
    if gam < 3:
        raise ValueError("choice2 needs a cycle of length at least 3")
    path, anchor = (h.a, 0) if side == "P" else (h.b, h.m)
    out = _every_third(path)
    out |= {h.cycle[i] for i in range(gam) if (i - anchor) % 3 == 0}
    out.discard(h.cycle[anchor])
    return PackingWitness(frozenset(out))


def choice2_bound(h: HStructure, side: Side) -> int:
    length = h.alpha if side == "P" else h.beta
    return h.gamma // 3 + length // 3 - 1


def delta_offset(g: Graph, h: HStructure, side: Side) -> int:
    """``δ1 = floor(γ/2) - d(c_0, c_t)`` for the P-side, ``δ2`` with ``c_m``
    for the Q-side."""
    if h.t is None:
        raise ValueError("no R' path attached")
    anchor = h.cycle[0] if side == "P" else h.cycle[h.m]
    return h.gamma // 2 - int(g.dist(anchor, h.cycle[h.t]))


def choice3(g: Graph, h: HStructure, side: Side) -> PackingWitness:
    """Choice 2 plus ``{e_i : δ'+2 <= i <= δ, i ≡ δ'+1 (mod 3)}``."""
    d1 = delta_offset(g, h, side)
    if h.delta < d1:
        raise ValueError(f"choice3 needs δ >= {d1}, got {h.delta}")
    out = set(choice2(h, side).members)
    out |= {h.e[i] for i in range(d1 + 2, h.delta + 1) if (i - d1 - 1) % 3 == 0}
    return PackingWitness(frozenset(out))


def choice3_bound(g: Graph, h: HStructure, side: Side) -> int:
    return choice2_bound(h, side) + (h.delta - delta_offset(g, h, side)) // 3


def cycle_third(h: HStructure) -> PackingWitness:
    """``c_0, c_3, ...`` stopping before the wrap-around can put two members
    at distance below 3; size ``floor(γ/3)``."""
    return PackingWitness(frozenset(h.cycle[i] for i in range(0, h.gamma - 2, 3)))


# driver ------------------------------------------------------------------------


def size_bound(rad: int) -> int:
    """``ceil((2/3)·rad − 11/3)``."""
    return -((11 - 2 * rad) // 3)


@dataclass
class CactusTrace:
    rad: int
    center: int
    branch: str
    bound: int
    h: HStructure | None = None
    details: dict[str, int] = field(default_factory=dict)


def cactus_multipacking_traced(g: Graph) -> tuple[PackingWitness, CactusTrace]:
    if not is_cactus(g):
        raise NotACactusError("input is not a connected cactus")
    metric = g.metric
    r = int(metric.rad)
    c = min(metric.centers)
    bound = size_bound(r)
    if r <= 1:
        return PackingWitness(frozenset({c})), CactusTrace(r, c, "radius<=1", bound)

    P, Q = find_radial_pair(g, c)
    if not r - 1 <= len(Q) - 1 <= r:
        raise AssertionError("disjoint radial path lemma violated")
    joining = find_joining_path(g, P, Q)
    line = list(reversed(Q)) + list(P[1:])

    def finish(w: PackingWitness, branch: str, h: HStructure | None, **details: int) -> tuple[PackingWitness, CactusTrace]:
        trace = CactusTrace(r, c, branch, bound, h, dict(details))
        if not verify_multipacking(g, w):
            raise AssertionError(f"branch {branch} produced an invalid multipacking")
        return w, trace

    if joining is None:
        return finish(PackingWitness(frozenset(line[::3])), "no-joining-path", build_h(g, P, Q))
    h = build_h(g, P, Q, joining)
    gam, m = h.gamma, h.m
    x = gam - m
    if x >= m:
        return finish(PackingWitness(frozenset(line[::3])), "long-outer-arc", h, x=x, m=m)

    k = h.meta["k"]
    y, z = k, m - k
    half = gam // 2
    assert max(x, y, z) <= half, "arc-length fact violated"
    gidx = m + x // 2
    cg = h.cycle[gidx]
    dist_g = metric.dist[cg]
    s_r = [u for u in range(g.n) if dist_g[u] == r]
    details = {"x": x, "y": y, "z": z, "gamma": gam, "m": m, "alpha": h.alpha, "beta": h.beta}

    if any(u in set(h.a) for u in s_r):
        hr = h.reflected()
        return finish(choice1(hr, x - 1, z - 1), "far-on-a", hr, **details)
    if any(u in set(h.b) for u in s_r):
        return finish(choice1(h, y - 1, x - 1), "far-on-b", h, **details)
    if any(u in set(h.cycle) for u in s_r):
        return finish(cycle_third(h), "far-on-cycle", h, **details)

    # the farthest vertices from c_g lie off H
    if x >= h.alpha:
        return finish(choice2(h, "Q"), "far-off-h:x>=alpha", h, **details)
    if x >= h.beta:
        return finish(choice2(h, "P"), "far-off-h:x>=beta", h, **details)
    if r <= half + x // 2:
        return finish(choice2(h, "P"), "far-off-h:near", h, **details)
    u = min(s_r)
    R = shortest_path(g, cg, u)
    on_h = h.vertices()
    hpos = max(i for i, v in enumerate(R) if v in on_h)
    t = h.cycle.index(R[hpos]) if R[hpos] in h.cycle else -1
    if not 1 <= t <= m - 1:
        raise AssertionError("R leaves H outside the interior of F2")
    h6 = HStructure(h.cycle, h.a, h.b, m, tuple(R[hpos:]), t, False, dict(h.meta))
    h6.validate(g)
    details.update(t=t, delta=h6.delta)
    side: Side = "P" if z >= y else "Q"
    return finish(choice3(g, h6, side), f"far-off-h:detour:{side}", h6, **details)


def cactus_multipacking(g: Graph) -> PackingWitness:
    """Verified multipacking of a cactus of size at least
    ``ceil((2/3)·rad − 11/3)``."""
    return cactus_multipacking_traced(g)[0]
