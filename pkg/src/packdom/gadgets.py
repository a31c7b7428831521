"""Reduction gadgets into (r-)multipacking, with solution mappers.

Three source problems feed the gadgets:

* Hitting Set -> Multipacking (``hs_to_mp``): chordal, half-hyperbolic
  chordal, bipartite and claw-free targets.  Threshold ``k`` on both sides.
* Total Dominating Set -> Multipacking (``tds_to_mp``): regular and
  co-planar (CONV) targets.  Threshold ``k`` on both sides.
* Independent Set -> r-Multipacking (``is_to_rmp``): planar bipartite,
  chordal and bipartite targets.  Threshold ``k`` becomes
  ``k + m(r-1)`` (plus one for the apex variant).

Vertex names follow the constructions, with 0-based source indices, e.g.
``u_3^2`` is the second vertex of the path for universe element 3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Literal, Sequence

from . import graph as gc
from .graph import Graph
from .oracles import (
    PackingWitness,
    SetSystem,
    is_independent,
    is_total_dominating,
    verify_multipacking,
    verify_r_multipacking,
)

HS_VARIANTS = ("chordal", "half_hyperbolic", "bipartite", "clawfree")
TDS_VARIANTS = ("regular", "conv")
IS_VARIANTS = ("planar_bipartite", "chordal", "bipartite")
HS_MIN_K = {"chordal": 2, "half_hyperbolic": 3, "bipartite": 2, "clawfree": 3}

Direction = Literal["fwd", "bwd"]


class GadgetError(ValueError):
    """Raised for inputs a construction does not accept."""


class MappingFailure(GadgetError):
    """A mapped witness fails the threshold it should meet."""


@dataclass
class GadgetInstance:
    graph: Graph
    problem: str  # "hs", "tds" or "is"
    variant: str
    params: dict[str, int]
    names: tuple[str, ...]
    target: int
    source: SetSystem | Graph
    tables: dict[str, object] = field(default_factory=dict)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def to_json(self) -> dict[str, object]:
        return {
            "problem": self.problem,
            "variant": self.variant,
            "params": self.params,
            "target": self.target,
            "graph": gc.graph_to_json(self.graph),
            "names": list(self.names),
            "maps": _jsonable(self.tables),
        }


def _jsonable(x: object) -> object:
    if isinstance(x, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


class _Builder:
    def __init__(self) -> None:
        self.names: list[str] = []
        self.edges: list[tuple[int, int]] = []

    def add(self, name: str) -> int:
        self.names.append(name)
        return len(self.names) - 1

    def join(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def clique(self, vs: Sequence[int]) -> None:
        for u, v in combinations(vs, 2):
            self.join(u, v)

    def path(self, vs: Sequence[int]) -> None:
        for u, v in zip(vs, vs[1:]):
            self.join(u, v)

    def graph(self) -> Graph:
        return Graph(len(self.names), self.edges)


# Havel-Hakimi -------------------------------------------------------------------


def havel_hakimi_regular(n: int, d: int) -> Graph:
    """A simple ``d``-regular graph on ``n`` vertices (needs ``n·d`` even and
    ``d < n``), built by the Havel-Hakimi laying-off procedure."""
    if n < 1 or d < 0 or d >= n:
        raise GadgetError(f"no simple {d}-regular graph on {n} vertices (need 0 <= d < n)")
    if n * d % 2:
        raise GadgetError(f"n·d = {n * d} is odd")
    residual = [d] * n
    edges: list[tuple[int, int]] = []
    adj: list[set[int]] = [set() for _ in range(n)]
    while True:
        order = sorted(range(n), key=lambda v: (-residual[v], v))
        v = order[0]
        need = residual[v]
        if need == 0:
            break
        partners = [u for u in order[1:] if residual[u] > 0 and u not in adj[v]][:need]
        if len(partners) < need:
            raise GadgetError("degree sequence is not graphical")
        residual[v] = 0
        for u in partners:
            residual[u] -= 1
            adj[u].add(v)
            adj[v].add(u)
            edges.append((v, u))
    return Graph(n, edges)


# Hitting Set --------------------------------------------------------------------


def hs_to_mp(variant: str, sys: SetSystem, k: int) -> GadgetInstance:
    """Hitting-Set gadget.  The universe is padded with elements that lie in
    no set until it has at least ``k`` elements; padding changes no hitting
    set and lets the forward map pick ``k`` distinct paths."""
    if variant not in HS_VARIANTS:
        raise GadgetError(f"unknown variant {variant!r}")
    if k < HS_MIN_K[variant]:
        raise GadgetError(f"variant {variant} needs k >= {HS_MIN_K[variant]}")
    if any(not s for s in sys.sets):
        raise GadgetError("an empty set can never be hit; the instance is trivially negative")
    n = max(sys.n, k)
    length = k - 2 if variant == "clawfree" else k - 1
    b = _Builder()
    paths = [[b.add(f"u_{i}^{j}") for j in range(1, length + 1)] for i in range(n)]
    for p in paths:
        b.path(p)
    sets = [b.add(f"S_{j}") for j in range(len(sys.sets))]
    tables: dict[str, object] = {"path": paths, "sets": sets, "universe": sys.n, "padded_universe": n}
    misses = [(i, j) for j, s in enumerate(sys.sets) for i in range(n) if i not in s]
    if variant != "clawfree":
        for i, j in misses:
            b.join(paths[i][0], sets[j])
    if variant == "chordal":
        b.clique(sets)
    elif variant == "half_hyperbolic":
        ys = {}
        for i, j in combinations(range(n), 2):
            y = b.add(f"y_{i},{j}")
            ys[(i, j)] = y
            b.join(y, paths[i][0])
            b.join(y, paths[j][0])
        b.clique(sets + list(ys.values()))
        tables["y"] = ys
    elif variant == "bipartite":
        apex = b.add("C")
        for s in sets:
            b.join(apex, s)
        tables["apex"] = apex
    else:
        b.clique(sets)
        ws = {}
        for i, j in misses:
            w = b.add(f"w_{j},{i}")
            ws[(j, i)] = w
            b.join(sets[j], w)
            b.join(w, paths[i][0])
        for (j, i), (q, p) in combinations(sorted(ws), 2):
            if j == q or i == p:
                b.join(ws[(j, i)], ws[(q, p)])
        tables["w"] = ws
    return GadgetInstance(
        b.graph(), "hs", variant, {"k": k, "n": n, "m": len(sys.sets)}, tuple(b.names), k, sys, tables
    )


# Total Dominating Set -------------------------------------------------------------


def _complement_edges(b: _Builder, g: Graph, firsts: Sequence[int]) -> None:
    for i, j in combinations(range(g.n), 2):
        if not g.has_edge(i, j):
            b.join(firsts[i], firsts[j])


def euler_planarity_bound(g: Graph) -> bool:
    """Necessary condition ``m <= 3n - 6`` (for ``n >= 3``); not a full test."""
    return g.n < 3 or g.m <= 3 * g.n - 6


def tds_to_mp(variant: str, g: Graph, k: int) -> GadgetInstance:
    if variant not in TDS_VARIANTS:
        raise GadgetError(f"unknown variant {variant!r}")
    if k < 2:
        raise GadgetError("k must be at least 2")
    if g.n < k:
        raise GadgetError("the source needs at least k vertices for the forward map")
    b = _Builder()
    if variant == "conv":
        if not euler_planarity_bound(g):
            raise GadgetError("source violates m <= 3n-6, so it is not planar")
        paths = [[b.add(f"u_{i}^{j}") for j in range(1, k)] for i in range(g.n)]
        for p in paths:
            b.path(p)
        _complement_edges(b, g, [p[0] for p in paths])
        return GadgetInstance(
            b.graph(), "tds", variant, {"k": k, "n": g.n, "m": g.m}, tuple(b.names), k, g,
            {"path": paths, "parts": [list(p) for p in paths]},
        )
    if gc.regular_degree(g) != 3:
        raise GadgetError("the regular gadget needs a cubic source")
    if g.n < 6:
        raise GadgetError("the regular gadget needs at least 6 source vertices")
    if k < 4:
        raise GadgetError("the regular gadget needs k >= 4 so the layer range 2..k-2 is nonempty")
    d = g.n - 4
    inner = havel_hakimi_regular(d * d, 2 * d - 1)
    blocks = []
    for a in range(g.n):
        u1 = b.add(f"u_{a}^1")
        layers = {i: [b.add(f"u_{a}^{i},{j}") for j in range(1, d + 1)] for i in range(2, k - 1)}
        T = [b.add(f"u_{a}^{k - 1},{j}") for j in range(1, d * d + 1)]
        for s in layers[2]:
            b.join(u1, s)
        b.clique(layers[2])
        for i in range(2, k - 2):
            for s in layers[i]:
                for t in layers[i + 1]:
                    b.join(s, t)
        for x, y in inner.edges:
            b.join(T[x], T[y])
        chunks = [T[j * d : (j + 1) * d] for j in range(d)]
        for j, chunk in enumerate(chunks):
            for t in chunk:
                b.join(layers[k - 2][j], t)
        blocks.append({"u1": u1, "layers": layers, "T": T, "U": chunks})
    _complement_edges(b, g, [blk["u1"] for blk in blocks])
    parts = [[blk["u1"]] + [v for i in sorted(blk["layers"]) for v in blk["layers"][i]] + blk["T"] for blk in blocks]
    return GadgetInstance(
        b.graph(), "tds", variant, {"k": k, "n": g.n, "m": g.m, "d": d}, tuple(b.names), k, g,
        {"blocks": blocks, "parts": parts},
    )


# Independent Set -> r-multipacking ------------------------------------------------


def is_to_rmp(variant: str, g: Graph, k: int, r: int) -> GadgetInstance:
    if variant not in IS_VARIANTS:
        raise GadgetError(f"unknown variant {variant!r}")
    if r < 2:
        raise GadgetError("r must be at least 2")
    if k < 1:
        raise GadgetError("k must be at least 1")
    b = _Builder()
    P = [[b.add(f"u_{i}")] + [b.add(f"u_{i}^{j}") for j in range(1, r)] for i in range(g.n)]
    for p in P:
        b.path(p)
    edges = g.sorted_edges()
    hub: dict[tuple[int, int], int] = {}
    hub0: dict[tuple[int, int], int] = {}
    spokes: dict[tuple[int, int], list[list[int]]] = {}
    for i, j in edges:
        h = b.add(f"u_{i},{j}")
        h0 = b.add(f"u^0_{i},{j}")
        hub[(i, j)], hub0[(i, j)] = h, h0
        b.join(P[i][0], h)
        b.join(h, P[j][0])
        b.join(h, h0)
        legs = []
        for t in range(1, r):
            leg = [b.add(f"u^{t},{p}_{i},{j}") for p in range(1, r)]
            b.path([h0] + leg)
            legs.append(leg)
        spokes[(i, j)] = legs
    tables: dict[str, object] = {"P": P, "edges": edges, "hub": hub, "hub0": hub0, "spokes": spokes}
    target = k + len(edges) * (r - 1)
    if variant == "chordal":
        b.clique(list(hub.values()))
    elif variant == "bipartite":
        apex = b.add("u")
        for h in hub.values():
            b.join(apex, h)
        tables["apex"] = apex
        target += 1
    return GadgetInstance(
        b.graph(), "is", variant, {"k": k, "r": r, "n": g.n, "m": len(edges)}, tuple(b.names), target, g, tables
    )


def _s_block(inst: GadgetInstance, e: tuple[int, int]) -> tuple[set[int], set[int]]:
    """``(U_{i,j}, S_{i,j})`` as vertex sets."""
    i, j = e
    P = inst.tables["P"]
    u_block = {inst.tables["hub"][e], inst.tables["hub0"][e]}
    for leg in inst.tables["spokes"][e]:
        u_block |= set(leg)
    return u_block, u_block | set(P[i]) | set(P[j])


def reassign(inst: GadgetInstance, M: PackingWitness | Iterable[int]) -> PackingWitness:
    """Normalise an ``r``-multipacking of an Independent-Set gadget so that
    every member is a path end ``u_i^{r-1}`` or ``u^{t,r-1}_{i,j}`` (or the
    apex), keeping its size.

    Works through the hubs ``u_{i,j}`` in order.  With ``p`` members inside
    ``S_{i,j}``: if ``p = r`` and ``P_i`` (else ``P_j``) holds a member, the
    block is replaced by ``u_i^{r-1}`` (resp. ``u_j^{r-1}``) plus all ``r-1``
    leg ends; if ``p < r`` it is replaced by the first ``p`` leg ends.
    Members on paths of isolated source vertices lie in no block and are
    moved to their path end afterwards.
    """
    if inst.problem != "is":
        raise GadgetError("reassign applies to Independent-Set gadgets only")
    r = inst.params["r"]
    members = set(M.members if isinstance(M, PackingWitness) else M)
    if not verify_r_multipacking(inst.graph, members, r):
        raise GadgetError("input is not an r-multipacking of the gadget")
    P = inst.tables["P"]
    for e in inst.tables["edges"]:
        i, j = e
        _, s_block = _s_block(inst, e)
        inside = members & s_block
        p = len(inside)
        ends = [leg[-1] for leg in inst.tables["spokes"][e]]
        if p == r:
            if members & set(P[i]):
                members = (members - s_block) | {P[i][-1]} | set(ends)
            elif members & set(P[j]):
                members = (members - s_block) | {P[j][-1]} | set(ends)
        elif p < r:
            members = (members - s_block) | set(ends[:p])
        else:
            raise GadgetError(f"block {e} holds {p} > r members")
    touched = {x for e in inst.tables["edges"] for x in e}
    for i, path in enumerate(P):
        on_path = members & set(path)
        if i not in touched and len(on_path) == 1:
            # a lone member on an isolated path slides to its end; paths long
            # enough for two members (r >= 4) are left untouched
            members = (members - on_path) | {path[-1]}
    return PackingWitness(frozenset(members), r)


def normalized_endpoints(inst: GadgetInstance) -> set[int]:
    ends = {p[-1] for p in inst.tables["P"]}
    for legs in inst.tables["spokes"].values():
        ends |= {leg[-1] for leg in legs}
    if "apex" in inst.tables:
        ends.add(inst.tables["apex"])
    return ends


# solution maps ----------------------------------------------------------------------


def _pad(chosen: Sequence[int], pool: int, k: int) -> list[int]:
    out = list(dict.fromkeys(chosen))
    for x in range(pool):
        if len(out) >= k:
            break
        if x not in out:
            out.append(x)
    return out


def map_solution(inst: GadgetInstance, direction: Direction, witness: Iterable[int] | PackingWitness) -> list[int]:
    """Forward: source solution -> gadget (r-)multipacking of size ``target``.
    Backward: gadget (r-)multipacking of size ``>= target`` -> source solution
    meeting the source threshold.  Inputs are checked for feasibility."""
    items = sorted(witness.members if isinstance(witness, PackingWitness) else set(witness))
    if direction == "fwd":
        out = _forward(inst, items)
        ok = gadget_feasible(inst, out)
    elif direction == "bwd":
        out = _backward(inst, items)
        ok = source_feasible(inst, out)
    else:
        raise GadgetError(f"unknown direction {direction!r}")
    if not ok:
        raise MappingFailure(f"{direction} image {out} misses the threshold on the other side")
    return out


def gadget_feasible(inst: GadgetInstance, M: Iterable[int]) -> bool:
    """``M`` is an (r-)multipacking of the gadget of size at least ``target``."""
    ms = set(M)
    r = inst.params.get("r")
    ok = verify_r_multipacking(inst.graph, ms, r) if r is not None else verify_multipacking(inst.graph, ms)
    return ok and len(ms) >= inst.target


def source_feasible(inst: GadgetInstance, sol: Iterable[int]) -> bool:
    """``sol`` meets the source threshold ``k``."""
    items = set(sol)
    k = inst.params["k"]
    if inst.problem == "hs":
        assert isinstance(inst.source, SetSystem)
        return inst.source.is_hitting(items) and len(items) <= k
    assert isinstance(inst.source, Graph)
    if inst.problem == "tds":
        return is_total_dominating(inst.source, items) and len(items) <= k
    return is_independent(inst.source, items) and len(items) >= k


def _forward(inst: GadgetInstance, sol: list[int]) -> list[int]:
    k = inst.params["k"]
    if inst.problem == "hs":
        sys = inst.source
        assert isinstance(sys, SetSystem)
        if not sys.is_hitting(sol) or len(sol) > k:
            raise GadgetError(f"not a hitting set of size at most {k}")
        chosen = _pad(sol, inst.params["n"], k)
        return sorted(inst.tables["path"][i][-1] for i in chosen)
    if inst.problem == "tds":
        g = inst.source
        assert isinstance(g, Graph)
        if not is_total_dominating(g, sol) or len(sol) > k:
            raise GadgetError(f"not a total dominating set of size at most {k}")
        chosen = _pad(sol, g.n, k)
        if inst.variant == "conv":
            return sorted(inst.tables["path"][a][-1] for a in chosen)
        return sorted(inst.tables["blocks"][a]["T"][0] for a in chosen)
    g = inst.source
    assert isinstance(g, Graph)
    if not is_independent(g, sol) or len(sol) < k:
        raise GadgetError(f"not an independent set of size at least {k}")
    out = {inst.tables["P"][i][-1] for i in sol[:k]}
    for legs in inst.tables["spokes"].values():
        out |= {leg[-1] for leg in legs}
    if "apex" in inst.tables:
        out.add(inst.tables["apex"])
    return sorted(out)


def _backward(inst: GadgetInstance, M: list[int]) -> list[int]:
    if len(M) < inst.target:
        raise GadgetError(f"witness has {len(M)} < {inst.target} members")
    M = M[: inst.target]
    if inst.problem == "is":
        reassigned = reassign(inst, M)
        return sorted(i for i, p in enumerate(inst.tables["P"]) if p[-1] in reassigned.members)
    if not verify_multipacking(inst.graph, M):
        raise GadgetError("witness is not a multipacking of the gadget")
    if inst.problem == "hs":
        where = {v: i for i, p in enumerate(inst.tables["path"]) for v in p}
        real = inst.tables["universe"]
        return sorted({where[v] for v in M if v in where and where[v] < real})
    where = {v: a for a, part in enumerate(inst.tables["parts"]) for v in part}
    return sorted({where[v] for v in M if v in where})


# structural validators ----------------------------------------------------------------


def validate_structure(inst: GadgetInstance) -> dict[str, bool]:
    """The structural claims each construction makes about its output."""
    g = inst.graph
    out: dict[str, bool] = {}
    if inst.problem == "hs":
        if inst.variant == "chordal":
            out["chordal"] = gc.is_chordal(g)
        elif inst.variant == "half_hyperbolic":
            out["chordal"] = gc.is_chordal(g)
            out["hyperbolicity<=1/2"] = g.metric.connected and gc.hyperbolicity(g) * 2 <= 1
        elif inst.variant == "bipartite":
            out["bipartite"] = gc.is_bipartite(g)
        else:
            out["claw_free"] = gc.is_claw_free(g)
    elif inst.problem == "tds":
        if inst.variant == "regular":
            out["2d_regular"] = gc.regular_degree(g) == 2 * inst.params["d"]
        else:
            src = inst.source
            assert isinstance(src, Graph)
            firsts = [p[0] for p in inst.tables["path"]]
            out["u1_induces_complement"] = all(
                g.has_edge(firsts[i], firsts[j]) != src.has_edge(i, j) for i, j in combinations(range(src.n), 2)
            )
            out["source_euler_bound"] = euler_planarity_bound(src)
    else:
        r = inst.params["r"]
        if inst.variant == "planar_bipartite":
            out["bipartite"] = gc.is_bipartite(g)
            out["max_degree<=max(4,r)"] = max((g.degree(v) for v in range(g.n)), default=0) <= max(4, r)
        elif inst.variant == "chordal":
            out["chordal"] = gc.is_chordal(g)
            out["radius<=r+1"] = g.metric.connected and gc.radius(g) <= r + 1
        else:
            out["bipartite"] = gc.is_bipartite(g)
            out["radius<=r+1"] = g.metric.connected and gc.radius(g) <= r + 1
    return out


# source file formats -------------------------------------------------------------------


def parse_set_system(text: str) -> SetSystem:
    """``"n m"`` on the first line, then one line of space-separated element
    indices per set (a blank line is an empty set)."""
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    while lines and not lines[0].strip():
        lines.pop(0)
    if not lines:
        raise ValueError("empty set-system file")
    try:
        n, m = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ValueError("line 1: expected 'n m'") from exc
    body = lines[1 : 1 + m]
    if len(body) < m:
        raise ValueError(f"header announces {m} sets but only {len(body)} lines follow")
    if any(ln.strip() for ln in lines[1 + m :]):
        raise ValueError(f"more than {m} set lines")
    sets = []
    for no, ln in enumerate(body, 2):
        try:
            sets.append(frozenset(int(t) for t in ln.split()))
        except ValueError as exc:
            raise ValueError(f"line {no}: expected element indices") from exc
    return SetSystem(n, tuple(sets))


def format_set_system(sys: SetSystem) -> str:
    return "\n".join([f"{sys.n} {len(sys.sets)}"] + [" ".join(map(str, sorted(s))) for s in sys.sets]) + "\n"
