"""Graph representation, metric primitives and structural classifiers.

Vertices are the integers ``0..n-1``.  A :class:`Graph` is immutable once
built; metric data (all-pairs hop distances, eccentricities, ball bitmasks)
is computed lazily on first use and cached on the instance.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

INF = math.inf


class GraphFormatError(ValueError):
    """Raised when a graph file or edge list is malformed."""


class DisconnectedGraphError(ValueError):
    """Raised by metric operations that need a connected graph."""


class Graph:
    """Simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "_metric", "_masks")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()) -> None:
        if n < 0:
            raise GraphFormatError("vertex count must be non-negative")
        norm: set[tuple[int, int]] = set()
        adj: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in norm:
                raise GraphFormatError(f"duplicate edge {key}")
            norm.add(key)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges: frozenset[tuple[int, int]] = frozenset(norm)
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self._metric: MetricCache | None = None
        self._masks: list[list[int]] | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # metric ---------------------------------------------------------------

    @property
    def metric(self) -> MetricCache:
        if self._metric is None:
            self._metric = all_pairs_distances(self)
        return self._metric

    def dist(self, u: int, v: int) -> float:
        return self.metric.dist[u][v]

    def ball_masks(self) -> list[list[int]]:
        """``masks[v][r]`` is the bitmask of ``N_r[v]`` for ``0 <= r <= ecc(v)``.

        For disconnected graphs the list stops at the eccentricity inside the
        component of ``v``; larger radii give the same ball.
        """
        if self._masks is None:
            dist = self.metric.dist
            masks: list[list[int]] = []
            for v in range(self.n):
                row = dist[v]
                top = max((int(d) for d in row if d != INF), default=0)
                layer = [0] * (top + 1)
                for u, d in enumerate(row):
                    if d != INF:
                        layer[int(d)] |= 1 << u
                acc = 0
                cum = []
                for bits in layer:
                    acc |= bits
                    cum.append(acc)
                masks.append(cum)
            self._masks = masks
        return self._masks


@dataclass(frozen=True)
class MetricCache:
    dist: tuple[tuple[float, ...], ...]
    ecc: tuple[float, ...]
    rad: float
    diam: float
    centers: frozenset[int]
    connected: bool


def bfs(g: Graph, source: int, allowed: set[int] | frozenset[int] | None = None) -> list[float]:
    """Hop distances from ``source``; ``INF`` for unreachable vertices.

    When ``allowed`` is given the search only walks through those vertices.
    """
    dist = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] == INF and (allowed is None or w in allowed):
                dist[w] = du
                queue.append(w)
    return dist


def all_pairs_distances(g: Graph) -> MetricCache:
    """Repeated BFS; ``O(n*m)``."""
    dist = tuple(tuple(bfs(g, v)) for v in range(g.n))
    ecc = tuple(max(row) if row else 0 for row in dist)
    connected = all(e != INF for e in ecc)
    if g.n == 0:
        return MetricCache(dist, ecc, 0, 0, frozenset(), True)
    rad = min(ecc)
    diam = max(ecc)
    centers = frozenset(v for v in range(g.n) if ecc[v] == rad)
    return MetricCache(dist, ecc, rad, diam, centers, connected)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range [0, {g.n})")


def require_connected(g: Graph) -> None:
    if g.n == 0 or not g.metric.connected:
        raise DisconnectedGraphError("operation needs a connected, non-empty graph")


def radius(g: Graph) -> int:
    require_connected(g)
    return int(g.metric.rad)


def diameter(g: Graph) -> int:
    require_connected(g)
    return int(g.metric.diam)


def eccentricity(g: Graph, v: int) -> float:
    _check_vertex(g, v)
    return g.metric.ecc[v]


def ball(g: Graph, v: int, r: int) -> frozenset[int]:
    """Closed ball ``N_r[v]``."""
    _check_vertex(g, v)
    if r < 0:
        raise ValueError("radius must be non-negative")
    row = g.metric.dist[v]
    return frozenset(u for u in range(g.n) if row[u] <= r)


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps: list[list[int]] = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def packing_radius(g: Graph) -> int:
    """Largest radius a multipacking check needs: the maximum component radius."""
    dist = g.metric.dist
    best = 0
    for comp in components(g):
        best = max(best, min(int(max(dist[v][u] for u in comp)) for v in comp))
    return best


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph relabelled ``0..k-1``; also returns the old labels."""
    old = sorted(set(vertices))
    index = {v: i for i, v in enumerate(old)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in index and v in index]
    return Graph(len(old), edges), old


# paths -----------------------------------------------------------------------


def shortest_path(g: Graph, u: int, v: int, allowed: set[int] | None = None) -> list[int]:
    """A shortest ``u``-``v`` path, parents chosen by lowest index."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    dist = bfs(g, v, allowed)
    if dist[u] == INF:
        raise DisconnectedGraphError(f"no path between {u} and {v}")
    path = [u]
    cur = u
    while cur != v:
        cur = min(w for w in g.adj[cur] if dist[w] == dist[cur] - 1)
        path.append(cur)
    return path


def is_path(g: Graph, p: Sequence[int]) -> bool:
    if not p or len(set(p)) != len(p):
        return False
    if any(not 0 <= v < g.n for v in p):
        return False
    return all(p[i + 1] in g.adj[p[i]] for i in range(len(p) - 1))


def is_isometric_path(g: Graph, p: Sequence[int]) -> bool:
    """True iff ``p`` is a path whose length equals the distance of its ends."""
    if not is_path(g, p):
        raise ValueError("input is not a path of the graph")
    return g.dist(p[0], p[-1]) == len(p) - 1


def diametral_path(g: Graph) -> list[int]:
    """Isometric path of length ``diam(G)`` between the lexicographically
    smallest pair of vertices at maximum distance."""
    require_connected(g)
    d = g.metric.diam
    dist = g.metric.dist
    for u in range(g.n):
        for v in range(u, g.n):
            if dist[u][v] == d:
                return shortest_path(g, u, v)
    raise AssertionError("unreachable")


# classifiers -----------------------------------------------------------------


def is_bipartite(g: Graph) -> bool:
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def perfect_elimination_candidate(g: Graph) -> list[int]:
    """Reverse of a maximum cardinality search order."""
    weight = [0] * g.n
    numbered = [False] * g.n
    order: list[int] = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not numbered[u]), key=lambda u: (weight[u], -u))
        numbered[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not numbered[w]:
                weight[w] += 1
    order.reverse()
    return order


def is_perfect_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        parent = min(later, key=lambda w: pos[w])
        rest = set(later) - {parent}
        if not rest <= g.adj[parent]:
            return False
    return True


def is_chordal(g: Graph) -> bool:
    return is_perfect_elimination_ordering(g, perfect_elimination_candidate(g))


def biconnected_blocks(g: Graph) -> list[tuple[frozenset[int], list[tuple[int, int]]]]:
    """Blocks as ``(vertex set, edge list)`` pairs; isolated vertices are skipped."""
    disc = [-1] * g.n
    low = [0] * g.n
    blocks: list[tuple[frozenset[int], list[tuple[int, int]]]] = []
    timer = 0
    for root in range(g.n):
        if disc[root] != -1 or not g.adj[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= disc[p]:
                    block_edges = []
                    while True:
                        e = edge_stack.pop()
                        block_edges.append(e)
                        if e == (p, u):
                            break
                    verts = frozenset(x for e in block_edges for x in e)
                    blocks.append((verts, block_edges))
    return blocks


def is_cactus(g: Graph) -> bool:
    """Connected and every block is a single edge or a cycle."""
    if g.n == 0 or not g.metric.connected:
        return False
    for verts, edges in biconnected_blocks(g):
        if len(edges) == 1:
            continue
        if len(edges) != len(verts):
            return False
    return True


def is_claw_free(g: Graph) -> bool:
    for v in range(g.n):
        nb = sorted(g.adj[v])
        for x, y, z in combinations(nb, 3):
            if y not in g.adj[x] and z not in g.adj[x] and z not in g.adj[y]:
                return False
    return True


def regular_degree(g: Graph) -> int | None:
    degs = {len(a) for a in g.adj}
    return degs.pop() if len(degs) == 1 else None


@dataclass(frozen=True)
class Classification:
    connected: bool
    bipartite: bool
    chordal: bool
    cactus: bool
    claw_free: bool
    regular_degree: int | None

    def as_dict(self) -> dict[str, object]:
        return {
            "connected": self.connected,
            "bipartite": self.bipartite,
            "chordal": self.chordal,
            "cactus": self.cactus,
            "claw_free": self.claw_free,
            "regular_degree": self.regular_degree,
        }


def classify(g: Graph) -> Classification:
    return Classification(
        connected=g.n > 0 and g.metric.connected,
        bipartite=is_bipartite(g),
        chordal=is_chordal(g),
        cactus=is_cactus(g),
        claw_free=is_claw_free(g),
        regular_degree=regular_degree(g),
    )


def hyperbolicity(g: Graph) -> Fraction:
    """Four-point hyperbolicity by enumerating all 4-subsets; ``O(n^4)``."""
    require_connected(g)
    d = [[int(x) for x in row] for row in g.metric.dist]
    best = 0
    for x, y, z, w in combinations(range(g.n), 4):
        dx = d[x]
        s1 = dx[y] + d[z][w]
        s2 = dx[z] + d[y][w]
        s3 = dx[w] + d[y][z]
        if s1 >= s2:
            if s2 >= s3:
                gap = s1 - s2
            elif s1 >= s3:
                gap = s1 - s3
            else:
                gap = s3 - s1
        else:
            if s1 >= s3:
                gap = s2 - s1
            elif s2 >= s3:
                gap = s2 - s3
            else:
                gap = s3 - s2
        if gap > best:
            best = gap
    return Fraction(best, 2)


# file formats ----------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the ``"n m"`` edge-list format or the JSON ``{"n", "edges"}`` form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
            n = int(obj["n"])
            raw = [tuple(e) for e in obj["edges"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise GraphFormatError(f"malformed JSON graph: {exc}") from exc
        seen: set[tuple[int, int]] = set()
        for i, e in enumerate(raw):
            if len(e) != 2:
                raise GraphFormatError(f"edge #{i} does not have two endpoints")
            key = (min(e), max(e))
            if e[0] == e[1]:
                raise GraphFormatError(f"edge #{i} {list(e)}: loop")
            if key in seen:
                raise GraphFormatError(f"edge #{i} {list(e)}: duplicate edge")
            seen.add(key)
        return Graph(n, raw)

    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines())]
    lines = [(no, toks) for no, toks in lines if toks and not toks[0].startswith("#")]
    if not lines:
        raise GraphFormatError("empty graph file")
    head_no, head = lines[0]
    try:
        n, m = (int(t) for t in head)
    except ValueError as exc:
        raise GraphFormatError(f"line {head_no}: expected 'n m'") from exc
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges but {len(body)} edge lines follow")
    edges = []
    seen = set()
    for no, toks in body:
        try:
            u, v = (int(t) for t in toks)
        except ValueError as exc:
            raise GraphFormatError(f"line {no}: expected 'u v'") from exc
        if u == v:
            raise GraphFormatError(f"line {no}: loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {no}: endpoint outside [0, {n})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {no}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u, v))
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def graph_to_json(g: Graph) -> dict[str, object]:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


# small named graphs used across tests and docs ---------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
