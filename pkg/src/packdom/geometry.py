"""Broadcasts and multipackings of finite point sets in general position.

For a point ``v`` of ``P`` and ``s >= 0``, ``N_s[v]`` is ``v`` together with
its ``s`` nearest points; distinct pairwise distances make it unique.  A
broadcast ``f`` dominates when every point lies in ``N_{f(v)}[v]`` for some
tower ``v``.  ``M`` is an ``r``-multipacking when
``|N_s[v] ∩ M| <= floor((s+1)/2)`` for every ``v`` and ``1 <= s <= r``.

Coordinates are exact (:class:`~fractions.Fraction`), so ties are decidable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .multipacking import Bound, BoundsReport
from .oracles import DEFAULT_BUDGET, Inconclusive, default_budget

KISSING = {1: 2, 2: 6, 3: 12, 4: 24}

Point = tuple[Fraction, ...]


class GeneralPositionError(ValueError):
    """Duplicate points or two equal pairwise distances."""


class PointFormatError(ValueError):
    pass


def _sq(p: Point, q: Point) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(p, q)), Fraction(0))


@dataclass(frozen=True)
class PointSet:
    points: tuple[Point, ...]
    order: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        pts = tuple(tuple(Fraction(c) for c in p) for p in self.points)
        if not pts:
            raise PointFormatError("empty point set")
        dims = {len(p) for p in pts}
        if len(dims) != 1 or 0 in dims:
            raise PointFormatError(f"points must share one positive dimension, got {sorted(dims)}")
        seen: dict[Fraction, tuple[int, int]] = {}
        for i, j in combinations(range(len(pts)), 2):
            d = _sq(pts[i], pts[j])
            if d == 0:
                raise GeneralPositionError(f"general position violated: points {i} and {j} coincide")
            if d in seen:
                a, b = seen[d]
                raise GeneralPositionError(
                    f"general position violated: pairs ({a},{b}) and ({i},{j}) are equidistant"
                )
            seen[d] = (i, j)
        object.__setattr__(self, "points", pts)
        # order[v] lists all points by distance from v, starting with v itself
        n = len(pts)
        order = tuple(tuple(sorted(range(n), key=lambda u: _sq(pts[v], pts[u]))) for v in range(n))
        object.__setattr__(self, "order", order)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def nbhd(self, v: int, s: int) -> tuple[int, ...]:
        """``N_s[v]``: ``v`` and its ``s`` nearest points."""
        return self.order[v][: s + 1]

    def rank(self, v: int, u: int) -> int:
        """Smallest ``s`` with ``u`` in ``N_s[v]``."""
        return self.order[v].index(u)


def parse_points(text: str) -> PointSet:
    """One point per line, comma-separated exact decimals; ``#`` starts a comment."""
    pts = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            pts.append(tuple(Fraction(tok.strip()) for tok in line.split(",")))
        except (ValueError, ZeroDivisionError) as exc:
            raise PointFormatError(f"line {lineno}: cannot read {line!r} as coordinates") from exc
    if not pts:
        raise PointFormatError("no points found")
    if len({len(p) for p in pts}) != 1:
        raise PointFormatError("points have mixed dimensions")
    return PointSet(tuple(pts))


def format_points(P: PointSet) -> str:
    return "\n".join(",".join(str(c) for c in p) for p in P.points) + "\n"


# nearest-neighbour graph ------------------------------------------------------


@dataclass(frozen=True)
class NngGraph:
    out: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.out)

    def arcs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.out))

    def edges(self) -> list[tuple[int, int]]:
        return sorted({(min(p, q), max(p, q)) for p, q in enumerate(self.out)})

    def bi_roots(self) -> list[tuple[int, int]]:
        return sorted({(min(p, q), max(p, q)) for p, q in enumerate(self.out) if self.out[q] == p})

    def components(self) -> list[list[int]]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p, q in enumerate(self.out):
            parent[find(p)] = find(q)
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def validate(self) -> bool:
        if any(q == p or not 0 <= q < self.n for p, q in enumerate(self.out)):
            return False
        roots = self.bi_roots()
        return all(sum(1 for a, _ in roots if a in set(comp)) == 1 for comp in self.components())

    def to_json(self) -> dict[str, object]:
        return {"out": list(self.out), "edges": [list(e) for e in self.edges()], "bi_roots": [list(e) for e in self.bi_roots()]}


def build_nng(P: PointSet) -> NngGraph:
    if P.n < 2:
        raise ValueError("a nearest-neighbour graph needs at least two points")
    nng = NngGraph(tuple(P.order[v][1] for v in range(P.n)))
    assert nng.validate(), "each component must hold exactly one mutual pair"
    return nng


def _forest_matching(n: int, edges: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Maximum matching in a forest: repeatedly match a leaf to its neighbour."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    matched = [False] * n
    out: list[tuple[int, int]] = []
    stack = [v for v in range(n) if len(adj[v]) == 1]
    while stack:
        leaf = stack.pop()
        if matched[leaf] or len(adj[leaf]) != 1:
            continue
        (nb,) = adj[leaf]
        matched[leaf] = matched[nb] = True
        out.append((min(leaf, nb), max(leaf, nb)))
        for x in (leaf, nb):
            for y in list(adj[x]):
                adj[y].discard(x)
                if len(adj[y]) == 1 and not matched[y]:
                    stack.append(y)
            adj[x].clear()
    return sorted(out)


def min_edge_cover(nng: NngGraph) -> list[tuple[int, int]]:
    """Maximum matching of the underlying forest, then one nearest-neighbour
    edge per unmatched point.  The mutual pair collapses to a single
    undirected edge, so the underlying graph is acyclic."""
    edges = nng.edges()
    matching = _forest_matching(nng.n, edges)
    covered = {x for e in matching for x in e}
    cover = list(matching)
    for v in range(nng.n):
        if v not in covered:
            q = nng.out[v]
            cover.append((min(v, q), max(v, q)))
    return sorted(cover)


@dataclass(frozen=True)
class PointBroadcast:
    weights: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for v, w in self.weights.items():
            if int(w) < 0:
                raise ValueError(f"negative weight at point {v}")
            if w:
                clean[int(v)] = int(w)
        object.__setattr__(self, "weights", clean)

    @property
    def cost(self) -> int:
        return sum(self.weights.values())

    def to_json(self) -> dict[str, object]:
        return {"f": {str(v): w for v, w in sorted(self.weights.items())}}


def mdb(P: PointSet) -> PointBroadcast:
    """Minimum dominating broadcast: a tower of strength 1 at the tail of
    every minimum-edge-cover edge (the lower index for the mutual pair)."""
    if P.n == 1:
        return PointBroadcast({0: 1})
    nng = build_nng(P)
    towers: dict[int, int] = {}
    for a, b in min_edge_cover(nng):
        tail = a if nng.out[a] == b else b
        towers[tail] = 1
    f = PointBroadcast(towers)
    assert verify_point_broadcast(P, f)
    return f


# verifiers --------------------------------------------------------------------


def _check_indices(P: PointSet, vs: Iterable[int]) -> None:
    bad = sorted(v for v in vs if not 0 <= v < P.n)
    if bad:
        raise IndexError(f"point indices out of range: {bad}")


def verify_point_broadcast(P: PointSet, f: PointBroadcast | Mapping[int, int]) -> bool:
    weights = f.weights if isinstance(f, PointBroadcast) else PointBroadcast(f).weights
    _check_indices(P, weights)
    if any(w > max(P.n - 1, 1) for w in weights.values()):
        return False
    heard = set()
    for v, w in weights.items():
        heard.update(P.nbhd(v, w))
    return len(heard) == P.n


def verify_point_multipacking(P: PointSet, M: Iterable[int], r: int | None = None) -> bool:
    ms = set(M)
    _check_indices(P, ms)
    R = P.n - 1 if r is None else r
    for v in range(P.n):
        count = int(v in ms)
        for s, u in enumerate(P.order[v][1 : R + 1], 1):
            count += u in ms
            if count > (s + 1) // 2:
                return False
    return True


# exact solvers ----------------------------------------------------------------


def gamma_b_points_exact(P: PointSet, budget: int | None = None) -> tuple[int, PointBroadcast]:
    """Cheapest 0/1 dominating broadcast by enumeration in increasing size."""
    if P.n == 1:
        return 1, PointBroadcast({0: 1})
    cover = [frozenset(P.nbhd(v, 1)) for v in range(P.n)]
    limit = budget if budget is not None else default_budget()
    steps = 0
    for size in range(1, P.n + 1):
        for towers in combinations(range(P.n), size):
            steps += 1
            if steps > limit:
                raise Inconclusive(f"0/1 broadcast search exceeded {limit} steps")
            if len(frozenset().union(*(cover[v] for v in towers))) == P.n:
                return size, PointBroadcast({v: 1 for v in towers})
    raise AssertionError("all-ones broadcast always dominates")


def gamma_b_points_unrestricted(P: PointSet, max_n: int = 6) -> tuple[int, PointBroadcast]:
    """Cheapest dominating broadcast over the full codomain ``{0..n-1}``."""
    if P.n > max_n:
        raise Inconclusive(f"unrestricted search is limited to n <= {max_n}")
    if P.n == 1:
        return 1, PointBroadcast({0: 1})
    n = P.n

    def search(v: int, left: int, f: list[int]) -> list[int] | None:
        if v == n:
            return list(f) if verify_point_broadcast(P, dict(enumerate(f))) else None
        for w in range(min(left, n - 1) + 1):
            f.append(w)
            got = search(v + 1, left - w, f)
            f.pop()
            if got is not None:
                return got
        return None

    for cost in range(1, n + 1):
        got = search(0, cost, [])
        if got is not None:
            return sum(got), PointBroadcast(dict(enumerate(got)))
    raise AssertionError("unreachable")


def _windows(P: PointSet, r: int) -> list[tuple[int, int]]:
    """``(mask of N_s[v], cap)`` for every ``v`` and ``1 <= s <= r``, with
    dominated windows (same mask, larger cap) dropped."""
    best: dict[int, int] = {}
    for v in range(P.n):
        mask = 1 << v
        for s, u in enumerate(P.order[v][1 : r + 1], 1):
            mask |= 1 << u
            cap = (s + 1) // 2
            if best.get(mask, cap + 1) > cap:
                best[mask] = cap
    return sorted(best.items(), key=lambda t: t[1])


def mp_points_exact(P: PointSet, r: int | None = None, budget: int | None = None) -> tuple[int, list[int]]:
    """Maximum ``r``-multipacking (``r = n-1`` by default) by branch and bound."""
    n = P.n
    R = n - 1 if r is None else r
    if n == 1 or R < 1:
        return (1, [0]) if n >= 1 else (0, [])
    windows = _windows(P, min(R, n - 1))
    by_point = [[i for i, (mask, _) in enumerate(windows) if mask >> v & 1] for v in range(n)]
    load = [0] * len(windows)
    limit = budget if budget is not None else default_budget()
    best: list[int] = []
    chosen: list[int] = []
    steps = 0

    def dfs(v: int) -> None:
        nonlocal best, steps
        steps += 1
        if steps > limit:
            raise Inconclusive(f"point multipacking search exceeded {limit} nodes")
        if len(chosen) + (n - v) <= len(best):
            return
        if v == n:
            best = list(chosen)
            return
        if all(load[i] < windows[i][1] for i in by_point[v]):
            for i in by_point[v]:
                load[i] += 1
            chosen.append(v)
            dfs(v + 1)
            chosen.pop()
            for i in by_point[v]:
                load[i] -= 1
        dfs(v + 1)

    dfs(0)
    assert verify_point_multipacking(P, best, R)
    return len(best), best


def line_r_multipacking(P: PointSet, r: int) -> tuple[int, list[int]]:
    """Maximum ``r``-multipacking of a point set on a line in ``O(n^2 r)``.

    In one dimension every ``N_s[v]`` is a run of consecutive points in
    sorted order, so each constraint bounds a difference of prefix sums
    ``S_b - S_a``.  Together with ``0 <= S_{i+1} - S_i <= 1`` this is a
    system of difference constraints whose greatest solution is the
    shortest-path distance from ``S_0``; Bellman-Ford over ``O(n r)`` arcs
    finds it.
    """
    if P.dim != 1:
        raise ValueError("line_r_multipacking needs one-dimensional points")
    n = P.n
    if not 1 <= r <= max(n - 1, 1):
        raise ValueError(f"r must lie in [1, {max(n - 1, 1)}]")
    if n == 1:
        return 1, [0]
    pos = sorted(range(n), key=lambda v: P.points[v][0])
    where = {v: i for i, v in enumerate(pos)}
    arcs: list[tuple[int, int, int]] = []
    for i in range(n):
        arcs.append((i, i + 1, 1))
        arcs.append((i + 1, i, 0))
    for v in range(n):
        lo = hi = where[v]
        for s, u in enumerate(P.order[v][1 : r + 1], 1):
            lo, hi = min(lo, where[u]), max(hi, where[u])
            arcs.append((lo, hi + 1, (s + 1) // 2))
    INF = n + 1
    dist = [0] + [INF] * n
    for _ in range(n + 1):
        changed = False
        for a, b, w in arcs:
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
        if not changed:
            break
    members = sorted(pos[i] for i in range(n) if dist[i + 1] - dist[i] == 1)
    assert verify_point_multipacking(P, members, r)
    return dist[n], members


# bounds -----------------------------------------------------------------------


def bounds_points(P: PointSet) -> BoundsReport:
    """Kissing-number bounds on ``γ_b(P)`` and the one-dimensional and planar
    multipacking bounds, applied for ``n >= 2``."""
    n, d = P.n, P.dim
    flags: dict[str, object] = {"n": n, "dim": d}
    if n == 1:
        flags["note"] = "n = 1: gamma_b = 1 by definition; bound theorems need n >= 2"
        one = [Bound("gamma_b", 1, "definition"), Bound("MP", 1, "definition")]
        return BoundsReport(list(one), list(one), flags)
    lower = [Bound("gamma_b", -(-n // 2), "gamma_b >= n/2"), Bound("MP", 1, "any single point")]
    upper = [Bound("gamma_b", n, "gamma_b <= n")]
    tau = KISSING.get(d)
    if tau is not None:
        flags["kissing_number"] = tau
        upper.append(Bound("gamma_b", tau * n // (tau + 1), f"gamma_b <= tau n/(tau+1), tau = {tau}"))
    else:
        flags["kissing_number"] = None
    if d == 2:
        upper.append(Bound("gamma_b", 5 * n // 6, "plane: gamma_b <= 5n/6"))
    if d == 1:
        lower.append(Bound("MP", n // 3, "line: MP >= floor(n/3)"))
        upper.append(Bound("MP", n // 2, "line: MP <= floor(n/2)"))
    if d <= 2 and n == 6:
        lower.append(Bound("MP", 2, "six points in the plane admit a multipacking of size 2"))
    gb_hi = min(b.value for b in upper if b.quantity == "gamma_b")
    upper.append(Bound("MP", gb_hi, "MP <= gamma_b"))
    return BoundsReport(lower, upper, flags)


__all__ = [
    "DEFAULT_BUDGET",
    "GeneralPositionError",
    "KISSING",
    "NngGraph",
    "PointBroadcast",
    "PointFormatError",
    "PointSet",
    "bounds_points",
    "build_nng",
    "format_points",
    "gamma_b_points_exact",
    "gamma_b_points_unrestricted",
    "line_r_multipacking",
    "mdb",
    "min_edge_cover",
    "mp_points_exact",
    "parse_points",
    "verify_point_broadcast",
    "verify_point_multipacking",
]
