"""Exact solvers and verifiers used as ground truth.

Every solver here is exponential in the worst case.  They run a node
counter and raise :class:`Inconclusive` when it is exhausted, so a budget
overrun never masquerades as an answer.  All set arithmetic is done on
Python integers used as bitmasks over the vertex indices.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .graph import INF, Graph, components, diametral_path, induced_subgraph, packing_radius

DEFAULT_BUDGET = 2_000_000


class Inconclusive(RuntimeError):
    """A search ran out of its node budget before reaching a verdict."""


class Infeasible(ValueError):
    """The instance admits no feasible solution at all."""


def default_budget() -> int:
    raw = os.environ.get("PACKDOM_BUDGET")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_BUDGET


class _Counter:
    __slots__ = ("left", "limit")

    def __init__(self, budget: int | None) -> None:
        self.limit = default_budget() if budget is None else budget
        self.left = self.limit

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise Inconclusive(f"search exceeded its budget of {self.limit} nodes")


# domain types ----------------------------------------------------------------


@dataclass(frozen=True)
class PackingWitness:
    members: frozenset[int]
    r_max: int | None = None

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def to_json(self) -> dict[str, object]:
        return {"M": self.sorted()}


@dataclass(frozen=True)
class Broadcast:
    weights: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for v, w in self.weights.items():
            if int(w) < 0:
                raise ValueError(f"negative broadcast weight at vertex {v}")
            if w:
                clean[int(v)] = int(w)
        object.__setattr__(self, "weights", clean)

    @property
    def cost(self) -> int:
        return sum(self.weights.values())

    def towers(self) -> list[tuple[int, int]]:
        return sorted(self.weights.items())

    def to_json(self) -> dict[str, object]:
        return {"f": {str(v): w for v, w in self.towers()}}


@dataclass(frozen=True)
class SetSystem:
    n: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        sets = tuple(frozenset(s) for s in self.sets)
        for j, s in enumerate(sets):
            bad = [x for x in s if not 0 <= x < self.n]
            if bad:
                raise ValueError(f"set #{j} has elements outside [0, {self.n}): {sorted(bad)}")
        object.__setattr__(self, "sets", sets)

    def is_hitting(self, h: Iterable[int]) -> bool:
        hs = set(h)
        return all(s & hs for s in self.sets)


def _members(M: PackingWitness | Iterable[int]) -> frozenset[int]:
    return M.members if isinstance(M, PackingWitness) else frozenset(M)


def _mask(vs: Iterable[int]) -> int:
    out = 0
    for v in vs:
        out |= 1 << v
    return out


# verifiers -------------------------------------------------------------------


def _check_members(g: Graph, ms: frozenset[int]) -> None:
    bad = [v for v in ms if not 0 <= v < g.n]
    if bad:
        raise ValueError(f"vertices out of range: {sorted(bad)}")


def verify_r_multipacking(g: Graph, M: PackingWitness | Iterable[int], r: int) -> bool:
    """``|N_s[v] ∩ M| <= s`` for every vertex ``v`` and ``1 <= s <= r``."""
    ms = _members(M)
    _check_members(g, ms)
    if not ms:
        return True
    mask = _mask(ms)
    size = len(ms)
    masks = g.ball_masks()
    for v in range(g.n):
        layers = masks[v]
        top = len(layers) - 1
        # a ball of radius s >= |M| can never be overfull
        for s in range(1, min(r, size - 1) + 1):
            if (layers[min(s, top)] & mask).bit_count() > s:
                return False
    return True


def verify_multipacking(g: Graph, M: PackingWitness | Iterable[int]) -> bool:
    """Multipacking check.  Radii beyond the largest component radius add
    nothing, so the check stops there."""
    return verify_r_multipacking(g, M, max(1, packing_radius(g)))


@dataclass(frozen=True)
class BroadcastVerdict:
    dominating: bool
    cost: int
    efficient: bool


def verify_broadcast(g: Graph, f: Broadcast | Mapping[int, int]) -> BroadcastVerdict:
    if not isinstance(f, Broadcast):
        f = Broadcast(dict(f))
    _check_members(g, frozenset(f.weights))
    masks = g.ball_masks()
    covered = 0
    efficient = True
    for v, w in f.towers():
        layers = masks[v]
        ball = layers[min(w, len(layers) - 1)]
        if ball & covered:
            efficient = False
        covered |= ball
    full = (1 << g.n) - 1
    return BroadcastVerdict(covered == full, f.cost, efficient)


# multipacking ----------------------------------------------------------------


def _third_vertex_seed(g: Graph) -> frozenset[int]:
    if g.n == 0 or not g.metric.connected:
        return frozenset()
    return frozenset(diametral_path(g)[::3])


class _PackingSearch:
    def __init__(self, g: Graph, r: int, budget: int | None) -> None:
        self.g = g
        self.r = r
        self.counter = _Counter(budget)
        self.masks = g.ball_masks()
        dist = g.metric.dist
        self.near2 = [_mask(u for u in range(g.n) if dist[v][u] <= 2) for v in range(g.n)]
        self.closed = [_mask(g.adj[v]) | (1 << v) for v in range(g.n)]
        ecc = g.metric.ecc
        self.order = sorted(range(g.n), key=lambda v: (-ecc[v] if ecc[v] != INF else 0, v))
        self.rank = {v: i for i, v in enumerate(self.order)}
        # per candidate x: (v, d(v,x)) pairs with the ball of v reaching x
        self.reach = [
            [(v, int(dist[v][x])) for v in range(g.n) if dist[v][x] != INF] for x in range(g.n)
        ]
        self.cap = self._global_cap()

    def _global_cap(self) -> int:
        # N_s[v] covering a whole component caps its members at s
        total = 0
        dist = self.g.metric.dist
        for comp in components(self.g):
            rad = min(int(max(dist[v][u] for u in comp)) for v in comp)
            total += max(1, min(rad, self.r)) if rad <= self.r else len(comp)
        return total

    def can_add(self, mask: int, size: int, x: int) -> bool:
        new = mask | (1 << x)
        limit = min(self.r, size)
        if limit < 1:
            return True
        masks = self.masks
        for v, d in self.reach[x]:
            layers = masks[v]
            top = len(layers) - 1
            for s in range(max(1, d), limit + 1):
                if (layers[min(s, top)] & new).bit_count() > s:
                    return False
        return True

    def upper(self, cand: int) -> int:
        """Greedy cover of the candidates by closed neighbourhoods; each
        closed neighbourhood holds at most one member."""
        bound = 0
        closed = self.closed
        g = self.g
        while cand:
            low = cand & -cand
            c = low.bit_length() - 1
            best = closed[c]
            best_hit = (best & cand).bit_count()
            for w in g.adj[c]:
                hit = (closed[w] & cand).bit_count()
                if hit > best_hit:
                    best, best_hit = closed[w], hit
            cand &= ~best
            bound += 1
        return bound

    def run(self, target: int | None, seed: frozenset[int]) -> tuple[int, int]:
        """Return ``(size, mask)`` of a maximum packing, or the first one
        reaching ``target`` when given."""
        best_mask = _mask(seed)
        best_size = len(seed)
        if target is not None and best_size >= target:
            return best_size, best_mask
        order = self.order
        all_cand = _mask(order)

        def ordered(cand: int) -> list[int]:
            return [v for v in order if cand >> v & 1]

        stack_result: list[tuple[int, int]] = [(best_size, best_mask)]

        def rec(mask: int, size: int, cand: int) -> bool:
            self.counter.tick()
            best = stack_result[0][0]
            if size > best:
                stack_result[0] = (size, mask)
                best = size
                if target is not None and size >= target:
                    return True
                if size >= self.cap:
                    return True
            if not cand:
                return False
            goal = best + 1 if target is None else max(best + 1, target)
            if size + self.upper(cand) < goal:
                return False
            for x in ordered(cand):
                cand &= ~(1 << x)
                if size + 1 + self.upper(cand & ~self.near2[x]) < goal:
                    # including x cannot reach the goal; excluding continues
                    if size + self.upper(cand) < goal:
                        return False
                    continue
                if self.can_add(mask, size, x):
                    if rec(mask | (1 << x), size + 1, cand & ~self.near2[x]):
                        return True
                    best = stack_result[0][0]
                    goal = best + 1 if target is None else max(best + 1, target)
                if size + self.upper(cand) < goal:
                    return False
            return False

        rec(0, 0, all_cand)
        return stack_result[0]


def mp_exact(g: Graph, r: int | None = None, budget: int | None = None) -> tuple[int, PackingWitness]:
    """Maximum ``r``-multipacking (plain multipacking when ``r`` is None)."""
    if g.n == 0:
        return 0, PackingWitness(frozenset(), 0)
    R = max(1, packing_radius(g)) if r is None else r
    if R < 1:
        raise ValueError("r must be at least 1")
    search = _PackingSearch(g, R, budget)
    seed = _third_vertex_seed(g)
    if not verify_r_multipacking(g, seed, R):
        seed = frozenset()
    size, mask = search.run(None, seed)
    members = frozenset(v for v in range(g.n) if mask >> v & 1)
    witness = PackingWitness(members, R)
    assert verify_r_multipacking(g, witness, R)
    return size, witness


def mp_atleast(
    g: Graph, k: int, r: int | None = None, budget: int | None = None
) -> tuple[bool, PackingWitness | None]:
    """Decide whether an ``r``-multipacking of size ``>= k`` exists."""
    if k <= 0:
        return True, PackingWitness(frozenset(), r)
    if g.n == 0:
        return False, None
    R = max(1, packing_radius(g)) if r is None else r
    search = _PackingSearch(g, R, budget)
    seed = _third_vertex_seed(g)
    if not verify_r_multipacking(g, seed, R):
        seed = frozenset()
    size, mask = search.run(k, seed)
    if size < k:
        return False, None
    members = frozenset(v for v in range(g.n) if mask >> v & 1)
    witness = PackingWitness(members, R)
    assert verify_r_multipacking(g, witness, R)
    return True, witness


# broadcast domination --------------------------------------------------------


def _gamma_b_connected(g: Graph, counter: _Counter) -> tuple[int, dict[int, int]]:
    n = g.n
    if n == 1:
        return 1, {0: 1}
    metric = g.metric
    ecc = [int(e) for e in metric.ecc]
    dist = metric.dist
    masks = g.ball_masks()
    full = (1 << n) - 1
    rad = int(metric.rad)
    lower = max(1, -(-(int(metric.diam) + 1) // 3))
    # towers able to hear u, listed per u: (v, d(u,v))
    hearers = [sorted(((v, int(dist[u][v])) for v in range(n)), key=lambda t: (t[1], t[0])) for u in range(n)]
    failed: dict[int, int] = {}

    def search(covered: int, left: int, chosen: list[tuple[int, int]]) -> bool:
        if covered == full:
            return True
        if left <= 0:
            return False
        if failed.get(covered, -1) >= left:
            return False
        counter.tick()
        unc = full & ~covered
        u = (unc & -unc).bit_length() - 1
        for v, d in hearers[u]:
            hi = min(left, ecc[v])
            for w in range(hi, max(1, d) - 1, -1):
                ball = masks[v][w]
                if ball & covered:
                    continue
                chosen.append((v, w))
                if search(covered | ball, left - w, chosen):
                    return True
                chosen.pop()
        failed[covered] = max(failed.get(covered, -1), left)
        return False

    for B in range(lower, rad + 1):
        chosen: list[tuple[int, int]] = []
        if search(0, B, chosen):
            f = {}
            for v, w in chosen:
                f[v] = f.get(v, 0) + w
            return sum(f.values()), f
    # a radius broadcast from a centre always works
    c = min(metric.centers)
    return rad, {c: rad}


def gamma_b_exact(g: Graph, budget: int | None = None) -> tuple[int, Broadcast]:
    """Minimum dominating broadcast via iterative deepening over efficient
    broadcasts.  Disconnected graphs are solved per component and summed."""
    counter = _Counter(budget)
    total = 0
    weights: dict[int, int] = {}
    for comp in components(g):
        sub, labels = induced_subgraph(g, comp)
        cost, f = _gamma_b_connected(sub, counter)
        total += cost
        for v, w in f.items():
            weights[labels[v]] = w
    bc = Broadcast(weights)
    verdict = verify_broadcast(g, bc)
    assert verdict.dominating and verdict.cost == total
    return total, bc


def _compositions(total: int, slots: Sequence[int]) -> Iterable[list[int]]:
    """Weight vectors with the given sum, slot ``i`` capped at ``slots[i]``."""
    n = len(slots)
    vec = [0] * n

    def rec(i: int, left: int) -> Iterable[list[int]]:
        if i == n:
            if left == 0:
                yield vec
            return
        for w in range(min(left, slots[i]) + 1):
            vec[i] = w
            yield from rec(i + 1, left - w)
        vec[i] = 0

    yield from rec(0, total)


def gamma_b_unrestricted(g: Graph, max_n: int = 8) -> tuple[int, Broadcast]:
    """Brute force over every broadcast (efficient or not), by increasing cost."""
    if g.n > max_n:
        raise ValueError(f"unrestricted search limited to n <= {max_n}")
    if g.n == 0:
        return 0, Broadcast({})
    caps = []
    for v in range(g.n):
        e = g.metric.ecc[v]
        caps.append(max(1, int(e)) if e != INF else max(1, max(int(d) for d in g.metric.dist[v] if d != INF)))
    for cost in range(1, g.n + 1):
        for vec in _compositions(cost, caps):
            f = Broadcast({v: w for v, w in enumerate(vec) if w})
            if verify_broadcast(g, f).dominating:
                return cost, f
    raise AssertionError("every vertex as a weight-1 tower always dominates")


# set problems ----------------------------------------------------------------


def minimum_dominating(g: Graph, budget: int | None = None) -> tuple[int, list[int]]:
    counter = _Counter(budget)
    n = g.n
    full = (1 << n) - 1
    closed = [_mask(g.adj[v]) | (1 << v) for v in range(n)]
    maxcov = max((c.bit_count() for c in closed), default=1)
    best: list[object] = [n + 1, list(range(n))]

    def rec(covered: int, chosen: list[int]) -> None:
        counter.tick()
        if covered == full:
            if len(chosen) < best[0]:
                best[0], best[1] = len(chosen), list(chosen)
            return
        unc = full & ~covered
        if len(chosen) + -(-unc.bit_count() // maxcov) >= best[0]:
            return
        u = (unc & -unc).bit_length() - 1
        for v in sorted(g.adj[u] | {u}):
            chosen.append(v)
            rec(covered | closed[v], chosen)
            chosen.pop()

    rec(0, [])
    return int(best[0]) if n else 0, sorted(best[1]) if n else []


def minimum_total_dominating(g: Graph, budget: int | None = None) -> tuple[int, list[int]]:
    isolated = [v for v in range(g.n) if not g.adj[v]]
    if isolated:
        raise Infeasible(f"vertex {isolated[0]} is isolated; no total dominating set exists")
    counter = _Counter(budget)
    n = g.n
    full = (1 << n) - 1
    open_nb = [_mask(g.adj[v]) for v in range(n)]
    maxcov = max((c.bit_count() for c in open_nb), default=1)
    best: list[object] = [n + 1, list(range(n))]

    def rec(covered: int, chosen: list[int]) -> None:
        counter.tick()
        if covered == full:
            if len(chosen) < best[0]:
                best[0], best[1] = len(chosen), list(chosen)
            return
        unc = full & ~covered
        if len(chosen) + -(-unc.bit_count() // maxcov) >= best[0]:
            return
        u = (unc & -unc).bit_length() - 1
        for v in sorted(g.adj[u]):
            if v in chosen:
                continue
            chosen.append(v)
            rec(covered | open_nb[v], chosen)
            chosen.pop()

    rec(0, [])
    return (int(best[0]), sorted(best[1])) if n else (0, [])


def minimum_hitting(sys: SetSystem, budget: int | None = None) -> tuple[int, list[int]]:
    if any(not s for s in sys.sets):
        raise Infeasible("the family contains the empty set")
    counter = _Counter(budget)
    sets = [_mask(s) for s in sys.sets]
    nsets = len(sets)
    # which sets each element hits
    hits = [_mask(j for j, s in enumerate(sys.sets) if x in s) for x in range(sys.n)]
    full = (1 << nsets) - 1
    maxhit = max((h.bit_count() for h in hits), default=1) or 1
    best: list[object] = [nsets + 1, []]

    def rec(done: int, chosen: list[int]) -> None:
        counter.tick()
        if done == full:
            if len(chosen) < best[0]:
                best[0], best[1] = len(chosen), list(chosen)
            return
        left = full & ~done
        if len(chosen) + -(-left.bit_count() // maxhit) >= best[0]:
            return
        j = (left & -left).bit_length() - 1
        for x in sorted(sys.sets[j]):
            chosen.append(x)
            rec(done | hits[x], chosen)
            chosen.pop()

    rec(0, [])
    return int(best[0]), sorted(best[1])


def maximum_independent(g: Graph, budget: int | None = None) -> tuple[int, list[int]]:
    counter = _Counter(budget)
    closed = [_mask(g.adj[v]) | (1 << v) for v in range(g.n)]
    best = [0, 0]

    def rec(mask: int, size: int, cand: int) -> None:
        counter.tick()
        if size > best[0]:
            best[0], best[1] = size, mask
        if size + cand.bit_count() <= best[0]:
            return
        if not cand:
            return
        # branch on a candidate of maximum remaining degree
        v = max(
            (u for u in range(g.n) if cand >> u & 1),
            key=lambda u: ((closed[u] & cand).bit_count(), -u),
        )
        if (closed[v] & cand).bit_count() == 1:
            # every candidate is isolated among candidates
            total = size + cand.bit_count()
            if total > best[0]:
                best[0], best[1] = total, mask | cand
            return
        rec(mask | (1 << v), size + 1, cand & ~closed[v])
        rec(mask, size, cand & ~(1 << v))

    rec(0, 0, (1 << g.n) - 1)
    members = [v for v in range(g.n) if best[1] >> v & 1]
    return best[0], members


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    s = list(s)
    return all(v not in g.adj[u] for u, v in combinations(s, 2))


def is_dominating(g: Graph, s: Iterable[int]) -> bool:
    s = set(s)
    return all(v in s or g.adj[v] & s for v in range(g.n))


def is_total_dominating(g: Graph, s: Iterable[int]) -> bool:
    s = set(s)
    return all(g.adj[v] & s for v in range(g.n))
