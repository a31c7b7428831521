"""Seeded random instance generators used by tests, the acceptance suite
and the CLI.  Every generator takes a :class:`random.Random` so a seed fully
determines its output."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .graph import Graph


def random_tree(rng: random.Random, n: int) -> Graph:
    """Each new vertex hangs off a uniformly chosen earlier vertex."""
    return Graph(n, [(rng.randrange(v), v) for v in range(1, n)])


def random_connected_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``p``."""
    if p is None:
        p = rng.uniform(0.05, 0.5)
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    for u, v in combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    return Graph(n, edges)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    """Erdős–Rényi ``G(n, p)``; may be disconnected."""
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_chordal(rng: random.Random, n: int, max_clique: int = 4) -> Graph:
    """Connected chordal graph built as a subgraph of a random ``k``-tree.

    Each new vertex is joined to a nonempty subset of a previously created
    clique, so it is simplicial when added and the reverse insertion order
    is a perfect elimination ordering.
    """
    if n <= 0:
        return Graph(0)
    cliques: list[tuple[int, ...]] = [(0,)]
    edges: set[tuple[int, int]] = set()
    for v in range(1, n):
        base = rng.choice(cliques)
        size = rng.randint(1, min(len(base), max_clique - 1))
        chosen = rng.sample(base, size)
        for u in chosen:
            edges.add((u, v))
        cliques.append(tuple(sorted(chosen)) + (v,))
    return Graph(n, edges)


def random_cactus(rng: random.Random, n: int, cycle_bias: float = 0.6) -> Graph:
    """Connected cactus on exactly ``n`` vertices.

    Grows from a single vertex by hanging either a pendant edge or a cycle
    of length 3..8 on an existing vertex; new cycles share only that vertex
    with the existing structure, so every edge lies on at most one cycle.
    """
    if n <= 0:
        return Graph(0)
    edges: list[tuple[int, int]] = []
    size = 1
    while size < n:
        anchor = rng.randrange(size)
        room = n - size
        if room >= 2 and rng.random() < cycle_bias:
            length = rng.randint(3, min(8, room + 1))
            ring = [anchor] + list(range(size, size + length - 1))
            edges += [(ring[i], ring[(i + 1) % length]) for i in range(length)]
            size += length - 1
        else:
            edges.append((anchor, size))
            size += 1
    return Graph(n, edges)


def random_set_system(rng: random.Random, universe: int, count: int, density: float = 0.5) -> list[frozenset[int]]:
    return [frozenset(x for x in range(universe) if rng.random() < density) for _ in range(count)]


def _squared(p: tuple[Fraction, ...], q: tuple[Fraction, ...]) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(p, q)), Fraction(0))


def has_unique_distances(points: list[tuple[Fraction, ...]]) -> bool:
    seen: set[Fraction] = set()
    for p, q in combinations(points, 2):
        d = _squared(p, q)
        if d == 0 or d in seen:
            return False
        seen.add(d)
    return True


def random_point_set(rng: random.Random, n: int, d: int, spread: int | None = None) -> list[tuple[Fraction, ...]]:
    """Integer-coordinate points re-sampled until all pairwise distances are
    distinct.  On a line the range grows as ``n^4``; with a linear range
    the ``n(n-1)/2`` gaps collide so often that rejection sampling stalls."""
    if spread is None:
        spread = max(20, 64 * n**4) if d == 1 else max(20, 6 * n)
    while True:
        pts = [tuple(Fraction(rng.randint(0, spread)) for _ in range(d)) for _ in range(n)]
        if has_unique_distances(pts):
            return pts
