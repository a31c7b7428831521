"""Scripted acceptance suite: twelve seeded end-to-end criteria.

Each ``criterion_N`` returns a :class:`CriterionResult`.  A criterion passes
when every check holds and it finishes inside its time limit.  ``run_all``
drives them in order; the CLI ``selftest`` command and the pytest suite both
call it.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Callable

from . import generators as gen
from . import graph as gc
from .cactus import cactus_multipacking, size_bound
from .families import certify, gen_hartnell_mynhardt, gen_hexagon_triangle_chain, gen_pentagon_chain
from .gadgets import (
    HS_MIN_K,
    HS_VARIANTS,
    IS_VARIANTS,
    GadgetError,
    GadgetInstance,
    hs_to_mp,
    is_to_rmp,
    map_solution,
    normalized_endpoints,
    reassign,
    tds_to_mp,
    validate_structure,
)
from .geometry import (
    KISSING,
    PointSet,
    gamma_b_points_exact,
    gamma_b_points_unrestricted,
    line_r_multipacking,
    mdb,
    mp_points_exact,
    verify_point_broadcast,
)
from .graph import Graph
from .multipacking import diametral_approx
from .oracles import (
    Infeasible,
    PackingWitness,
    SetSystem,
    gamma_b_exact,
    maximum_independent,
    minimum_dominating,
    minimum_hitting,
    minimum_total_dominating,
    mp_atleast,
    mp_exact,
    verify_r_multipacking,
)

DEFAULT_SEED = 20241016
MAX_REPORTED = 8


@dataclass
class CriterionResult:
    number: int
    title: str
    limit: float
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    failure_count: int = 0
    seconds: float = 0.0
    details: dict[str, object] = field(default_factory=dict)

    def check(self, ok: bool, message: str | Callable[[], str]) -> bool:
        self.checks += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(message() if callable(message) else message)
        return ok

    @property
    def within_time(self) -> bool:
        return self.seconds <= self.limit

    @property
    def passed(self) -> bool:
        return self.failure_count == 0 and self.within_time

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.within_time else f" (over the {self.limit:.0f}s limit)"
        return (
            f"[{status}] criterion {self.number:>2}: {self.title}: "
            f"{self.checks - self.failure_count}/{self.checks} checks, {self.seconds:.1f}s{extra}"
        )

    def to_json(self) -> dict[str, object]:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failure_count,
            "examples": self.failures,
            "seconds": round(self.seconds, 3),
            "limit": self.limit,
            "details": self.details,
        }


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


# 1-2: certificate families -------------------------------------------------------


def criterion_1(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(1, "pentagon chain MP = 3k and gamma_b = 4k", 60)
    for k in (1, 2):
        b = gen_pentagon_chain(k)
        mp, _ = mp_exact(b.graph)
        gb, _ = gamma_b_exact(b.graph)
        res.check(mp == 3 * k, f"k={k}: mp_exact = {mp}")
        res.check(gb == 4 * k, f"k={k}: gamma_b_exact = {gb}")
    for k in range(1, 21):
        rep = certify(gen_pentagon_chain(k))
        ok = rep.exact and rep.mp_interval == (3 * k, 3 * k) and rep.gamma_b_interval == (4 * k, 4 * k)
        res.check(ok, f"k={k}: certificates give MP in {rep.mp_interval}, gamma_b in {rep.gamma_b_interval}")
    return res


def criterion_2(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(2, "F_k and H_k at k=1, F_k chordal", 60)
    for gen_fn in (gen_hexagon_triangle_chain, gen_hartnell_mynhardt):
        b = gen_fn(1)
        mp, _ = mp_exact(b.graph)
        gb, _ = gamma_b_exact(b.graph)
        res.check(mp == 3, f"{b.name}: mp_exact = {mp}")
        res.check(gb == 4, f"{b.name}: gamma_b_exact = {gb}")
    for k in range(1, 6):
        res.check(gc.is_chordal(gen_hexagon_triangle_chain(k).graph), f"F_{k} not chordal")
    return res


# 3-7: bounds ------------------------------------------------------------------------


def criterion_3(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(3, "general sandwich on random connected graphs", 120)
    rng = random.Random(seed + 3)
    for _ in range(300):
        g = gen.random_connected_graph(rng, rng.randint(2, 12))
        mp, _ = mp_exact(g)
        gb, _ = gamma_b_exact(g)
        dom, _ = minimum_dominating(g)
        lo = _ceil_div(gc.diameter(g) + 1, 3)
        ok = lo <= mp <= gb <= min(dom, gc.radius(g)) and gb <= 2 * mp + 3
        res.check(ok, lambda: f"{gc.format_graph(g)!r}: lo={lo} mp={mp} gb={gb} dom={dom} rad={gc.radius(g)}")
    return res


def criterion_4(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(4, "chordal bounds", 120)
    rng = random.Random(seed + 4)
    for _ in range(100):
        g = gen.random_chordal(rng, rng.randint(2, 14))
        mp, _ = mp_exact(g)
        gb, _ = gamma_b_exact(g)
        approx = len(diametral_approx(g))
        ok = gc.is_chordal(g) and gb <= _ceil_div(3 * mp, 2) and approx >= _ceil_div(2 * mp - 1, 3)
        res.check(ok, lambda: f"{gc.format_graph(g)!r}: mp={mp} gb={gb} approx={approx}")
    return res


def criterion_5(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(5, "hyperbolic bounds", 120)
    rng = random.Random(seed + 5)
    for _ in range(60):
        g = gen.random_connected_graph(rng, rng.randint(2, 10))
        delta = gc.hyperbolicity(g)
        mp, _ = mp_exact(g)
        gb, _ = gamma_b_exact(g)
        approx = len(diametral_approx(g))
        up = Fraction(3 * mp, 2) + 2 * delta
        lo = Fraction(2 * mp, 1) - 4 * delta
        ok = gb <= up.numerator // up.denominator and 3 * approx >= lo
        res.check(ok, lambda: f"{gc.format_graph(g)!r}: delta={delta} mp={mp} gb={gb} approx={approx}")
    return res


def criterion_6(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(6, "cactus pipeline", 180)
    rng = random.Random(seed + 6)
    small = 0
    for _ in range(200):
        g = gen.random_cactus(rng, rng.randint(2, 40))
        rad = gc.radius(g)
        try:
            w = cactus_multipacking(g)
        except AssertionError as exc:
            res.check(False, f"{gc.format_graph(g)!r}: {exc}")
            continue
        res.check(
            verify_r_multipacking(g, w, max(1, rad)) and len(w) >= size_bound(rad),
            lambda: f"{gc.format_graph(g)!r}: |M|={len(w)} rad={rad}",
        )
        if g.n <= 18:
            small += 1
            mp, _ = mp_exact(g)
            gb, _ = gamma_b_exact(g)
            res.check(2 * gb <= 3 * mp + 11, lambda: f"{gc.format_graph(g)!r}: mp={mp} gb={gb}")
    res.details["exact_subset"] = small
    return res


def criterion_7(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(7, "hyperbolicity spot values", 30)
    rng = random.Random(seed + 7)
    half = Fraction(1, 2)
    for _ in range(20):
        t = gen.random_tree(rng, rng.randint(2, 14))
        res.check(gc.hyperbolicity(t) == 0, f"tree {gc.format_graph(t)!r}")
    res.check(gc.hyperbolicity(gc.cycle_graph(5)) == half, "C5")
    for k in (1, 2):
        d = gc.hyperbolicity(gen_pentagon_chain(k).graph)
        res.check(d == half, f"pentagon chain k={k}: {d}")
    for _ in range(20):
        g = gen.random_chordal(rng, rng.randint(2, 14))
        d = gc.hyperbolicity(g)
        res.check(d <= 1 and (2 * d).denominator == 1, f"chordal {gc.format_graph(g)!r}: {d}")
    return res


# 8-9: gadgets -------------------------------------------------------------------------


def _hs_sources() -> list[SetSystem]:
    out = []
    for n in range(1, 5):
        subsets = [frozenset(s) for r in range(1, n + 1) for s in combinations(range(n), r)]
        for m in range(1, 4):
            for fam in combinations_with_replacement(subsets, m):
                out.append(SetSystem(n, fam))
    return out


def _is_source(rng: random.Random) -> Graph:
    """``n <= 5``, ``1 <= m <= 5``, degrees in ``[1, 3]``; planar since it has
    at most five vertices and five edges."""
    while True:
        n = rng.randint(2, 5)
        pairs = list(combinations(range(n), 2))
        m = rng.randint(1, min(5, len(pairs)))
        g = Graph(n, rng.sample(pairs, m))
        degs = [g.degree(v) for v in range(n)]
        if min(degs) >= 1 and max(degs) <= 3:
            return g


def _planar_source(rng: random.Random) -> Graph:
    """Random spanning subgraph of a fan (apex 0 joined to the path 1..n-1)."""
    n = rng.randint(3, 7)
    fan = [(0, v) for v in range(1, n)] + [(v, v + 1) for v in range(1, n - 1)]
    return Graph(n, [e for e in fan if rng.random() < 0.7])


def _prism() -> Graph:
    return Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


@dataclass
class _IsCase:
    inst: GadgetInstance
    expected: bool
    found: PackingWitness | None


@lru_cache(maxsize=4)
def _is_cases(seed: int) -> tuple[_IsCase, ...]:
    rng = random.Random(seed + 8)
    cases = []
    for _ in range(30):
        g = _is_source(rng)
        alpha, _ = maximum_independent(g)
        for variant in IS_VARIANTS:
            for k in range(1, 4):
                inst = is_to_rmp(variant, g, k, 2)
                ok, w = mp_atleast(inst.graph, inst.target, 2)
                cases.append(_IsCase(inst, alpha >= k, w if ok else None))
    return tuple(cases)


def criterion_8(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(8, "gadget round-trips", 300)
    parts: dict[str, list[int]] = {}

    def tally(part: str, ok: bool) -> None:
        row = parts.setdefault(part, [0, 0])
        row[0] += 1
        row[1] += not ok

    # Hitting Set, exhaustive
    for sys in _hs_sources():
        h, hs = minimum_hitting(sys)
        for variant in HS_VARIANTS:
            for k in (2, 3):
                if k < HS_MIN_K[variant]:
                    continue
                inst = hs_to_mp(variant, sys, k)
                ok, w = mp_atleast(inst.graph, k)
                struct = validate_structure(inst)
                good = ok == (h <= k) and all(struct.values())
                if good and h <= k:
                    good = _maps_ok(inst, "fwd", hs)
                if good and ok:
                    good = _maps_ok(inst, "bwd", w)
                tally(f"hs:{variant}:k={k}", good)
                res.check(good, lambda: f"hs {variant} k={k} sets={[sorted(s) for s in sys.sets]} n={sys.n}: "
                          f"hitting={h} mp>=k={ok} struct={struct}")
    # Independent Set
    for case in _is_cases(seed):
        inst = case.inst
        struct = validate_structure(inst)
        good = (case.found is not None) == case.expected and all(struct.values())
        if good and case.expected:
            _, ind = maximum_independent(inst.source)  # type: ignore[arg-type]
            good = _maps_ok(inst, "fwd", ind)
        if good and case.found is not None:
            good = _maps_ok(inst, "bwd", case.found)
        tally(f"is:{inst.variant}", good)
        res.check(good, lambda: f"is {inst.variant} k={inst.params['k']} edges={inst.source.sorted_edges()}: "  # type: ignore[union-attr]
                  f"independent>=k={case.expected} rmp>={inst.target}={case.found is not None} struct={struct}")
    # Total Dominating Set, regular gadget
    for name, g in (("K33", gc.complete_bipartite(3, 3)), ("prism", _prism())):
        inst = tds_to_mp("regular", g, 4)
        t, tds = minimum_total_dominating(g)
        ok, w = mp_atleast(inst.graph, 4)
        good = ok == (t <= 4) and all(validate_structure(inst).values())
        if good and ok:
            good = _maps_ok(inst, "fwd", tds) and _maps_ok(inst, "bwd", w)
        tally("tds:regular", good)
        res.check(good, f"regular gadget on {name}")
    # Total Dominating Set, conv gadget
    rng = random.Random(seed + 88)
    for _ in range(10):
        g = _planar_source(rng)
        for k in (2, 3):
            inst = tds_to_mp("conv", g, k)
            try:
                t, tds = minimum_total_dominating(g)
            except Infeasible:
                t, tds = g.n + 1, []
            ok, w = mp_atleast(inst.graph, k)
            good = ok == (t <= k) and all(validate_structure(inst).values())
            if good and t <= k:
                good = _maps_ok(inst, "fwd", tds)
            if good and ok:
                good = _maps_ok(inst, "bwd", w)
            tally("tds:conv", good)
            res.check(good, lambda: f"conv k={k} edges={g.sorted_edges()} n={g.n}: gamma_t={t} mp>=k={ok}")
    res.details["parts"] = {p: {"cases": c, "mismatches": b} for p, (c, b) in sorted(parts.items())}
    return res


def _maps_ok(inst: GadgetInstance, direction: str, witness) -> bool:
    try:
        map_solution(inst, direction, witness)  # type: ignore[arg-type]
    except GadgetError:
        return False
    return True


def criterion_9(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(9, "Reassign preserves size and normalises", 30)
    seen = 0
    for case in _is_cases(seed):
        inst = case.inst
        witnesses = [case.found] if case.found is not None else []
        witnesses.append(mp_exact(inst.graph, 2)[1])
        for w in witnesses:
            seen += 1
            out = reassign(inst, w)
            ok = (
                len(out) == len(w)
                and verify_r_multipacking(inst.graph, out, 2)
                and out.members <= normalized_endpoints(inst)
            )
            res.check(ok, lambda: f"{inst.variant} edges={inst.source.sorted_edges()} M={w.sorted()} -> {out.sorted()}")  # type: ignore[union-attr]
    res.details["witnesses"] = seen
    return res


# 10-11: geometry ------------------------------------------------------------------------


def criterion_10(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(10, "geometric broadcast exactness and bounds", 180)
    rng = random.Random(seed + 10)
    for _ in range(200):
        d = rng.choice((1, 2, 3))
        n = rng.randint(2, 10)
        P = PointSet(tuple(gen.random_point_set(rng, n, d)))
        f = mdb(P)
        cost, _ = gamma_b_points_exact(P)
        tau = KISSING[d]
        ok = (
            f.cost == cost
            and verify_point_broadcast(P, f)
            and set(f.weights.values()) <= {1}
            and n <= 2 * f.cost
            and f.cost * (tau + 1) <= tau * n
            and (d != 2 or 6 * f.cost <= 5 * n)
        )
        if ok and n <= 6:
            ok = gamma_b_points_unrestricted(P)[0] == cost
        res.check(ok, lambda: f"d={d} points={[tuple(map(str, p)) for p in P.points]}: mdb={f.cost} exact={cost}")
    return res


def criterion_11(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(11, "1D multipacking and six planar points", 180)
    rng = random.Random(seed + 11)
    for _ in range(100):
        n = rng.randint(2, 12)
        P = PointSet(tuple(gen.random_point_set(rng, n, 1)))
        mp, _ = mp_points_exact(P)
        res.check(n // 3 <= mp <= n // 2, f"n={n}: mp={mp}")
        for r in range(1, min(5, n - 1) + 1):
            line, _ = line_r_multipacking(P, r)
            brute, _ = mp_points_exact(P, r)
            res.check(line == brute, f"n={n} r={r}: line={line} brute={brute}")
    for _ in range(500):
        P = PointSet(tuple(gen.random_point_set(rng, 6, 2)))
        mp, _ = mp_points_exact(P)
        res.check(mp >= 2, lambda: f"six points {[tuple(map(str, p)) for p in P.points]}: mp={mp}")
    return res


# 12: trees -------------------------------------------------------------------------------


def criterion_12(seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(12, "trees: MP = gamma_b <= ceil(n/3)", 60)
    rng = random.Random(seed + 12)
    for _ in range(100):
        t = gen.random_tree(rng, rng.randint(1, 14))
        mp, _ = mp_exact(t)
        gb, _ = gamma_b_exact(t)
        res.check(mp == gb <= _ceil_div(t.n, 3), f"{gc.format_graph(t)!r}: mp={mp} gb={gb}")
    return res


CRITERIA: dict[int, Callable[[int], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
    12: criterion_12,
}


def run_criterion(number: int, seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    res = CRITERIA[number](seed)
    res.seconds = time.perf_counter() - start
    return res


def run_all(seed: int = DEFAULT_SEED, only: list[int] | None = None) -> list[CriterionResult]:
    return [run_criterion(i, seed) for i in (only or sorted(CRITERIA))]
