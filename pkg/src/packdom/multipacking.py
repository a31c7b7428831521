"""Constructive multipacking approximations, bound reports and fractional
multipacking certificates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import graph as gc
from .graph import Graph
from .oracles import (
    Inconclusive,
    PackingWitness,
    gamma_b_exact,
    minimum_dominating,
    mp_exact,
    verify_multipacking,
)

EXACT_THRESHOLD = 14
HYPERBOLICITY_THRESHOLD = 40


def third_vertex_multipacking(g: Graph, p: Sequence[int]) -> PackingWitness:
    """Every third vertex of an isometric path, starting from its first vertex."""
    if not gc.is_isometric_path(g, p):
        raise ValueError("path is not isometric")
    return PackingWitness(frozenset(p[::3]), None)


def diametral_approx(g: Graph) -> PackingWitness:
    """Every third vertex of a diametral path; size ``ceil((diam+1)/3)``."""
    gc.require_connected(g)
    return third_vertex_multipacking(g, gc.diametral_path(g))


# fractional certificates -----------------------------------------------------


@dataclass(frozen=True)
class WeightFunction:
    weights: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[int, Fraction] = {}
        for v, w in self.weights.items():
            fw = Fraction(w)
            if fw < 0:
                raise ValueError(f"negative weight at vertex {v}")
            if fw:
                clean[int(v)] = fw
        object.__setattr__(self, "weights", clean)

    @property
    def value(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def to_json(self) -> dict[str, object]:
        return {"w": {str(v): str(w) for v, w in sorted(self.weights.items())}}

    @classmethod
    def from_json(cls, obj: Mapping[str, object]) -> WeightFunction:
        raw = obj["w"]
        if not isinstance(raw, Mapping):
            raise ValueError('expected {"w": {vertex: "p/q"}}')
        return cls({int(k): Fraction(str(v)) for k, v in raw.items()})


def verify_fractional_multipacking(g: Graph, w: WeightFunction) -> tuple[bool, Fraction]:
    """Check ``w(N_r[v]) <= r`` for every vertex and every ``1 <= r <= rad``."""
    bad = [v for v in w.weights if not 0 <= v < g.n]
    if bad:
        raise ValueError(f"vertices out of range: {sorted(bad)}")
    R = max(1, gc.packing_radius(g))
    dist = g.metric.dist
    support = sorted(w.weights.items())
    for v in range(g.n):
        row = dist[v]
        for r in range(1, R + 1):
            total = sum((x for u, x in support if row[u] <= r), Fraction(0))
            if total > r:
                return False, w.value
    return True, w.value


# bounds ----------------------------------------------------------------------


@dataclass(frozen=True)
class Bound:
    quantity: str  # "MP" or "gamma_b"
    value: int
    rule: str


@dataclass
class BoundsReport:
    lower: list[Bound]
    upper: list[Bound]
    flags: dict[str, object]
    exact: dict[str, int] = field(default_factory=dict)

    def best(self, quantity: str) -> tuple[int, int]:
        lo = max(b.value for b in self.lower if b.quantity == quantity)
        hi = min(b.value for b in self.upper if b.quantity == quantity)
        return lo, hi

    def consistent(self) -> bool:
        mp_lo, mp_hi = self.best("MP")
        gb_lo, gb_hi = self.best("gamma_b")
        return mp_lo <= mp_hi and gb_lo <= gb_hi and mp_lo <= gb_hi

    def to_json(self) -> dict[str, object]:
        def rows(bs: list[Bound]) -> list[dict[str, object]]:
            return [{"quantity": b.quantity, "value": b.value, "rule": b.rule} for b in bs]

        return {
            "lower": rows(self.lower),
            "upper": rows(self.upper),
            "flags": self.flags,
            "exact": self.exact,
            "consistent": self.consistent(),
        }


def _ceil(fr: Fraction) -> int:
    return -((-fr.numerator) // fr.denominator)


def _floor(fr: Fraction) -> int:
    return fr.numerator // fr.denominator


def bounds_report(
    g: Graph, exact_threshold: int = EXACT_THRESHOLD, budget: int | None = None
) -> BoundsReport:
    """Aggregate the applicable inequalities for ``MP(G)`` and ``γ_b(G)``.

    Exponential oracles run only when ``n <= exact_threshold``.
    """
    gc.require_connected(g)
    cls = gc.classify(g)
    rad, diam = gc.radius(g), gc.diameter(g)
    approx = len(diametral_approx(g))
    flags: dict[str, object] = cls.as_dict()
    lower = [
        Bound("MP", max(1, _ceil(Fraction(diam + 1, 3))), "MP >= ceil((diam+1)/3)"),
        Bound("MP", approx, "diametral every-third-vertex witness"),
        Bound("gamma_b", max(1, _ceil(Fraction(diam + 1, 3))), "gamma_b >= MP >= ceil((diam+1)/3)"),
    ]
    upper = [
        Bound("gamma_b", max(1, rad), "gamma_b <= rad"),
        Bound("MP", max(1, rad), "MP <= gamma_b <= rad"),
    ]
    if cls.chordal:
        # |approx| >= ceil((2MP-1)/3) gives MP <= (3|approx|+1)/2
        upper.append(Bound("MP", _floor(Fraction(3 * approx + 1, 2)), "chordal: |approx| >= ceil((2MP-1)/3)"))
        upper.append(
            Bound("gamma_b", _ceil(Fraction(3, 2) * _floor(Fraction(3 * approx + 1, 2))),
                  "chordal: gamma_b <= ceil(1.5 MP)")
        )
    if g.n <= HYPERBOLICITY_THRESHOLD:
        delta = gc.hyperbolicity(g)
        flags["hyperbolicity"] = str(delta)
        mp_cap = _floor((3 * approx + 4 * delta) / 2)
        upper.append(Bound("MP", mp_cap, "delta-hyperbolic: |approx| >= ceil((2MP-4 delta)/3)"))
        upper.append(
            Bound("gamma_b", _floor(Fraction(3, 2) * mp_cap + 2 * delta), "delta-hyperbolic: gamma_b <= floor(1.5 MP + 2 delta)")
        )
    if cls.cactus and rad >= 1:
        from .cactus import cactus_multipacking

        size = len(cactus_multipacking(g))
        lower.append(Bound("MP", size, "cactus pipeline witness"))
    exact: dict[str, int] = {}
    if g.n <= exact_threshold:
        try:
            mp, _ = mp_exact(g, budget=budget)
            gb, _ = gamma_b_exact(g, budget=budget)
            dom, _ = minimum_dominating(g, budget=budget)
        except Inconclusive:
            flags["exact"] = "inconclusive"
        else:
            exact = {"MP": mp, "gamma_b": gb, "gamma": dom}
            lower += [Bound("MP", mp, "exact oracle"), Bound("gamma_b", gb, "exact oracle")]
            upper += [
                Bound("MP", mp, "exact oracle"),
                Bound("gamma_b", gb, "exact oracle"),
                Bound("gamma_b", dom, "gamma_b <= gamma"),
                Bound("gamma_b", 2 * mp + 3, "gamma_b <= 2 MP + 3"),
            ]
            if cls.chordal:
                upper.append(Bound("gamma_b", _ceil(Fraction(3 * mp, 2)), "chordal: gamma_b <= ceil(1.5 MP)"))
            if "hyperbolicity" in flags:
                delta = Fraction(str(flags["hyperbolicity"]))
                upper.append(
                    Bound("gamma_b", _floor(Fraction(3 * mp, 2) + 2 * delta), "delta-hyperbolic: gamma_b <= floor(1.5 MP + 2 delta)")
                )
            if cls.cactus:
                upper.append(Bound("gamma_b", _floor(Fraction(3 * mp, 2) + Fraction(11, 2)), "cactus: gamma_b <= floor(1.5 MP + 5.5)"))
    return BoundsReport(lower, upper, flags, exact)


def parse_weight_json(text: str) -> WeightFunction:
    return WeightFunction.from_json(json.loads(text))


__all__ = [
    "Bound",
    "BoundsReport",
    "WeightFunction",
    "bounds_report",
    "diametral_approx",
    "parse_weight_json",
    "third_vertex_multipacking",
    "verify_fractional_multipacking",
    "verify_multipacking",
]
