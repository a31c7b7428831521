"""``packdom`` command-line interface.

Every command prints one JSON document on stdout; diagnostics go to stderr.
Exit codes: 0 success, 1 malformed input, 2 verification or equivalence
failure, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import acceptance
from . import gadgets as gd
from . import geometry as geo
from . import graph as gc
from .cactus import NotACactusError, cactus_multipacking_traced
from .families import FAMILIES, certify
from .graph import Graph
from .multipacking import (
    WeightFunction,
    bounds_report,
    diametral_approx,
    verify_fractional_multipacking,
)
from .oracles import (
    Broadcast,
    Inconclusive,
    PackingWitness,
    gamma_b_exact,
    mp_exact,
    verify_broadcast,
    verify_multipacking,
    verify_r_multipacking,
)

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_INCONCLUSIVE = 0, 1, 2, 3

HS_ALIASES = {"chordal": "chordal", "hhyp": "half_hyperbolic", "bip": "bipartite", "claw": "clawfree"}
TDS_ALIASES = {"regular": "regular", "conv": "conv"}
IS_ALIASES = {"pb": "planar_bipartite", "chordal": "chordal", "bip": "bipartite"}


class InputError(ValueError):
    """Malformed command-line input (exit 1)."""


class VerificationFailure(RuntimeError):
    """A witness failed its verifier (exit 2)."""

    def __init__(self, payload: dict[str, object]) -> None:
        super().__init__(str(payload))
        self.payload = payload


# input helpers ---------------------------------------------------------------------


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _graph(path: str) -> Graph:
    return gc.parse_graph(_read(path))


def _json(path: str) -> object:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def _members(path: str) -> list[int]:
    obj = _json(path)
    if isinstance(obj, dict):
        for key in ("M", "S", "H", "D"):
            if key in obj:
                obj = obj[key]
                break
    if not isinstance(obj, list) or not all(isinstance(x, int) for x in obj):
        raise InputError(f'{path}: expected {{"M": [vertex, ...]}} or a list of integers')
    return obj


def _broadcast(path: str) -> Broadcast:
    obj = _json(path)
    if not isinstance(obj, dict) or not isinstance(obj.get("f"), dict):
        raise InputError(f'{path}: expected {{"f": {{vertex: strength}}}}')
    try:
        return Broadcast({int(k): int(v) for k, v in obj["f"].items()})
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _weights(path: str) -> WeightFunction:
    obj = _json(path)
    if not isinstance(obj, dict):
        raise InputError(f'{path}: expected {{"w": {{vertex: "p/q"}}}}')
    try:
        return WeightFunction.from_json(obj)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _budget(args: argparse.Namespace) -> int | None:
    return args.budget


def _require(value: int | None, flag: str) -> int:
    if value is None:
        raise InputError(f"{flag} is required")
    return value


# commands ----------------------------------------------------------------------------


def cmd_classify(args: argparse.Namespace) -> dict[str, object]:
    g = _graph(args.graph)
    return {"n": g.n, "m": g.m, **gc.classify(g).as_dict()}


def cmd_mp(args: argparse.Namespace) -> dict[str, object]:
    g = _graph(args.graph)
    if args.action == "exact":
        size, w = mp_exact(g, args.r, budget=_budget(args))
        _reverify(verify_r_multipacking(g, w, w.r_max or 1), "multipacking")
        return {"size": size, "r": w.r_max, **w.to_json()}
    if args.action == "approx":
        gc.require_connected(g)
        best, method = diametral_approx(g), "diametral path, every third vertex"
        if gc.is_cactus(g) and g.n > 1:
            w, trace = cactus_multipacking_traced(g)
            if len(w) > len(best):
                best, method = w, f"cactus pipeline ({trace.branch})"
        _reverify(verify_multipacking(g, best), "multipacking")
        return {"size": len(best), "method": method, **best.to_json()}
    if args.witness is None:
        raise InputError("mp verify needs a witness file")
    members = _members(args.witness)
    ok = verify_r_multipacking(g, members, args.r) if args.r else verify_multipacking(g, members)
    out = {"valid": ok, "size": len(set(members)), "r": args.r}
    if not ok:
        raise VerificationFailure(out)
    return out


def cmd_gammab(args: argparse.Namespace) -> dict[str, object]:
    g = _graph(args.graph)
    if args.action == "exact":
        cost, f = gamma_b_exact(g, budget=_budget(args))
        _reverify(verify_broadcast(g, f).dominating and f.cost == cost, "broadcast")
        return {"cost": cost, **f.to_json()}
    if args.witness is None:
        raise InputError("gammab verify needs a broadcast file")
    verdict = verify_broadcast(g, _broadcast(args.witness))
    out = {"dominating": verdict.dominating, "cost": verdict.cost, "efficient": verdict.efficient}
    if not verdict.dominating:
        raise VerificationFailure(out)
    return out


def cmd_bounds(args: argparse.Namespace) -> dict[str, object]:
    rep = bounds_report(_graph(args.graph), budget=_budget(args))
    out = rep.to_json()
    if not rep.consistent():
        raise VerificationFailure(out)
    return out


def cmd_frac(args: argparse.Namespace) -> dict[str, object]:
    g = _graph(args.graph)
    feasible, value = verify_fractional_multipacking(g, _weights(args.weights))
    out = {"feasible": feasible, "value": str(value), "gamma_b_lower_bound": -((-value.numerator) // value.denominator)}
    if not feasible:
        raise VerificationFailure(out)
    return out


def cmd_cactus(args: argparse.Namespace) -> dict[str, object]:
    g = _graph(args.graph)
    w, trace = cactus_multipacking_traced(g)
    _reverify(verify_multipacking(g, w), "multipacking")
    return {
        "size": len(w),
        **w.to_json(),
        "rad": trace.rad,
        "center": trace.center,
        "branch": trace.branch,
        "guaranteed": trace.bound,
        "details": trace.details,
    }


def cmd_hyperbolicity(args: argparse.Namespace) -> dict[str, object]:
    delta = gc.hyperbolicity(_graph(args.graph))
    return {"delta": str(delta)}


def cmd_family(args: argparse.Namespace) -> dict[str, object]:
    k = args.k if args.k is not None else 1
    if k < 1:
        raise InputError("--k must be at least 1")
    b = FAMILIES[args.name](k)
    rep = certify(b)
    out = {
        "family": b.name,
        "k": k,
        "graph": gc.graph_to_json(b.graph),
        "labels": b.labels,
        "multipacking": b.mp_witness.to_json()["M"],
        "broadcast": b.broadcast.to_json()["f"],
        "fractional": b.fractional.to_json()["w"] if b.fractional else None,
        "certificates": {
            "witness": rep.witness_ok,
            "broadcast": rep.broadcast_ok,
            "fractional": rep.fractional_ok,
            "blocks": rep.blocks_ok,
            "mp_interval": list(rep.mp_interval),
            "gamma_b_interval": list(rep.gamma_b_interval),
        },
        "claimed": {"MP": b.claimed_mp, "gamma_b": b.claimed_gamma_b},
    }
    ok = rep.witness_ok and rep.broadcast_ok and rep.blocks_ok and rep.fractional_ok is not False
    if not ok:
        raise VerificationFailure(out)
    return out


def _variant(aliases: dict[str, str], raw: str | None, default: str) -> str:
    name = raw or default
    if name in aliases:
        return aliases[name]
    if name in aliases.values():
        return name
    raise InputError(f"unknown variant {name!r}; choose from {sorted(aliases)}")


def _build(reduction: str, args: argparse.Namespace) -> gd.GadgetInstance:
    k = _require(args.k, "--k")
    text = _read(args.source)
    if reduction == "hs2mp":
        return gd.hs_to_mp(_variant(HS_ALIASES, args.variant, "chordal"), gd.parse_set_system(text), k)
    if reduction == "tds2mp":
        return gd.tds_to_mp(_variant(TDS_ALIASES, args.variant, "regular"), gc.parse_graph(text), k)
    if reduction == "is2rmp":
        r = args.r if args.r is not None else 2
        return gd.is_to_rmp(_variant(IS_ALIASES, args.variant, "pb"), gc.parse_graph(text), k, r)
    raise InputError(f"unknown reduction {reduction!r}")


def cmd_gadget(args: argparse.Namespace) -> dict[str, object]:
    if args.action in ("hs2mp", "tds2mp", "is2rmp"):
        inst = _build(args.action, args)
        out = inst.to_json()
        out["structure"] = gd.validate_structure(inst)
        return out
    if args.reduction is None:
        raise InputError(f"gadget {args.action} needs --reduction hs2mp|tds2mp|is2rmp")
    if args.witness is None:
        raise InputError(f"gadget {args.action} needs a witness file")
    inst = _build(args.reduction, args)
    members = _members(args.witness)
    if args.action == "reassign":
        if inst.problem != "is":
            raise InputError("reassign applies to is2rmp gadgets")
        r = inst.params["r"]
        if not verify_r_multipacking(inst.graph, members, r):
            raise VerificationFailure({"valid": False, "reason": "input is not an r-multipacking"})
        out_w = gd.reassign(inst, members)
        _reverify(
            verify_r_multipacking(inst.graph, out_w, r) and len(out_w) == len(set(members)),
            "reassigned multipacking",
        )
        return {"size": len(out_w), **out_w.to_json(), "names": [inst.names[v] for v in out_w.sorted()]}
    direction = args.dir or "fwd"
    if direction not in ("fwd", "bwd"):
        raise InputError("--dir must be fwd or bwd")
    try:
        image = gd.map_solution(inst, direction, members)  # type: ignore[arg-type]
    except gd.MappingFailure as exc:
        raise VerificationFailure({"mapped": False, "reason": str(exc)}) from exc
    except gd.GadgetError as exc:
        raise VerificationFailure({"mapped": False, "reason": str(exc)}) from exc
    key = "M" if direction == "fwd" else "S"
    out: dict[str, object] = {"direction": direction, "target": inst.target, key: image}
    if direction == "fwd":
        out["names"] = [inst.names[v] for v in image]
    return out


def _points(path: str) -> geo.PointSet:
    return geo.parse_points(_read(path))


def cmd_geo(args: argparse.Namespace) -> dict[str, object]:
    P = _points(args.points)
    if args.action == "nng":
        return {"n": P.n, **geo.build_nng(P).to_json()}
    if args.action == "mdb":
        f = geo.mdb(P)
        _reverify(geo.verify_point_broadcast(P, f), "point broadcast")
        out = {"cost": f.cost, **f.to_json()}
        if P.n >= 2:
            out["edge_cover"] = [list(e) for e in geo.min_edge_cover(geo.build_nng(P))]
        return out
    if args.action == "mp":
        size, members = geo.mp_points_exact(P, args.r, budget=_budget(args))
        _reverify(geo.verify_point_multipacking(P, members, args.r), "point multipacking")
        return {"size": size, "M": members, "r": args.r if args.r is not None else P.n - 1}
    if args.action == "line-rmp":
        r = args.r if args.r is not None else max(1, P.n - 1)
        size, members = geo.line_r_multipacking(P, r)
        _reverify(geo.verify_point_multipacking(P, members, r), "point multipacking")
        return {"size": size, "M": members, "r": r}
    rep = geo.bounds_points(P)
    return rep.to_json()


def cmd_selftest(args: argparse.Namespace) -> dict[str, object]:
    seed = args.seed if args.seed is not None else acceptance.DEFAULT_SEED
    results = acceptance.run_all(seed, args.only or None)
    for res in results:
        print(res.line(), file=sys.stderr)
    out = {"seed": seed, "passed": all(r.passed for r in results), "criteria": [r.to_json() for r in results]}
    if not out["passed"]:
        raise VerificationFailure(out)
    return out


def _reverify(ok: bool, what: str) -> None:
    if not ok:
        raise VerificationFailure({"valid": False, "reason": f"emitted {what} failed re-verification"})


# parser --------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for randomised steps")
    common.add_argument("--budget", type=int, default=None, help="search-node cap (default: $PACKDOM_BUDGET or built-in)")
    common.add_argument("--k", type=int, default=None)
    common.add_argument("--r", type=int, default=None)
    common.add_argument("--variant", default=None)
    common.add_argument("--pretty", action="store_true", help="indented, human-readable JSON")

    p = argparse.ArgumentParser(prog="packdom", description="Multipacking and broadcast domination toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable[[argparse.Namespace], dict[str, object]], help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("classify", cmd_classify, "structural flags").add_argument("graph")
    sp = add("mp", cmd_mp, "multipacking: exact, approx or verify")
    sp.add_argument("action", choices=("exact", "approx", "verify"))
    sp.add_argument("graph")
    sp.add_argument("witness", nargs="?")
    sp = add("gammab", cmd_gammab, "broadcast domination: exact or verify")
    sp.add_argument("action", choices=("exact", "verify"))
    sp.add_argument("graph")
    sp.add_argument("witness", nargs="?")
    add("bounds", cmd_bounds, "bound report").add_argument("graph")
    sp = add("frac", cmd_frac, "fractional multipacking check")
    sp.add_argument("action", choices=("verify",))
    sp.add_argument("graph")
    sp.add_argument("weights")
    add("cactus", cmd_cactus, "cactus multipacking pipeline").add_argument("graph")
    add("hyperbolicity", cmd_hyperbolicity, "four-point hyperbolicity").add_argument("graph")
    sp = add("family", cmd_family, "certificate families")
    sp.add_argument("name", choices=sorted(FAMILIES))
    sp = add("gadget", cmd_gadget, "reduction gadgets")
    sp.add_argument("action", choices=("hs2mp", "tds2mp", "is2rmp", "map", "reassign"))
    sp.add_argument("source", help="source instance (set-system or graph file)")
    sp.add_argument("witness", nargs="?", help="witness JSON for map/reassign")
    sp.add_argument("--reduction", choices=("hs2mp", "tds2mp", "is2rmp"), default=None)
    sp.add_argument("--dir", choices=("fwd", "bwd"), default=None)
    sp = add("geo", cmd_geo, "point-set broadcasts and multipackings")
    sp.add_argument("action", choices=("nng", "mdb", "mp", "line-rmp", "bounds"))
    sp.add_argument("points")
    sp = add("selftest", cmd_selftest, "run the acceptance suite")
    sp.add_argument("--only", type=int, nargs="*", default=None, help="criterion numbers")
    return p


def _emit(payload: dict[str, object], pretty: bool) -> None:
    if pretty:
        print(json.dumps(payload, indent=2, default=_default))
    else:
        print(json.dumps(payload, separators=(",", ":"), default=_default))


def _default(x: object) -> object:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, PackingWitness):
        return x.sorted()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        payload = args.func(args)
    except VerificationFailure as exc:
        _emit(exc.payload, args.pretty)
        return EXIT_VERIFY
    except Inconclusive as exc:
        print(f"packdom: inconclusive: {exc}", file=sys.stderr)
        _emit({"inconclusive": True, "reason": str(exc)}, args.pretty)
        return EXIT_INCONCLUSIVE
    except (InputError, gc.GraphFormatError, gc.DisconnectedGraphError, NotACactusError,
            geo.PointFormatError, geo.GeneralPositionError, gd.GadgetError, ValueError, IndexError) as exc:
        print(f"packdom: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(payload, args.pretty)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
