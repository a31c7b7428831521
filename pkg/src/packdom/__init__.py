"""Multipacking and broadcast domination in graphs and point sets."""

from __future__ import annotations

from .graph import Graph, classify, hyperbolicity, parse_graph
from .multipacking import bounds_report, diametral_approx
from .oracles import gamma_b_exact, mp_exact, verify_broadcast, verify_multipacking

__all__ = [
    "Graph",
    "bounds_report",
    "classify",
    "diametral_approx",
    "gamma_b_exact",
    "hyperbolicity",
    "mp_exact",
    "parse_graph",
    "verify_broadcast",
    "verify_multipacking",
]

__version__ = "0.1.0"
