from __future__ import annotations

import networkx as nx
import pytest

from packdom.graph import Graph

ACCEPTANCE_LINES: list[str] = []


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph(len(idx), [(idx[u], idx[v]) for u, v in h.edges])


def pytest_terminal_summary(terminalreporter: pytest.TerminalReporter) -> None:
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
