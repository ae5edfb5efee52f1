"""Shared helpers: corpus streaming, random graphs, networkx bridging."""

from __future__ import annotations

import gzip
import random
from pathlib import Path

import pytest

from chifrac.graph import Graph

DATA = Path(__file__).resolve().parent.parent / "data"

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter) -> None:
    # keep the per-criterion result lines visible under captured output
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def connected_lines(n: int):
    """Yield graph6 lines for all connected graphs on n vertices."""
    plain = DATA / f"connected_n{n}.g6"
    if plain.exists():
        with open(plain, encoding="ascii") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    yield line
        return
    with gzip.open(DATA / f"connected_n{n}.g6.gz", "rt", encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield line


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (a, b)
        for a in range(n)
        for b in range(a + 1, n)
        if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def to_networkx(g: Graph):
    nx = pytest.importorskip("networkx")
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_networkx(h) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(
        len(mapping), [(mapping[a], mapping[b]) for a, b in h.edges()]
    )
