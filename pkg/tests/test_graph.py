"""Core graph type: constructors, derived graphs, contraction, blocks."""

from __future__ import annotations

import random

import pytest

from chifrac.errors import GraphInputError
from chifrac.graph import (
    Graph,
    blocks,
    contract,
    contract_pair,
    contract_triple,
    cycle_power,
    delta,
    edges_between,
    is_connected,
    is_gallai_forest,
    is_gallai_tree,
    make_complete,
    make_cycle,
    make_path,
    strong_product,
)

from conftest import from_networkx, random_graph, to_networkx


def test_from_edges_validation():
    with pytest.raises(GraphInputError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphInputError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphInputError):
        Graph.from_edges(-1, [])
    g = Graph.from_edges(3, [(0, 1), (1, 0)])
    assert g.m == 1


def test_accessors():
    g = make_path(4)
    assert g.degree(0) == 1 and g.degree(1) == 2
    assert g.neighbors(1) == (0, 2)
    assert g.has_edge(2, 3) and not g.has_edge(0, 3)
    assert g.m == 3
    assert g.degree_sequence() == (1, 1, 2, 2)
    assert delta(g) == 2
    with pytest.raises(GraphInputError):
        g.degree(9)


def test_induced_relabels_sorted():
    g = make_cycle(5)
    h = g.induced([4, 0, 1])
    assert h.n == 3
    assert set(h.edges()) == {(0, 1), (0, 2)}
    assert g.without([2]).n == 4


def test_with_edge_and_complement():
    g = make_path(3)
    assert g.with_edge(0, 2).m == 3
    assert g.complement().edges() == [(0, 2)]
    rng = random.Random(11)
    for _ in range(20):
        g = random_graph(rng, rng.randrange(1, 10), rng.random())
        assert g.complement().complement().rows == g.rows
        assert g.m + g.complement().m == g.n * (g.n - 1) // 2


def test_relabel_is_adjacency_preserving():
    rng = random.Random(5)
    for _ in range(20):
        g = random_graph(rng, 8, 0.4)
        perm = list(range(8))
        rng.shuffle(perm)
        h = g.relabel(perm)
        for u in range(8):
            for v in range(8):
                assert g.has_edge(u, v) == h.has_edge(perm[u], perm[v])


def test_standard_constructions_against_networkx():
    nx = pytest.importorskip("networkx")
    assert from_networkx(nx.complete_graph(6)).rows == make_complete(6).rows
    assert from_networkx(nx.cycle_graph(7)).rows == make_cycle(7).rows
    assert from_networkx(nx.path_graph(5)).rows == make_path(5).rows
    sq = nx.power(nx.cycle_graph(8), 2)
    assert from_networkx(sq).rows == cycle_power(8, 2).rows


def test_strong_product_matches_networkx():
    nx = pytest.importorskip("networkx")
    rng = random.Random(3)
    for _ in range(10):
        a = random_graph(rng, rng.randrange(2, 5), 0.5)
        b = random_graph(rng, rng.randrange(2, 4), 0.6)
        mine = strong_product(a, b)
        theirs = nx.strong_product(to_networkx(a), to_networkx(b))
        # same vertex order: (u, v) -> u * b.n + v
        relabeled = nx.relabel_nodes(theirs, lambda p: p[0] * b.n + p[1])
        assert from_networkx(relabeled).rows == mine.rows


def test_cycle_power_edges_by_circular_distance():
    g = cycle_power(9, 3)
    for u in range(9):
        for v in range(u + 1, 9):
            d = min(v - u, 9 - (v - u))
            assert g.has_edge(u, v) == (d <= 3)
    with pytest.raises(GraphInputError):
        cycle_power(2, 1)


def test_contract_cycle_antipodal_pair_gives_path():
    g = make_cycle(4)
    res = contract_pair(g, 0, 2)
    assert res.graph.rows == make_path(3).relabel([1, 0, 2]).rows
    assert res.fat == 0
    assert res.relabel[2] == 0 and res.relabel[3] == 2


def test_contract_edge_cases():
    g = make_complete(4)
    res = contract_triple(g, 0, 1, 2)
    assert res.graph.rows == make_complete(2).rows
    res = contract(g, [])
    assert res.graph.n == 5 and res.fat == 4 and res.graph.degree(4) == 0
    res = contract(g, [2])
    assert res.graph.rows == g.rows and res.fat == 2
    # fat vertex keeps outside adjacency, inside edges vanish
    g = make_cycle(6)
    res = contract(g, [0, 1])
    assert res.graph.n == 5
    assert res.graph.degree(res.fat) == 2


def test_contract_relabel_total_and_consistent():
    rng = random.Random(17)
    for _ in range(20):
        g = random_graph(rng, 9, 0.4)
        s = rng.sample(range(9), rng.randrange(2, 5))
        res = contract(g, s)
        assert set(res.relabel) == set(range(9))
        for v in s:
            assert res.relabel[v] == res.fat
        outside = [v for v in range(9) if v not in s]
        for u in outside:
            for v in outside:
                if u != v:
                    assert g.has_edge(u, v) == res.graph.has_edge(
                        res.relabel[u], res.relabel[v]
                    )
            has_into = any(g.has_edge(u, w) for w in s)
            assert res.graph.has_edge(res.relabel[u], res.fat) == has_into


def test_edges_between():
    g = make_cycle(6)
    assert edges_between(g, [0, 1], [2, 3]) == 1
    assert edges_between(g, [0, 2, 4], [1, 3, 5]) == 6


def test_connectivity():
    assert is_connected(Graph.from_edges(0, []))
    assert is_connected(make_cycle(5))
    assert not is_connected(Graph.from_edges(3, [(0, 1)]))
    rng = random.Random(23)
    nx = pytest.importorskip("networkx")
    for _ in range(25):
        g = random_graph(rng, rng.randrange(1, 11), 0.25)
        assert is_connected(g) == nx.is_connected(to_networkx(g))


def test_blocks_on_bowtie_and_randoms():
    nx = pytest.importorskip("networkx")
    bowtie = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    dec = blocks(bowtie)
    assert set(dec.blocks) == {frozenset({0, 1, 2}), frozenset({2, 3, 4})}
    assert dec.cut_vertices == frozenset({2})
    rng = random.Random(29)
    for _ in range(25):
        g = random_graph(rng, rng.randrange(2, 11), 0.3)
        dec = blocks(g)
        h = to_networkx(g)
        # isolated vertices get singleton blocks here but not in networkx
        mine = {b for b in dec.blocks if len(b) > 1}
        theirs = {frozenset(b) for b in nx.biconnected_components(h)}
        assert mine == theirs
        assert dec.cut_vertices == frozenset(nx.articulation_points(h))


def test_gallai_recognition():
    from chifrac.errors import NotConnectedError

    bowtie = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
    assert is_gallai_tree(bowtie)
    assert is_gallai_tree(make_complete(4))
    assert is_gallai_tree(make_cycle(7))
    assert not is_gallai_tree(make_cycle(6))
    two = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    with pytest.raises(NotConnectedError):
        is_gallai_tree(two)
    assert is_gallai_forest(two)
    assert not is_gallai_forest(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
