"""Isomorphism search and pattern copy enumeration."""

from __future__ import annotations

import random

import pytest

from chifrac.errors import ResourceLimitError
from chifrac.graph import (
    Graph,
    make_complete,
    make_cycle,
    make_path,
    strong_product,
)
from chifrac.iso import (
    contains_induced,
    contains_subgraph,
    find_induced_copies,
    find_isomorphism,
    find_subgraph_copies,
    is_isomorphic,
    is_vertex_transitive,
)

from conftest import random_graph, to_networkx

PAW = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def test_relabeled_graphs_are_isomorphic():
    rng = random.Random(71)
    for _ in range(20):
        g = random_graph(rng, rng.randrange(1, 10), 0.5)
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        mapping = find_isomorphism(g, h)
        assert mapping is not None
        assert sorted(mapping) == list(range(g.n))
        for u in range(g.n):
            for v in range(g.n):
                assert g.has_edge(u, v) == h.has_edge(mapping[u], mapping[v])


def test_same_degrees_but_not_isomorphic():
    k33 = Graph.from_edges(6, [(i, 3 + j) for i in range(3) for j in range(3)])
    prism = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3),
                                 (0, 3), (1, 4), (2, 5)])
    assert k33.degree_sequence() == prism.degree_sequence()
    assert not is_isomorphic(k33, prism)
    assert is_isomorphic(prism, prism.relabel([3, 0, 4, 1, 5, 2]))
    assert find_isomorphism(make_cycle(4), make_path(4)) is None


def test_is_isomorphic_matches_networkx():
    nx = pytest.importorskip("networkx")
    rng = random.Random(73)
    for _ in range(30):
        g = random_graph(rng, 7, 0.5)
        h = random_graph(rng, 7, 0.5)
        assert is_isomorphic(g, h) == nx.is_isomorphic(to_networkx(g), to_networkx(h))


def test_induced_copies_in_strong_product():
    g = strong_product(make_cycle(5), make_complete(2))
    copies = find_induced_copies(g, make_complete(4))
    assert len(copies) == 5
    assert all(len(c) == 4 for c in copies)


def test_copy_enumeration_matches_networkx():
    nx = pytest.importorskip("networkx")
    from networkx.algorithms import isomorphism as nxiso

    rng = random.Random(79)
    patterns = [make_path(4), make_cycle(4), make_complete(3), PAW]
    for _ in range(12):
        g = random_graph(rng, 8, 0.45)
        h = to_networkx(g)
        for pat in patterns:
            hp = to_networkx(pat)
            gm = nxiso.GraphMatcher(h, hp)
            expect_ind = {frozenset(m) for m in gm.subgraph_isomorphisms_iter()}
            assert set(find_induced_copies(g, pat)) == expect_ind
            gm = nxiso.GraphMatcher(h, hp)
            expect_sub = {frozenset(m) for m in gm.subgraph_monomorphisms_iter()}
            got_sub = set(find_subgraph_copies(g, pat))
            # monomorphism images of distinct vertices are distinct, so the
            # set comparison needs images of full pattern size only
            assert got_sub == {s for s in expect_sub if len(s) == pat.n}
            assert contains_induced(g, pat) == bool(expect_ind)
            assert contains_subgraph(g, pat) == bool(got_sub)


def test_vertex_transitivity_knowns():
    assert is_vertex_transitive(make_cycle(6))
    assert is_vertex_transitive(petersen())
    assert is_vertex_transitive(make_complete(5))
    assert not is_vertex_transitive(make_path(3))
    assert not is_vertex_transitive(PAW)


def test_budget_exhaustion():
    g = random_graph(random.Random(83), 14, 0.5)
    h = g.relabel(list(reversed(range(14))))
    with pytest.raises(ResourceLimitError):
        find_isomorphism(g, h, budget=1)
    with pytest.raises(ResourceLimitError):
        find_subgraph_copies(g, make_path(4), budget=1)
