"""Isomorphism testing, pattern copy search, and vertex transitivity."""

from __future__ import annotations

from .budget import BudgetExhausted, NodeBudget
from .errors import ResourceLimitError
from .graph import Graph, VertexSet, bits


def _stable_colors(g: Graph) -> list[int]:
    """Refine vertex colors by neighbor-color multisets until stable.

    Equal stable colors are a necessary condition for two vertices to be
    exchanged by an automorphism, so the classes serve as candidate filters.
    """
    colors = [g.degree(v) for v in range(g.n)]
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[u] for u in g.neighbors(v))))
            for v in range(g.n)
        ]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if new == colors:
            return colors
        colors = new


def _search_iso(
    g: Graph,
    cg: list[int],
    h: Graph,
    ch: list[int],
    nb: NodeBudget,
    pin: tuple[int, int] | None = None,
) -> list[int] | None:
    """Backtracking search for an isomorphism g -> h, or None.

    ``pin`` forces one assignment up front (used for orbit computations).
    Assumes n and the sorted color multisets already match.
    """
    n = g.n
    cand = []
    for v in range(n):
        mask = 0
        for u in range(n):
            if ch[u] == cg[v]:
                mask |= 1 << u
        if mask == 0:
            return None
        cand.append(mask)

    mapping = [-1] * n
    state = {"used": 0}
    if pin is not None:
        v0, u0 = pin
        if not (cand[v0] >> u0) & 1:
            return None
        mapping[v0] = u0
        state["used"] = 1 << u0

    def choose() -> int:
        best = -1
        best_key: tuple[int, int, int] | None = None
        for v in range(n):
            if mapping[v] >= 0:
                continue
            placed = sum(1 for u in g.neighbors(v) if mapping[u] >= 0)
            opts = bin(cand[v] & ~state["used"]).count("1")
            key = (-placed, opts, v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        return best

    def extend(done: int) -> bool:
        nb.tick()
        if done == n:
            return True
        v = choose()
        avail = cand[v] & ~state["used"]
        if not avail:
            return False
        img_nb = 0
        for w in g.neighbors(v):
            if mapping[w] >= 0:
                img_nb |= 1 << mapping[w]
        for u in bits(avail):
            # mapped neighbors of v must be exactly the mapped h-neighbors of u
            if h.rows[u] & state["used"] != img_nb:
                continue
            mapping[v] = u
            state["used"] |= 1 << u
            if extend(done + 1):
                return True
            mapping[v] = -1
            state["used"] &= ~(1 << u)
        return False

    start = 1 if pin is not None else 0
    if extend(start):
        return mapping
    return None


def find_isomorphism(g: Graph, h: Graph, budget: int | None = None) -> list[int] | None:
    """Vertex mapping g -> h witnessing isomorphism, or None when none exists."""
    if g.n != h.n or g.m != h.m:
        return None
    if g.degree_sequence() != h.degree_sequence():
        return None
    cg = _stable_colors(g)
    ch = _stable_colors(h)
    if sorted(cg) != sorted(ch):
        return None
    nb = NodeBudget(budget)
    try:
        return _search_iso(g, cg, h, ch, nb)
    except BudgetExhausted:
        raise ResourceLimitError(
            "isomorphism search exceeded its node budget", nodes=nb.limit
        ) from None


def is_isomorphic(g: Graph, h: Graph, budget: int | None = None) -> bool:
    """Exact isomorphism test via refinement invariants plus backtracking."""
    return find_isomorphism(g, h, budget=budget) is not None


def _pattern_order(pattern: Graph) -> list[int]:
    """Order pattern vertices so each one touches earlier ones when possible."""
    n = pattern.n
    if n == 0:
        return []
    placed: list[int] = []
    in_order = [False] * n
    start = max(range(n), key=lambda v: (pattern.degree(v), -v))
    placed.append(start)
    in_order[start] = True
    while len(placed) < n:
        best = max(
            (v for v in range(n) if not in_order[v]),
            key=lambda v: (
                sum(1 for u in pattern.neighbors(v) if in_order[u]),
                pattern.degree(v),
                -v,
            ),
        )
        placed.append(best)
        in_order[best] = True
    return placed


def _copy_search(
    g: Graph,
    pattern: Graph,
    induced: bool,
    first_only: bool,
    nb: NodeBudget,
) -> list[VertexSet]:
    n, pn = g.n, pattern.n
    if pn == 0:
        return [frozenset()]
    if pn > n:
        return []
    full = (1 << n) - 1
    order = _pattern_order(pattern)
    base = []
    for p in order:
        mask = 0
        for u in range(n):
            if g.degree(u) >= pattern.degree(p):
                mask |= 1 << u
        base.append(mask)

    found: set[VertexSet] = set()
    images = [-1] * pn

    def extend(k: int, used: int) -> bool:
        nb.tick()
        if k == pn:
            found.add(frozenset(images))
            return first_only
        p = order[k]
        req = full
        forb = 0
        for j in range(k):
            q = order[j]
            if pattern.has_edge(p, q):
                req &= g.rows[images[j]]
            elif induced:
                forb |= g.rows[images[j]]
        avail = base[k] & req & ~forb & ~used
        for u in bits(avail):
            images[k] = u
            if extend(k + 1, used | (1 << u)):
                return True
        return False

    extend(0, 0)
    return sorted(found, key=sorted)


def find_induced_copies(
    g: Graph, pattern: Graph, budget: int | None = None
) -> list[VertexSet]:
    """All vertex sets of g that induce a copy of pattern, deduped by set."""
    nb = NodeBudget(budget)
    try:
        return _copy_search(g, pattern, induced=True, first_only=False, nb=nb)
    except BudgetExhausted:
        raise ResourceLimitError(
            "induced-copy search exceeded its node budget", nodes=nb.limit
        ) from None


def find_subgraph_copies(
    g: Graph, pattern: Graph, budget: int | None = None
) -> list[VertexSet]:
    """Vertex sets of g whose induced subgraph contains pattern, deduped by set."""
    nb = NodeBudget(budget)
    try:
        return _copy_search(g, pattern, induced=False, first_only=False, nb=nb)
    except BudgetExhausted:
        raise ResourceLimitError(
            "subgraph-copy search exceeded its node budget", nodes=nb.limit
        ) from None


def contains_subgraph(g: Graph, pattern: Graph, budget: int | None = None) -> bool:
    """Whether g contains pattern as a (not necessarily induced) subgraph."""
    nb = NodeBudget(budget)
    try:
        return bool(_copy_search(g, pattern, induced=False, first_only=True, nb=nb))
    except BudgetExhausted:
        raise ResourceLimitError(
            "subgraph search exceeded its node budget", nodes=nb.limit
        ) from None


def contains_induced(g: Graph, pattern: Graph, budget: int | None = None) -> bool:
    """Whether g contains pattern as an induced subgraph."""
    nb = NodeBudget(budget)
    try:
        return bool(_copy_search(g, pattern, induced=True, first_only=True, nb=nb))
    except BudgetExhausted:
        raise ResourceLimitError(
            "induced-subgraph search exceeded its node budget", nodes=nb.limit
        ) from None


def is_vertex_transitive(g: Graph, budget: int | None = None) -> bool:
    """Whether the automorphism group acts transitively on the vertices.

    Grows the orbit of vertex 0 by searching for one automorphism per
    unreached vertex; the found generators close the orbit quickly.
    """
    if g.n <= 1:
        return True
    colors = _stable_colors(g)
    if len(set(colors)) > 1:
        return False
    nb = NodeBudget(budget)
    gens: list[list[int]] = []
    orbit = {0}
    try:
        for v in range(1, g.n):
            if v in orbit:
                continue
            perm = _search_iso(g, colors, g, colors, nb, pin=(0, v))
            if perm is None:
                return False
            gens.append(perm)
            frontier = list(orbit)
            while frontier:
                w = frontier.pop()
                for p in gens:
                    x = p[w]
                    if x not in orbit:
                        orbit.add(x)
                        frontier.append(x)
    except BudgetExhausted:
        raise ResourceLimitError(
            "automorphism search exceeded its node budget", nodes=nb.limit
        ) from None
    return len(orbit) == g.n
