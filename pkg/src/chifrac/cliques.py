"""Exact clique, independence, and coloring searches.

Branch and bound over bitmask adjacency with a greedy-coloring bound for
cliques; Bron-Kerbosch with pivoting for maximal independent sets; DSATUR
backtracking for exact colorability. Budgets raise
:class:`~chifrac.errors.ResourceLimitError` carrying partial bounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .budget import BudgetExhausted, NodeBudget
from .errors import GraphInputError, ResourceLimitError
from .graph import Graph, VertexSet, bits


# ---------------- maximal independent sets ----------------


def maximal_independent_sets(g: Graph) -> list[VertexSet]:
    """All MAXIMAL independent sets (Bron-Kerbosch with pivoting).

    These are the covering-LP columns; by the Moon-Moser bound there are at
    most 3^(n/3) of them.
    """
    n = g.n
    if n == 0:
        return []
    full = (1 << n) - 1
    comp = [full & ~g.rows[v] & ~(1 << v) for v in range(n)]
    out: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = -1
        best = -1
        for u in bits(pivot_pool):
            c = (p & comp[u]).bit_count()
            if c > best:
                best = c
                pivot = u
        for v in bits(p & ~comp[pivot]):
            vbit = 1 << v
            bk(r | vbit, p & comp[v], x & comp[v])
            p &= ~vbit
            x |= vbit

    bk(0, full, 0)
    return sorted((frozenset(bits(m)) for m in out), key=sorted)


# ---------------- maximum clique / independence ----------------


def _greedy_color_order(rows: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Greedy-color the candidate set; return vertices and their 1-based
    color numbers in nondecreasing color order (the clique BnB bound)."""
    order: list[int] = []
    colors: list[int] = []
    color = 0
    rest = p
    while rest:
        color += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            order.append(v)
            colors.append(color)
            avail &= ~(rows[v] | (1 << v))
            rest &= ~(1 << v)
    return order, colors


def max_clique(g: Graph, budget: int | None = None) -> tuple[int, VertexSet]:
    """Exact maximum clique via branch and bound with a coloring bound."""
    n = g.n
    if n == 0:
        return 0, frozenset()
    rows = g.rows
    nb = NodeBudget(budget)
    best_size = 0
    best_mask = 0

    def expand(r_mask: int, r_size: int, p: int) -> None:
        nonlocal best_size, best_mask
        nb.tick()
        if p == 0:
            if r_size > best_size:
                best_size = r_size
                best_mask = r_mask
            return
        order, colors = _greedy_color_order(rows, p)
        for i in range(len(order) - 1, -1, -1):
            v = order[i]
            if r_size + colors[i] <= best_size:
                return
            expand(r_mask | (1 << v), r_size + 1, p & rows[v])
            p &= ~(1 << v)

    try:
        expand(0, 0, (1 << n) - 1)
    except BudgetExhausted:
        raise ResourceLimitError(
            "clique search budget exhausted",
            nodes=nb.limit, lower=best_size, upper=n) from None
    return best_size, frozenset(bits(best_mask))


def clique_number(g: Graph, budget: int | None = None) -> int:
    return max_clique(g, budget)[0]


def max_independent_set(g: Graph, budget: int | None = None) -> tuple[int, VertexSet]:
    return max_clique(g.complement(), budget)


def independence_number(g: Graph, budget: int | None = None) -> int:
    return max_clique(g.complement(), budget)[0]


# ---------------- weighted independent set (LP pricing) ----------------


def max_weight_independent_set(
    g: Graph, weights: Sequence[Fraction], budget: int | None = None,
) -> tuple[Fraction, VertexSet]:
    """Maximum-weight independent set with exact rational weights.

    Bound: greedy partition of the candidates into cliques; each clique
    contributes at most its heaviest member. Zero-weight vertices are
    dropped up front.
    """
    n = g.n
    rows = g.rows
    nb = NodeBudget(budget)
    id_order = sorted(range(n), key=lambda v: (-weights[v], v))
    active = [v for v in id_order if weights[v] > 0]
    zero = Fraction(0)
    best_w = zero
    best_mask = 0

    def bound(p: int) -> Fraction:
        total = zero
        cliques: list[tuple[int, Fraction]] = []
        for v in active:
            if not (p >> v & 1):
                continue
            placed = False
            for i, (cm, cw) in enumerate(cliques):
                if cm & ~rows[v] == 0:
                    cliques[i] = (cm | (1 << v), cw)
                    placed = True
                    break
            if not placed:
                cliques.append((1 << v, weights[v]))
                total += weights[v]
        return total

    def expand(r_mask: int, r_w: Fraction, p: int) -> None:
        nonlocal best_w, best_mask
        nb.tick()
        if r_w > best_w:
            best_w = r_w
            best_mask = r_mask
        if p == 0 or r_w + bound(p) <= best_w:
            return
        for v in active:
            if not (p >> v & 1):
                continue
            if r_w + bound(p) <= best_w:
                return
            expand(r_mask | (1 << v), r_w + weights[v], p & ~rows[v] & ~(1 << v))
            p &= ~(1 << v)

    try:
        expand(0, zero, sum(1 << v for v in active))
    except BudgetExhausted:
        raise ResourceLimitError(
            "weighted independent set budget exhausted",
            nodes=nb.limit, lower=best_w, upper=sum(weights, zero)) from None
    return best_w, frozenset(bits(best_mask))


# ---------------- exact coloring ----------------


def degeneracy_order(g: Graph) -> list[int]:
    """Smallest-last order; greedy coloring along it uses at most
    degeneracy+1 colors."""
    n = g.n
    alive = (1 << n) - 1
    out = []
    for _ in range(n):
        v = min(bits(alive), key=lambda u: ((g.rows[u] & alive).bit_count(), u))
        out.append(v)
        alive &= ~(1 << v)
    out.reverse()
    return out


def greedy_coloring(g: Graph, order: Sequence[int] | None = None) -> list[int]:
    """First-fit coloring along ``order`` (default: degeneracy order)."""
    if order is None:
        order = degeneracy_order(g)
    colors = [-1] * g.n
    for v in order:
        used = 0
        for u in bits(g.rows[v]):
            if colors[u] >= 0:
                used |= 1 << colors[u]
        c = 0
        while used >> c & 1:
            c += 1
        colors[v] = c
    return colors


def is_k_colorable(g: Graph, k: int, budget: int | None = None) -> list[int] | None:
    """Exact k-colorability: a coloring, or None when proven impossible.

    DSATUR vertex choice, new colors introduced in index order to break
    palette symmetry.
    """
    n = g.n
    if k < 0:
        return None
    if n == 0:
        return []
    if k == 0:
        return None if n else []
    rows = g.rows
    nb = NodeBudget(budget)
    colors = [-1] * n
    sat = [0] * n  # bitmask of neighbor colors

    def pick() -> int:
        best_v = -1
        best_key = (-1, -1)
        for v in range(n):
            if colors[v] >= 0:
                continue
            key = (sat[v].bit_count(), rows[v].bit_count())
            if key > best_key:
                best_key = key
                best_v = v
        return best_v

    def assign(v: int, c: int) -> list[int]:
        colors[v] = c
        touched = []
        for u in bits(rows[v]):
            if colors[u] < 0 and not (sat[u] >> c & 1):
                sat[u] |= 1 << c
                touched.append(u)
        return touched

    def unassign(v: int, c: int, touched: list[int]) -> None:
        colors[v] = -1
        for u in touched:
            sat[u] &= ~(1 << c)

    def solve(colored: int, used: int) -> bool:
        nb.tick()
        if colored == n:
            return True
        v = pick()
        limit = min(k, used + 1)
        for c in range(limit):
            if sat[v] >> c & 1:
                continue
            touched = assign(v, c)
            if solve(colored + 1, max(used, c + 1)):
                return True
            unassign(v, c, touched)
        return False

    try:
        found = solve(0, 0)
    except BudgetExhausted:
        raise ResourceLimitError(
            f"{k}-colorability budget exhausted", nodes=nb.limit) from None
    return list(colors) if found else None


def chromatic_number(g: Graph, budget: int | None = None) -> int:
    """Exact chromatic number (clique lower bound, greedy upper bound,
    DSATUR backtracking in between)."""
    if g.n == 0:
        return 0
    lo = clique_number(g, budget)
    hi = max(greedy_coloring(g)) + 1
    for k in range(lo, hi):
        if is_k_colorable(g, k, budget) is not None:
            return k
    return hi


def cliques_of_size(g: Graph, k: int) -> list[VertexSet]:
    """All k-cliques, each reported once as a vertex set."""
    if k < 1:
        return []
    out: list[VertexSet] = []

    def grow(members: list[int], allowed: int) -> None:
        if len(members) == k:
            out.append(frozenset(members))
            return
        for v in bits(allowed):
            members.append(v)
            grow(members, allowed & g.rows[v] & ~((1 << (v + 1)) - 1))
            members.pop()

    grow([], (1 << g.n) - 1)
    return out


def clique_graph_components(g: Graph, k: int) -> list[VertexSet]:
    """Components of the subgraph whose edges lie in some K_k of g.

    Vertices touching no such edge are omitted; components are sorted by
    smallest member.
    """
    if k < 3:
        raise GraphInputError(f"clique size must be at least 3, got {k}")
    rows = [0] * g.n
    for clq in cliques_of_size(g, k):
        for v in clq:
            for u in clq:
                if u != v:
                    rows[v] |= 1 << u
    seen = 0
    comps: list[VertexSet] = []
    for v in range(g.n):
        if rows[v] == 0 or (seen >> v) & 1:
            continue
        frontier = 1 << v
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            for u in bits(frontier):
                nxt |= rows[u]
            frontier = nxt & ~comp
        seen |= comp
        comps.append(frozenset(bits(comp)))
    return comps


# spec-facing alias: enumerates all maximal independent sets
max_independent_sets = maximal_independent_sets
