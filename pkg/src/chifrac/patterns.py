"""Fixed pattern catalog and independent-set hitting machinery.

The catalog holds small named graphs used as forbidden patterns, reduction
targets, and regression fixtures. The hitting searches find independent sets
that intersect every copy of given patterns, or every maximum clique, or one
vertex per clique of a partition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .budget import BudgetExhausted, NodeBudget
from .cliques import clique_number, independence_number, maximal_independent_sets
from .errors import (
    GraphInputError,
    HypothesisViolationError,
    NotFoundError,
    ResourceLimitError,
)
from .graph import (
    Graph,
    VertexSet,
    bits,
    contract,
    delta,
    is_connected,
    make_complete,
    make_cycle,
    strong_product,
    cycle_power,
)
from .iso import (
    contains_induced,
    contains_subgraph,
    find_induced_copies,
    find_subgraph_copies,
    is_isomorphic,
)


def _build_catalog() -> dict[str, Graph]:
    cat: dict[str, Graph] = {}

    # K5 minus one edge: 9 edges, degree sequence 3,3,4,4,4
    cat["K5minus"] = Graph.from_edges(
        5, [(u, v) for u in range(5) for v in range(u + 1, 5) if (u, v) != (3, 4)]
    )

    # hub 0 with two contracted pairs 1,2; fans 3,4 and 5,6; apexes 7 and 8
    cat["G0"] = Graph.from_edges(
        9,
        [
            (0, 1), (0, 2),
            (1, 3), (1, 4), (1, 5), (1, 6),
            (2, 3), (2, 4), (2, 5), (2, 6),
            (3, 4), (3, 7), (4, 7),
            (5, 6), (5, 8), (6, 8),
            (7, 8),
        ],
    )

    # family one: hub 0 over the path 1-2-3-4, plus triangle 5,6,7
    p4_base = [
        (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 2), (2, 3), (3, 4),
        (5, 6), (5, 7), (6, 7),
    ]
    cat["H1"] = Graph.from_edges(
        8, p4_base + [(5, 1), (5, 2), (6, 1), (6, 4), (7, 3), (7, 4)]
    )
    h2_extra = [(5, 1), (5, 4), (6, 1), (6, 4), (7, 2), (7, 3)]
    cat["H2"] = Graph.from_edges(8, p4_base + h2_extra)
    cat["H3"] = Graph.from_edges(8, p4_base + [e for e in h2_extra if e != (7, 2)])
    cat["H4"] = Graph.from_edges(8, p4_base + [(5, 1), (5, 2), (7, 3), (7, 4), (6, 1)])
    cat["H5"] = Graph.from_edges(8, p4_base + [e for e in h2_extra if e != (5, 4)])
    cat["H6"] = Graph.from_edges(8, p4_base + [(5, 1), (5, 2), (6, 1), (6, 4), (7, 4)])

    # family two: hub 0 over two disjoint edges 1-2 and 3-4, plus triangle 5,6,7
    ee_base = [
        (0, 1), (0, 2), (0, 3), (0, 4),
        (1, 2), (3, 4),
        (5, 6), (5, 7), (6, 7),
    ]
    cat["H7"] = Graph.from_edges(
        8, ee_base + [(5, 1), (5, 2), (6, 1), (6, 3), (7, 2), (7, 3)]
    )
    cat["H8"] = Graph.from_edges(
        8, ee_base + [(5, 1), (5, 2), (6, 3), (6, 4), (7, 1), (7, 3)]
    )
    cat["H9"] = Graph.from_edges(8, ee_base + [(5, 1), (5, 2), (6, 3), (6, 4), (7, 1)])

    # contractions of H9 on its two independent degree-3 triples; both are
    # wheels on 6 vertices
    cat["G4"] = contract(cat["H9"], frozenset({2, 3, 7})).graph
    cat["G5"] = contract(cat["H9"], frozenset({2, 4, 7})).graph

    # H4 with two pendants 8 (on vertex 4) and 9 (on vertex 6)
    h4 = cat["H4"]
    cat["G2"] = Graph.from_edges(10, h4.edges() + [(8, 4), (9, 6)])
    cat["G2+uv"] = Graph.from_edges(10, h4.edges() + [(8, 4), (9, 6), (8, 9)])
    cat["G2/uv"] = Graph.from_edges(9, h4.edges() + [(8, 4), (8, 6)])

    cat["G6"] = Graph.from_edges(
        10,
        [
            (0, 1), (0, 2), (0, 3), (0, 6),
            (1, 6), (1, 4),
            (2, 3), (2, 5), (2, 9),
            (3, 5), (3, 9),
            (4, 5), (4, 6),
            (5, 6),
            (6, 7), (6, 8),
            (7, 8), (7, 9), (8, 9),
        ],
    )

    # hub 0 over two disjoint edges 1-2 and 3-4; the middle vertices 5,7
    # each take the first edge and 6,8 the second (same-edge attachment of
    # an adjacent middle pair would close a K4); tips 9 and 10 have degree 3
    cat["H10"] = Graph.from_edges(
        11,
        [
            (0, 1), (0, 2), (0, 3), (0, 4),
            (1, 2), (3, 4),
            (5, 1), (5, 2), (7, 1), (7, 2),
            (6, 3), (6, 4), (8, 3), (8, 4),
            (5, 6), (7, 8),
            (9, 5), (9, 6), (10, 7), (10, 8),
            (9, 10),
        ],
    )

    cat["C5xK2"] = strong_product(make_cycle(5), make_complete(2))
    cat["C8sq"] = cycle_power(8, 2)

    # the four clique-component shapes: a lone K4; a triangle with two or
    # three apexes; two triangle-apexes plus one off-center apex
    cat["compK4"] = make_complete(4)
    cat["compApex2"] = Graph.from_edges(
        5, [(0, 1), (0, 2), (1, 2), (3, 0), (3, 1), (3, 2), (4, 0), (4, 1), (4, 2)]
    )
    cat["compApex3"] = Graph.from_edges(
        6,
        [(0, 1), (0, 2), (1, 2)]
        + [(a, v) for a in (3, 4, 5) for v in (0, 1, 2)],
    )
    cat["compHybrid"] = Graph.from_edges(
        6,
        [(0, 1), (0, 2), (1, 2)]
        + [(3, 0), (3, 1), (3, 2), (4, 0), (4, 1), (4, 2), (5, 0), (5, 1), (5, 3)],
    )
    return cat


CATALOG: dict[str, Graph] = _build_catalog()


def catalog_names() -> list[str]:
    return sorted(CATALOG)


def catalog_graph(name: str) -> Graph:
    try:
        return CATALOG[name]
    except KeyError:
        raise GraphInputError(
            f"unknown catalog name {name!r}; available: {', '.join(catalog_names())}"
        ) from None


def contains_forbidden_pattern(
    g: Graph, induced: bool = False, budget: int | None = None
) -> str | None:
    """Detect K5minus or G0 containment (subgraph mode by default).

    Returns the offending catalog name, or None when g is clean. This is the
    acceptance condition for double-pair selections.
    """
    check = contains_induced if induced else contains_subgraph
    for name in ("K5minus", "G0"):
        if check(g, CATALOG[name], budget):
            return name
    return None


# ---------------- hitting machinery ----------------


@dataclass(frozen=True)
class HittingFamily:
    """Patterns to hit, each in induced-copy or subgraph-copy mode."""

    patterns: tuple[Graph, ...]
    modes: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.patterns:
            raise GraphInputError("hitting family must be non-empty")
        if len(self.modes) != len(self.patterns):
            raise GraphInputError("one mode is required per pattern")
        for i, (p, m) in enumerate(zip(self.patterns, self.modes)):
            if m not in ("induced", "subgraph"):
                raise GraphInputError(f"mode {m!r} at index {i} is not induced/subgraph")
            if not is_connected(p):
                raise GraphInputError(f"pattern at index {i} is not connected")


def lemma_family(lemma_id: str) -> HittingFamily:
    """The pattern family each hitting lemma quantifies over."""
    if lemma_id == "6to5":
        return HittingFamily(
            (make_complete(5), CATALOG["C5xK2"]), ("induced", "induced")
        )
    if lemma_id == "5to41":
        return HittingFamily((make_complete(4),), ("induced",))
    if lemma_id == "5to42":
        return HittingFamily((make_complete(4), CATALOG["C8sq"]), ("induced", "induced"))
    raise GraphInputError(f"unknown lemma id {lemma_id!r}; use 6to5, 5to41 or 5to42")


def _extend_maximal_set(g: Graph, chosen: int) -> VertexSet:
    blocked = chosen
    for v in bits(chosen):
        blocked |= g.rows[v]
    for v in range(g.n):
        if not (blocked >> v) & 1:
            chosen |= 1 << v
            blocked |= g.rows[v] | (1 << v)
    return frozenset(bits(chosen))


def stable_set_meeting_max_cliques(
    g: Graph, extend_maximal: bool = False, budget: int | None = None
) -> VertexSet:
    """Smallest independent set meeting every maximum clique.

    Exhaustive search by increasing size, lexicographic within each size.
    """
    omega = clique_number(g, budget)
    targets = [
        sum(1 << v for v in s)
        for s in maximal_independent_sets(g.complement())
        if len(s) == omega
    ]
    nb = NodeBudget(budget)
    alpha = independence_number(g, budget)

    def search(size: int, start: int, chosen: int, banned: int, unhit: list[int]) -> int | None:
        nb.tick()
        if not unhit:
            return chosen
        if size == 0:
            return None
        for v in range(start, g.n):
            if (banned >> v) & 1:
                continue
            bit = 1 << v
            rest = [t for t in unhit if not t & bit]
            got = search(size - 1, v + 1, chosen | bit, banned | g.rows[v] | bit, rest)
            if got is not None:
                return got
        return None

    try:
        for size in range(1, alpha + 1):
            got = search(size, 0, 0, 0, targets)
            if got is not None:
                result = frozenset(bits(got))
                return _extend_maximal_set(g, got) if extend_maximal else result
    except BudgetExhausted:
        raise ResourceLimitError(
            "max-clique hitting search exceeded its node budget", nodes=nb.limit
        ) from None
    raise NotFoundError(
        "no independent set meets every maximum clique",
        witness=tuple(frozenset(bits(t)) for t in targets),
    )


def stable_transversal_of_clique_partition(
    g: Graph, parts: list[VertexSet], k: int, budget: int | None = None
) -> VertexSet:
    """One independent vertex per clique part, under the outside-degree cap.

    Hypotheses checked: parts partition V; each part induces a clique; each
    vertex of part Vi has at most min(k, |Vi|-k) neighbors outside Vi.
    """
    if k < 1:
        raise GraphInputError(f"part parameter k must be >= 1, got {k}")
    if not parts:
        raise GraphInputError("parts must be non-empty")
    seen = 0
    for part in parts:
        for v in part:
            if v < 0 or v >= g.n or (seen >> v) & 1:
                raise HypothesisViolationError(
                    f"vertex {v} is missing from or repeated in the partition", vertex=v
                )
            seen |= 1 << v
    if seen != (1 << g.n) - 1:
        miss = (~seen & ((1 << g.n) - 1) & -(~seen & ((1 << g.n) - 1))).bit_length() - 1
        raise HypothesisViolationError(
            f"vertex {miss} is missing from the partition", vertex=miss
        )
    part_masks = [sum(1 << v for v in part) for part in parts]
    for part, mask in zip(parts, part_masks):
        cap = min(k, len(part) - k)
        for v in part:
            inside = g.rows[v] & mask
            if inside != mask & ~(1 << v):
                raise HypothesisViolationError(
                    f"part containing vertex {v} does not induce a clique", vertex=v
                )
            outside = (g.rows[v] & ~mask).bit_count()
            if outside > cap:
                raise HypothesisViolationError(
                    f"vertex {v} has {outside} outside neighbors, cap is {cap}",
                    vertex=v,
                )
    nb = NodeBudget(budget)
    order = sorted(range(len(parts)), key=lambda i: (len(parts[i]), i))
    chosen: list[int] = []

    def place(idx: int, banned: int) -> bool:
        nb.tick()
        if idx == len(order):
            return True
        for v in sorted(parts[order[idx]]):
            if (banned >> v) & 1:
                continue
            chosen.append(v)
            if place(idx + 1, banned | g.rows[v] | (1 << v)):
                return True
            chosen.pop()
        return False

    try:
        ok = place(0, 0)
    except BudgetExhausted:
        raise ResourceLimitError(
            "clique-partition transversal search exceeded its node budget",
            nodes=nb.limit,
        ) from None
    if not ok:
        raise NotFoundError("no stable transversal exists; hypotheses must have failed")
    return frozenset(chosen)


def hitting_independent_set(
    g: Graph,
    family: HittingFamily,
    extend_maximal: bool = False,
    budget: int | None = None,
) -> VertexSet:
    """Independent set meeting every copy of every family pattern.

    Branches on the copy with the fewest selectable vertices (ties by
    smallest minimum vertex id). Raises not-found with an unhit copy as
    witness when the search space is exhausted.
    """
    copies: set[VertexSet] = set()
    for pat, mode in zip(family.patterns, family.modes):
        finder = find_induced_copies if mode == "induced" else find_subgraph_copies
        copies.update(finder(g, pat, budget))
    copy_masks = sorted(
        (sum(1 << v for v in c) for c in copies),
        key=lambda m: (m.bit_count(), (m & -m).bit_length()),
    )
    if not copy_masks:
        return _extend_maximal_set(g, 0) if extend_maximal else frozenset()
    nb = NodeBudget(budget)
    root_witness = copy_masks[0]

    def search(chosen: int, banned: int, unhit: list[int]) -> int | None:
        nb.tick()
        if not unhit:
            return chosen
        best_i = -1
        best_key: tuple[int, int] | None = None
        for i, cm in enumerate(unhit):
            avail = cm & ~banned
            key = (avail.bit_count(), (cm & -cm).bit_length())
            if best_key is None or key < best_key:
                best_key = key
                best_i = i
        target = unhit[best_i]
        for v in bits(target & ~banned):
            bit = 1 << v
            rest = [cm for cm in unhit if not cm & bit]
            got = search(chosen | bit, banned | g.rows[v] | bit, rest)
            if got is not None:
                return got
        return None

    try:
        got = search(0, 0, copy_masks)
    except BudgetExhausted:
        raise ResourceLimitError(
            "hitting-set search exceeded its node budget", nodes=nb.limit
        ) from None
    if got is None:
        raise NotFoundError(
            "no independent set hits every pattern copy",
            witness=frozenset(bits(root_witness)),
        )
    return _extend_maximal_set(g, got) if extend_maximal else frozenset(bits(got))


# ---------------- lemma hypothesis reports ----------------


@dataclass(frozen=True)
class LemmaReport:
    """Pass/fail per hypothesis of one hitting lemma on one graph."""

    lemma: str
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _is_odd_cycle_box_k2(g: Graph) -> bool:
    """Whether g is C_{2l+1} boxtimes K2 for some l >= 2."""
    if g.n < 10 or g.n % 2 or g.m != 5 * g.n // 2:
        return False
    half = g.n // 2
    if half % 2 == 0:
        return False
    return is_isomorphic(g, strong_product(make_cycle(half), make_complete(2)))


def check_lemma_hypotheses(g: Graph, lemma_id: str) -> LemmaReport:
    """Evaluate one lemma's hypotheses so sweeps can quantify correctly."""
    if lemma_id == "6to5":
        checks = {
            "connected": is_connected(g),
            "delta<=6": delta(g) <= 6,
            "omega<=5": clique_number(g) <= 5,
        }
    elif lemma_id in ("5to41", "5to42"):
        checks = {
            "connected": is_connected(g),
            "delta<=5": delta(g) <= 5,
            "omega<=4": clique_number(g) <= 4,
            "not_odd_cycle_box_k2": not _is_odd_cycle_box_k2(g),
        }
    else:
        raise GraphInputError(
            f"unknown lemma id {lemma_id!r}; use 6to5, 5to41 or 5to42"
        )
    return LemmaReport(lemma_id, checks)
