"""Constructive (4k):(k+1) coloring for connected K4-free graphs of max
degree 4 other than the square of the 8-cycle.

The pipeline selects a small independent "selection set" S(x) inside each
neighborhood, builds an auxiliary conflict graph from short connection
patterns between selections, colors it greedily to split the vertices into
classes, contracts each class into a small graph that is 4-colored exactly,
and reassembles the per-class colorings into one fold coloring of the whole
graph.  With k classes the result uses 4k colors, k+1 per vertex.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cliques import (
    cliques_of_size,
    greedy_coloring,
    independence_number,
    is_k_colorable,
)
from .errors import (
    AssemblyConflictError,
    ChifracError,
    ClassInvalidError,
    GraphInputError,
    HypothesisViolationError,
    NotConnectedError,
    NotFourColorableError,
    NoValidSelectionError,
)
from .graph import (
    Graph,
    bits,
    contract,
    cycle_power,
    delta,
    is_connected,
    is_gallai_forest,
)
from .graph6 import encode_graph6
from .iso import find_isomorphism, find_subgraph_copies
from .lp import FoldColoring, format_rational, verify_fold_coloring
from .patterns import catalog_graph, contains_forbidden_pattern

VertexSet = frozenset[int]

SELECTION_KINDS = ("nonEdgePair", "independentTriple", "doublePair", "smallDegree")

AUX_LEVELS = (1, 2, 3, 4, 5, 7)

MAX_CLASSES = 133


# ==================== selection sets ====================


@dataclass(frozen=True)
class Selection:
    """Selection inside one vertex's neighborhood.

    kind      one of SELECTION_KINDS
    s1        the vertices labeled 1 (empty for smallDegree)
    s2        the vertices labeled 2 (doublePair only, else None)
    """

    kind: str
    s1: VertexSet
    s2: VertexSet | None = None

    def __post_init__(self) -> None:
        sizes = {
            "nonEdgePair": (2, None),
            "independentTriple": (3, None),
            "doublePair": (2, 2),
            "smallDegree": (0, None),
        }
        if self.kind not in sizes:
            raise GraphInputError(f"unknown selection kind {self.kind!r}")
        want1, want2 = sizes[self.kind]
        if len(self.s1) != want1:
            raise GraphInputError(
                f"selection kind {self.kind} needs |s1|={want1}, got {len(self.s1)}"
            )
        if want2 is None:
            if self.s2 is not None:
                raise GraphInputError(f"selection kind {self.kind} forbids s2")
        elif self.s2 is None or len(self.s2) != want2:
            raise GraphInputError(f"selection kind {self.kind} needs |s2|={want2}")
        if self.s2 and self.s1 & self.s2:
            raise GraphInputError("selection labels overlap")

    @property
    def vertices(self) -> VertexSet:
        return self.s1 | (self.s2 or frozenset())


def _pair_partitions(vs: list[int]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    a, b, c, d = vs
    return [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]


def _double_contract(
    g: Graph, p1: tuple[int, int], p2: tuple[int, int]
) -> tuple[Graph, int, int, dict[int, int]]:
    """Contract two disjoint pairs; returns (graph, fat1, fat2, back map).

    back maps every surviving non-fat id to its original id.
    """
    r1 = contract(g, p1)
    r2 = contract(r1.graph, [r1.relabel[v] for v in p2])
    fat1 = r2.relabel[r1.fat]
    fat2 = r2.fat
    back = {}
    drop = set(p1) | set(p2)
    for v in range(g.n):
        if v not in drop:
            back[r2.relabel[r1.relabel[v]]] = v
    return r2.graph, fat1, fat2, back


def select_S(g: Graph, x: int, budget: int | None = None) -> Selection:
    """Pick the selection set for vertex x.

    Degree <= 2 takes the empty selection, degree 3 the smallest non-edge
    in the neighborhood, degree 4 with an independent triple the smallest
    such triple.  Degree 4 with neighborhood independence 2 splits the
    neighborhood into two disjoint non-edges and keeps the first split
    whose double contraction stays free of the two forbidden patterns;
    if every split fails the error carries one witnessing bad triple.
    """
    d = g.degree(x)
    if d > 4:
        raise HypothesisViolationError(
            f"vertex {x} has degree {d} > 4", vertex=x
        )
    if d <= 2:
        return Selection("smallDegree", frozenset())
    nbrs = sorted(g.neighbors(x))
    if d == 3:
        for a, b in combinations(nbrs, 2):
            if not g.has_edge(a, b):
                return Selection("nonEdgePair", frozenset((a, b)))
        raise NoValidSelectionError(
            f"the neighborhood of vertex {x} is a triangle", vertex=x
        )
    if independence_number(g.induced(nbrs)) >= 3:
        for trip in combinations(nbrs, 3):
            if not any(g.has_edge(u, v) for u, v in combinations(trip, 2)):
                return Selection("independentTriple", frozenset(trip))
        raise NoValidSelectionError(
            f"no independent triple around vertex {x}", vertex=x
        )
    first_bad = None
    for p1, p2 in _pair_partitions(nbrs):
        if g.has_edge(*p1) or g.has_edge(*p2):
            continue
        merged, fat1, fat2, back = _double_contract(g, p1, p2)
        hit = contains_forbidden_pattern(merged, budget=budget)
        if hit is None:
            return Selection("doublePair", frozenset(p1), frozenset(p2))
        if first_bad is None and hit == "K5minus":
            for copy in find_subgraph_copies(merged, catalog_graph("K5minus"), budget):
                if fat1 in copy and fat2 in copy:
                    tri = tuple(sorted(back[w] for w in copy if w not in (fat1, fat2)))
                    first_bad = (p1, p2, tri)
                    break
    raise NoValidSelectionError(
        f"every neighborhood split at vertex {x} hits a forbidden pattern",
        vertex=x,
        bad_triple=first_bad,
    )


def select_all(g: Graph, budget: int | None = None) -> list[Selection]:
    return [select_S(g, x, budget) for x in range(g.n)]


def _check_selections(g: Graph, selections: list[Selection]) -> None:
    if len(selections) != g.n:
        raise GraphInputError(
            f"need one selection per vertex: got {len(selections)} for n={g.n}"
        )
    for v, sel in enumerate(selections):
        if not isinstance(sel, Selection):
            raise GraphInputError(f"selection missing for vertex {v}")


# ==================== connection patterns ====================


def _is_tight(g: Graph, v: int) -> bool:
    """Degree 4 with neighborhood independence exactly 2."""
    if g.degree(v) != 4:
        return False
    return independence_number(g.induced(sorted(g.neighbors(v)))) == 2


def _n_small(
    g: Graph, sels: list[Selection], v: int, j: int
) -> dict[int, tuple[int, ...]]:
    """Connection levels 1..3: a path of length j from v to u whose first
    inner vertex lies in S(v) and last inner vertex in S(u)."""
    out: dict[int, tuple[int, ...]] = {}
    sv = sels[v].vertices
    if j == 1:
        for u in g.neighbors(v):
            if u in sv and v in sels[u].vertices:
                out.setdefault(u, (v, u))
        return out
    if j == 2:
        for v0 in sorted(sv):
            for u in g.neighbors(v0):
                if u != v and v0 in sels[u].vertices:
                    out.setdefault(u, (v, v0, u))
        return out
    for v0 in sorted(sv):
        for v1 in g.neighbors(v0):
            if v1 == v:
                continue
            for u in g.neighbors(v1):
                if u in (v, v0) or v1 not in sels[u].vertices:
                    continue
                out.setdefault(u, (v, v0, v1, u))
    return out


def _n_four(
    g: Graph, sels: list[Selection], tight: list[bool], u: int
) -> dict[int, tuple[int, ...]]:
    """Level 4, asymmetric: u-s-w-z-v with s in the label-2 pair of u,
    w outside the closed neighborhood of u, z in S(v), all five distinct."""
    out: dict[int, tuple[int, ...]] = {}
    if not tight[u]:
        return out
    closed = g.rows[u] | 1 << u
    for s in sorted(sels[u].s2 or ()):
        for w in bits(g.rows[s] & ~closed):
            for z in g.neighbors(w):
                if z in (u, s):
                    continue
                for v in g.neighbors(z):
                    if v in (u, s, w) or z not in sels[v].vertices:
                        continue
                    out.setdefault(v, (u, s, w, z, v))
    return out


def _five_hooks(g: Graph, sels: list[Selection], u: int) -> list[tuple[int, int, int]]:
    """Triples (s1, s2, w): w outside the closed neighborhood of u and
    adjacent to one vertex of each label pair."""
    sel = sels[u]
    closed = g.rows[u] | 1 << u
    hooks = []
    for s1 in sorted(sel.s1):
        for s2 in sorted(sel.s2 or ()):
            for w in bits(g.rows[s1] & g.rows[s2] & ~closed):
                hooks.append((s1, s2, w))
    return hooks


def _n_five(
    g: Graph, sels: list[Selection], tight: list[bool], u: int
) -> dict[int, tuple[int, ...]]:
    """Level 5, symmetric over tight endpoints: hooks of u and v joined by
    an edge between the two outside vertices, all eight vertices distinct."""
    out: dict[int, tuple[int, ...]] = {}
    if not tight[u]:
        return out
    for s1, s2, w in _five_hooks(g, sels, u):
        for v in range(g.n):
            if v == u or not tight[v] or v in out:
                continue
            for t1, t2, z in _five_hooks(g, sels, v):
                if not g.has_edge(w, z):
                    continue
                if len({u, s1, s2, w, z, t1, t2, v}) == 8:
                    out[v] = (u, s1, w, z, t1, v)
                    break
    return out


def _seven_hooks(
    g: Graph, sels: list[Selection], u: int
) -> list[tuple[int, int, int]]:
    """Triples (e1, e2, w): an edge outside the closed neighborhood of u
    whose ends jointly attach to both label pairs, plus a common neighbor w."""
    sel = sels[u]
    closed = g.rows[u] | 1 << u
    m1 = sum(1 << s for s in sel.s1)
    m2 = sum(1 << s for s in (sel.s2 or ()))
    hooks = []
    for e1 in range(g.n):
        if 1 << e1 & closed:
            continue
        for e2 in bits(g.rows[e1] & ~closed):
            if e2 <= e1:
                continue
            reach = g.rows[e1] | g.rows[e2]
            if not (reach & m1 and reach & m2):
                continue
            for w in bits(g.rows[e1] & g.rows[e2]):
                if w != u:
                    hooks.append((e1, e2, w))
    return hooks


def _n_seven(
    g: Graph, sels: list[Selection], tight: list[bool], u: int
) -> dict[int, tuple[int, ...]]:
    """Level 7, symmetric over tight endpoints: attached edges on both sides
    with their common neighbors adjacent, all eight vertices distinct."""
    out: dict[int, tuple[int, ...]] = {}
    if not tight[u]:
        return out
    mine = _seven_hooks(g, sels, u)
    if not mine:
        return out
    for v in range(g.n):
        if v == u or not tight[v]:
            continue
        for f1, f2, z in _seven_hooks(g, sels, v):
            done = False
            for e1, e2, w in mine:
                if not g.has_edge(w, z):
                    continue
                if len({u, e1, e2, w, z, f1, f2, v}) == 8:
                    out[v] = (u, e1, w, z, f1, v)
                    done = True
                    break
            if done:
                break
    return out


def _bfs_paths(g: Graph, u: int) -> tuple[list[int], list[int]]:
    dist = [-1] * g.n
    parent = [-1] * g.n
    dist[u] = 0
    queue = [u]
    while queue:
        nxt = []
        for v in queue:
            for w in g.neighbors(v):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    nxt.append(w)
        queue = nxt
    return dist, parent


def _distance_extra(
    g: Graph, tight: list[bool], u: int, j: int
) -> dict[int, tuple[int, ...]]:
    """Conservative fallback: every vertex at distance exactly j, both
    endpoints tight for levels 5 and 7, only u for level 4."""
    out: dict[int, tuple[int, ...]] = {}
    if not tight[u]:
        return out
    dist, parent = _bfs_paths(g, u)
    for v in range(g.n):
        if dist[v] != j:
            continue
        if j in (5, 7) and not tight[v]:
            continue
        path = [v]
        while path[-1] != u:
            path.append(parent[path[-1]])
        out[v] = tuple(reversed(path))
    return out


def _level_sets(
    g: Graph,
    sels: list[Selection],
    tight: list[bool],
    u: int,
    j: int,
    mode: str,
) -> dict[int, tuple[int, ...]]:
    if mode not in ("pattern", "conservative"):
        raise GraphInputError(f"mode must be pattern or conservative, got {mode!r}")
    if j in (1, 2, 3):
        return _n_small(g, sels, u, j)
    if j == 4:
        found = _n_four(g, sels, tight, u)
    elif j == 5:
        found = _n_five(g, sels, tight, u)
    elif j == 7:
        found = _n_seven(g, sels, tight, u)
    else:
        raise GraphInputError(f"no connection level {j}; levels are {AUX_LEVELS}")
    if mode == "conservative":
        for v, path in _distance_extra(g, tight, u, j).items():
            found.setdefault(v, path)
    return found


def neighborhoods(
    g: Graph,
    selections: list[Selection],
    u: int,
    j: int,
    mode: str = "pattern",
) -> VertexSet:
    """The level-j connection set of u under the given selections."""
    _check_selections(g, selections)
    g._check(u)
    tight = [_is_tight(g, v) for v in range(g.n)]
    return frozenset(_level_sets(g, selections, tight, u, j, mode))


# ==================== auxiliary graph ====================


@dataclass(frozen=True)
class AuxiliaryGraph:
    """Conflict graph over V(g): an edge uv means some connection level
    joins u and v (level 4 in either direction).  provenance maps each
    edge (min, max) to (level, witness path) for the first level found."""

    graph: Graph
    mode: str
    provenance: dict[tuple[int, int], tuple[int, tuple[int, ...]]]

    def level_counts(self) -> dict[int, int]:
        counts = dict.fromkeys(AUX_LEVELS, 0)
        for j, _ in self.provenance.values():
            counts[j] += 1
        return counts


def build_auxiliary(
    g: Graph, selections: list[Selection], mode: str = "pattern"
) -> AuxiliaryGraph:
    _check_selections(g, selections)
    if mode not in ("pattern", "conservative"):
        raise GraphInputError(f"mode must be pattern or conservative, got {mode!r}")
    tight = [_is_tight(g, v) for v in range(g.n)]
    provenance: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
    edges = []
    for j in AUX_LEVELS:
        for u in range(g.n):
            for v, path in _level_sets(g, selections, tight, u, j, mode).items():
                key = (min(u, v), max(u, v))
                if key not in provenance:
                    provenance[key] = (j, path)
                    edges.append(key)
    return AuxiliaryGraph(Graph.from_edges(g.n, edges), mode, provenance)


# ==================== greedy class coloring ====================


_STRATUM_OF_KIND = {
    "smallDegree": 0,
    "nonEdgePair": 0,
    "independentTriple": 1,
    "doublePair": 2,
}


@dataclass(frozen=True)
class ClassColoring:
    """Partition of V(g) into classes independent in the union of g and
    the auxiliary graph.  max_forbidden records, per stratum, the largest
    number of distinct colors blocked when a vertex got its color."""

    classes: tuple[tuple[int, ...], ...]
    color_of: tuple[int, ...]
    max_forbidden: tuple[int, int, int]

    @property
    def k(self) -> int:
        return len(self.classes)


def greedy_class_coloring(
    g: Graph,
    aux: AuxiliaryGraph,
    selections: list[Selection],
    max_k: int | None = None,
) -> ClassColoring:
    """Color the union of g and aux greedily: plain and degree-3 vertices
    first, then loose degree-4 vertices, then tight ones, ascending id
    inside each stratum, always the smallest admissible color."""
    _check_selections(g, selections)
    if aux.graph.n != g.n:
        raise GraphInputError("auxiliary graph has a different vertex count")
    rows = [g.rows[v] | aux.graph.rows[v] for v in range(g.n)]
    strata = [_STRATUM_OF_KIND[sel.kind] for sel in selections]
    order = sorted(range(g.n), key=lambda v: (strata[v], v))
    color_of = [-1] * g.n
    max_forbidden = [0, 0, 0]
    for v in order:
        seen = {color_of[u] for u in bits(rows[v]) if color_of[u] >= 0}
        max_forbidden[strata[v]] = max(max_forbidden[strata[v]], len(seen))
        c = 0
        while c in seen:
            c += 1
        color_of[v] = c
    k = max(color_of) + 1
    if max_k is not None and k > max_k:
        raise ChifracError(f"greedy class coloring used {k} classes, above {max_k}")
    classes = tuple(
        tuple(v for v in range(g.n) if color_of[v] == c) for c in range(k)
    )
    return ClassColoring(classes, tuple(color_of), tuple(max_forbidden))


# ==================== class graphs ====================


@dataclass(frozen=True)
class ClassGraph:
    """Contraction of g around one class X.

    Label sets are merged into w1 and w2, X and the unlabeled leftover
    neighbors are deleted.  origins maps each vertex back to the original
    vertices it stands for; deleted lists every removed vertex, the class
    members included.
    """

    graph: Graph
    members: tuple[int, ...]
    w1: int | None
    w2: int | None
    origins: tuple[VertexSet, ...]
    deleted: VertexSet


def build_class_graph(g: Graph, selections: list[Selection], xs) -> ClassGraph:
    _check_selections(g, selections)
    members = tuple(sorted(set(xs)))
    for x in members:
        g._check(x)
    for x, y in combinations(members, 2):
        if g.has_edge(x, y):
            raise ClassInvalidError(
                f"class members {x} and {y} are adjacent", pair=(x, y)
            )
        sx, sy = selections[x].vertices, selections[y].vertices
        if sx & sy:
            raise ClassInvalidError(
                f"selections of {x} and {y} share vertex {min(sx & sy)}",
                pair=(x, y),
            )
        if any(g.rows[a] & sum(1 << b for b in sy) for a in sx):
            raise ClassInvalidError(
                f"an edge joins the selections of {x} and {y}", pair=(x, y)
            )
    label1: set[int] = set()
    label2: set[int] = set()
    doomed = set(members)
    for x in members:
        sel = selections[x]
        label1 |= sel.s1
        label2 |= sel.s2 or set()
        if sel.kind in ("nonEdgePair", "independentTriple"):
            doomed |= set(g.neighbors(x)) - sel.s1
    protected = label1 | label2
    doomed -= protected
    keep = sorted(set(range(g.n)) - doomed)
    pos = {v: i for i, v in enumerate(keep)}
    work = g.induced(keep)
    to_final = dict(pos)
    w1 = w2 = None
    if label1:
        r1 = contract(work, sorted(pos[v] for v in label1))
        work = r1.graph
        to_final = {v: r1.relabel[i] for v, i in to_final.items()}
        w1 = r1.fat
        if label2:
            r2 = contract(work, sorted({to_final[v] for v in label2}))
            work = r2.graph
            to_final = {v: r2.relabel[i] for v, i in to_final.items()}
            w1 = r2.relabel[w1]
            w2 = r2.fat
    origins: list[set[int]] = [set() for _ in range(work.n)]
    for v, i in to_final.items():
        origins[i].add(v)
    for i in range(work.n):
        if i not in (w1, w2):
            assert work.degree(i) <= 4, "contraction broke the degree bound"
    return ClassGraph(
        work,
        members,
        w1,
        w2,
        tuple(frozenset(o) for o in origins),
        frozenset(doomed),
    )


def four_color_class_graph(cg: ClassGraph, budget: int | None = None) -> tuple[int, ...]:
    """Exact 4-coloring of a class graph.

    Failure raises NotFourColorableError carrying a 5-critical subgraph and
    whether its degree-4 core is a Gallai forest.
    """
    h = cg.graph
    firsts = [w for w in (cg.w1, cg.w2) if w is not None]
    order = firsts + [v for v in range(h.n) if v not in firsts]
    assert max(greedy_coloring(h, order), default=-1) < 5, "greedy-5 audit failed"
    coloring = is_k_colorable(h, 4, budget)
    if coloring is not None:
        return tuple(coloring)
    crit = h
    ids = list(range(h.n))
    shrunk = True
    while shrunk:
        shrunk = False
        i = 0
        while i < crit.n:
            cand = crit.without([i])
            if is_k_colorable(cand, 4, budget) is None:
                crit = cand
                ids.pop(i)
                shrunk = True
            else:
                i += 1
    core = crit.induced([v for v in range(crit.n) if crit.degree(v) == 4])
    raise NotFourColorableError(
        "a class graph needs 5 colors",
        critical_vertices=tuple(ids),
        gallai_diagnosis=is_gallai_forest(core),
    )


# ==================== assembly ====================


def assemble_fold_coloring(
    g: Graph,
    selections: list[Selection],
    class_graphs: list[ClassGraph],
    colorings: list[tuple[int, ...]],
) -> FoldColoring:
    """Join per-class 4-colorings into a (4k):(k+1) coloring of g.

    Class i owns the color block 4i..4i+3.  Inside block i every surviving
    vertex keeps its class-graph color, deleted vertices extend greedily,
    and each class member takes the two smallest block colors missing from
    its neighborhood.
    """
    _check_selections(g, selections)
    k = len(class_graphs)
    if len(colorings) != k:
        raise GraphInputError("need one coloring per class graph")
    sets: list[set[int]] = [set() for _ in range(g.n)]
    for i, (cg, coloring) in enumerate(zip(class_graphs, colorings)):
        if len(coloring) != cg.graph.n:
            raise GraphInputError(f"coloring {i} does not fit its class graph")
        base = 4 * i
        members = set(cg.members)
        assign: dict[int, int] = {}
        for fv, orig in enumerate(cg.origins):
            for v in orig:
                assign[v] = base + coloring[fv]
        for v in sorted(cg.deleted - members):
            used = {assign[u] for u in g.neighbors(v) if u in assign}
            free = [c for c in range(base, base + 4) if c not in used]
            if not free:
                raise AssemblyConflictError(
                    f"no block color left for deleted vertex {v} in class {i}"
                )
            assign[v] = free[0]
        for x in sorted(members):
            used = {assign[u] for u in g.neighbors(x) if u in assign}
            free = [c for c in range(base, base + 4) if c not in used]
            if len(free) < 2:
                raise AssemblyConflictError(
                    f"class member {x} sees {len(used)} block colors, needs two free"
                )
            sets[x].update(free[:2])
        for v in range(g.n):
            if v not in members:
                sets[v].add(assign[v])
    fold = FoldColoring(4 * k, k + 1, tuple(tuple(sorted(s)) for s in sets))
    ok, witness = verify_fold_coloring(g, fold)
    if not ok:
        raise AssemblyConflictError(f"assembled coloring failed verification: {witness}")
    return fold


# ==================== pipeline ====================


def _reject_bad_input(g: Graph) -> None:
    if g.n == 0:
        raise GraphInputError("the pipeline needs at least one vertex")
    if not is_connected(g):
        raise NotConnectedError("the pipeline needs a connected graph")
    d = delta(g)
    if d > 4:
        worst = max(range(g.n), key=g.degree)
        raise HypothesisViolationError(
            f"maximum degree is {d}, vertex {worst} exceeds 4", vertex=worst
        )
    quads = cliques_of_size(g, 4)
    if quads:
        found = tuple(sorted(quads[0]))
        raise HypothesisViolationError(
            f"complete subgraph on vertices {found}", vertex=found[0]
        )
    if g.n == 8:
        mapping = find_isomorphism(g, cycle_power(8, 2))
        if mapping is not None:
            raise HypothesisViolationError(
                "the graph is the square of the 8-cycle under the map "
                f"{tuple(mapping)}; its fractional chromatic number is 4",
                vertex=0,
            )


def run_pipeline(
    g: Graph, mode: str = "pattern", budget: int | None = None
) -> tuple[FoldColoring, dict[str, object]]:
    """Full run: reject bad inputs, then select, connect, split, contract,
    4-color, and assemble.  Returns the verified fold coloring and a report.

    In pattern mode a class split failure or an uncolorable class graph
    triggers one retry with the conservative connection sets.
    """
    if mode not in ("pattern", "conservative"):
        raise GraphInputError(f"mode must be pattern or conservative, got {mode!r}")
    _reject_bad_input(g)
    t0 = time.perf_counter()
    selections = select_all(g, budget)
    t1 = time.perf_counter()
    try:
        fold, detail = _run_stages(g, selections, mode, budget)
        retried = False
    except (ClassInvalidError, NotFourColorableError):
        if mode != "pattern":
            raise
        fold, detail = _run_stages(g, selections, "conservative", budget)
        retried = True
    report: dict[str, object] = {
        "n": g.n,
        "graph6": encode_graph6(g),
        "mode": detail["mode"],
        "retried": retried,
        "k": detail["k"],
        "colors": fold.a,
        "folds": fold.b,
        "ratio": format_rational(Fraction(fold.a, fold.b)),
        "max_forbidden": detail["max_forbidden"],
        "aux_edges": detail["aux_edges"],
        "stage_seconds": {"select": t1 - t0, **detail["stage_seconds"]},
    }
    return fold, report


def _run_stages(
    g: Graph, selections: list[Selection], mode: str, budget: int | None
) -> tuple[FoldColoring, dict[str, object]]:
    t0 = time.perf_counter()
    aux = build_auxiliary(g, selections, mode)
    t1 = time.perf_counter()
    max_k = MAX_CLASSES if mode == "pattern" else None
    coloring = greedy_class_coloring(g, aux, selections, max_k=max_k)
    t2 = time.perf_counter()
    class_graphs = []
    colorings = []
    for xs in coloring.classes:
        cg = build_class_graph(g, selections, xs)
        class_graphs.append(cg)
        colorings.append(four_color_class_graph(cg, budget))
    t3 = time.perf_counter()
    fold = assemble_fold_coloring(g, selections, class_graphs, colorings)
    t4 = time.perf_counter()
    detail = {
        "mode": mode,
        "k": coloring.k,
        "max_forbidden": list(coloring.max_forbidden),
        "aux_edges": aux.graph.m,
        "stage_seconds": {
            "auxiliary": t1 - t0,
            "split": t2 - t1,
            "classes": t3 - t2,
            "assemble": t4 - t3,
        },
    }
    return fold, detail
