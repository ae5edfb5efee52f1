"""Simple undirected graphs on dense vertex ids 0..n-1.

Adjacency is stored as per-vertex neighbor bitmasks, the representation the
search modules lean on. All values are immutable; every operation returns a
new graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import GraphInputError, NotConnectedError

VertexSet = frozenset[int]


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``rows[v]`` is the neighbor bitmask of v."""

    n: int
    rows: tuple[int, ...]

    # ---------------- constructors ----------------

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise GraphInputError(f"vertex count must be nonnegative, got {n}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphInputError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    @staticmethod
    def from_adjacency(adjacency: Iterable[Iterable[int]]) -> "Graph":
        adj = [sorted(set(nbrs)) for nbrs in adjacency]
        n = len(adj)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in adj[u] if u < v])
        for u in range(n):
            if tuple(g.neighbors(u)) != tuple(adj[u]):
                raise GraphInputError(f"adjacency is not symmetric at vertex {u}")
        return g

    # ---------------- basic queries ----------------

    @property
    def m(self) -> int:
        """Edge count."""
        return sum(r.bit_count() for r in self.rows) // 2

    def degree(self, v: int) -> int:
        self._check(v)
        return self.rows[v].bit_count()

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return tuple(bits(self.rows[v]))

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self.rows[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(bits(r)) for r in self.rows)

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(r.bit_count() for r in self.rows))

    def _check(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphInputError(f"vertex {v} out of range for n={self.n}")

    # ---------------- derived graphs ----------------

    def induced(self, vs: Iterable[int]) -> "Graph":
        """Induced subgraph on ``vs``, relabeled to 0..k-1 in sorted order."""
        keep = sorted(set(vs))
        for v in keep:
            self._check(v)
        pos = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            r = 0
            for u in bits(self.rows[v]):
                if u in pos:
                    r |= 1 << pos[u]
            rows.append(r)
        return Graph(len(keep), tuple(rows))

    def without(self, vs: Iterable[int]) -> "Graph":
        drop = set(vs)
        return self.induced(v for v in range(self.n) if v not in drop)

    def with_edge(self, u: int, v: int) -> "Graph":
        self._check(u)
        self._check(v)
        if u == v:
            raise GraphInputError("cannot add a self-loop")
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, tuple(rows))

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple((full ^ r) & ~(1 << v) for v, r in enumerate(self.rows)))

    def relabel(self, perm: Iterable[int]) -> "Graph":
        """Apply ``new = perm[old]``; perm must be a permutation of 0..n-1."""
        p = list(perm)
        if sorted(p) != list(range(self.n)):
            raise GraphInputError("relabel requires a permutation of all vertex ids")
        rows = [0] * self.n
        for v in range(self.n):
            r = 0
            for u in bits(self.rows[v]):
                r |= 1 << p[u]
            rows[p[v]] = r
        return Graph(self.n, tuple(rows))


# ==================== constructors ====================


def make_complete(n: int) -> Graph:
    """K_n."""
    if n < 1:
        raise GraphInputError(f"complete graph needs n >= 1, got {n}")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def make_cycle(n: int) -> Graph:
    """C_n for n >= 3."""
    if n < 3:
        raise GraphInputError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_path(n: int) -> Graph:
    """P_n (n vertices, n-1 edges)."""
    if n < 1:
        raise GraphInputError(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def strong_product(g: Graph, h: Graph) -> Graph:
    """Strong product; vertex (a, x) gets id a*|V(h)| + x.

    (a, x) ~ (b, y) when a = b and xy is an edge, or ab is an edge and
    x = y, or both coordinate pairs are edges.
    """
    hn = h.n
    edges = []
    for a in range(g.n):
        for x in range(hn):
            u = a * hn + x
            for y in bits(h.rows[x]):
                if y > x:
                    edges.append((u, a * hn + y))
            for b in bits(g.rows[a]):
                if b > a:
                    edges.append((u, b * hn + x))
                    for y in bits(h.rows[x]):
                        edges.append((u, b * hn + y))
    return Graph.from_edges(g.n * hn, edges)


def cycle_power(n: int, k: int) -> Graph:
    """Cycle with chords joining vertices at circular distance <= k."""
    if n < 3:
        raise GraphInputError(f"cycle power needs n >= 3, got {n}")
    if k < 1:
        raise GraphInputError(f"cycle power needs k >= 1, got {k}")
    edges = []
    for i in range(n):
        for d in range(1, k + 1):
            j = (i + d) % n
            if i != j:
                edges.append((i, j))
    return Graph.from_edges(n, edges)


# ==================== contraction ====================


@dataclass(frozen=True)
class ContractionResult:
    """Graph after contracting a set, the fat vertex id, and the old-to-new
    id map (every contracted vertex maps to ``fat``)."""

    graph: Graph
    fat: int
    relabel: dict[int, int]


def contract(g: Graph, s: Iterable[int]) -> ContractionResult:
    """Replace ``s`` by one fat vertex adjacent to every outside neighbor.

    Edges inside ``s`` vanish. The fat vertex lands at the smallest removed
    id and the remaining ids compact. An empty set yields a new isolated
    vertex with id n; a singleton returns the graph unchanged.
    """
    members = sorted(set(s))
    for v in members:
        g._check(v)
    if not members:
        graph = Graph(g.n + 1, g.rows + (0,))
        return ContractionResult(graph, g.n, {v: v for v in range(g.n)})
    if len(members) == 1:
        return ContractionResult(g, members[0], {v: v for v in range(g.n)})
    smask = 0
    for v in members:
        smask |= 1 << v
    fat_old = members[0]
    keep = [v for v in range(g.n) if not (smask >> v & 1) or v == fat_old]
    pos = {v: i for i, v in enumerate(keep)}
    fat = pos[fat_old]
    union = 0
    for v in members:
        union |= g.rows[v]
    union &= ~smask
    rows = [0] * len(keep)
    for v in keep:
        if v == fat_old:
            src = union
        else:
            src = g.rows[v] & ~smask
        r = 0
        for u in bits(src):
            r |= 1 << pos[u]
        if v != fat_old and g.rows[v] & smask:
            r |= 1 << fat
            rows[fat] |= 1 << pos[v]
        rows[pos[v]] |= r
    relabel = {v: pos[v] for v in keep}
    for v in members:
        relabel[v] = fat
    return ContractionResult(Graph(len(keep), tuple(rows)), fat, relabel)


def contract_pair(g: Graph, u: int, v: int) -> ContractionResult:
    return contract(g, (u, v))


def contract_triple(g: Graph, u: int, v: int, w: int) -> ContractionResult:
    return contract(g, (u, v, w))


# ==================== degrees and edge counts ====================


def delta(g: Graph) -> int:
    """Maximum degree; 0 for the empty-edge graph."""
    return max((r.bit_count() for r in g.rows), default=0)


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def edges_between(g: Graph, s: Iterable[int], t: Iterable[int]) -> int:
    """Count edges with one end in s and one in t, each edge once."""
    smask = 0
    for v in s:
        g._check(v)
        smask |= 1 << v
    tmask = 0
    for v in t:
        g._check(v)
        tmask |= 1 << v
    count = 0
    for u, v in g.edges():
        if (smask >> u & 1 and tmask >> v & 1) or (tmask >> u & 1 and smask >> v & 1):
            count += 1
    return count


# ==================== connectivity ====================


def connected_components(g: Graph) -> list[VertexSet]:
    seen = 0
    comps: list[VertexSet] = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.rows[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(frozenset(bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(connected_components(g)) == 1


@dataclass(frozen=True)
class BlockDecomposition:
    """Maximal 2-connected pieces and the cut vertices joining them."""

    blocks: tuple[VertexSet, ...]
    cut_vertices: VertexSet


def blocks(g: Graph) -> BlockDecomposition:
    """Biconnected decomposition (classic lowpoint algorithm, iterative).

    Isolated vertices become singleton blocks so every vertex is covered.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    parent = [-1] * g.n
    timer = 0
    out_blocks: list[VertexSet] = []
    cuts: set[int] = set()
    estack: list[tuple[int, int]] = []

    for root in range(g.n):
        if disc[root] != -1:
            continue
        if g.rows[root] == 0:
            out_blocks.append(frozenset((root,)))
            disc[root] = timer
            timer += 1
            continue
        root_children = 0
        stack = [(root, iter(g.neighbors(root)))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    parent[w] = v
                    estack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent[v] and disc[w] < disc[v]:
                    estack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                if u == root:
                    root_children += 1
                else:
                    cuts.add(u)
                block: set[int] = set()
                while estack:
                    a, b = estack.pop()
                    block.add(a)
                    block.add(b)
                    if (a, b) == (u, v):
                        break
                out_blocks.append(frozenset(block))
        if root_children >= 2:
            cuts.add(root)
    return BlockDecomposition(tuple(out_blocks), frozenset(cuts))


def _is_complete_block(g: Graph, block: VertexSet) -> bool:
    k = len(block)
    mask = 0
    for v in block:
        mask |= 1 << v
    return all((g.rows[v] & mask).bit_count() == k - 1 for v in block)


def _is_odd_cycle_block(g: Graph, block: VertexSet) -> bool:
    k = len(block)
    if k < 3 or k % 2 == 0:
        return False
    mask = 0
    for v in block:
        mask |= 1 << v
    return all((g.rows[v] & mask).bit_count() == 2 for v in block)


def is_gallai_tree(g: Graph) -> bool:
    """True when every block is a complete graph or an odd cycle.

    Raises :class:`NotConnectedError` on disconnected input.
    """
    if not is_connected(g):
        raise NotConnectedError("Gallai tree test requires a connected graph")
    bd = blocks(g)
    return all(_is_complete_block(g, b) or _is_odd_cycle_block(g, b) for b in bd.blocks)


def is_gallai_forest(g: Graph) -> bool:
    """Component-wise Gallai tree test (no connectivity requirement)."""
    bd = blocks(g)
    return all(_is_complete_block(g, b) or _is_odd_cycle_block(g, b) for b in bd.blocks)
