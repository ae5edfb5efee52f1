"""Exact fractional chromatic number and a:b fold colorings.

The fractional chromatic number is the optimum of the covering LP over
independent sets. It is computed exactly in rational arithmetic: the packing
dual (maximize total vertex weight subject to weight at most 1 on every
maximal independent set) is solved by a dense simplex with Bland's rule, and
the covering weights are read off the optimal reduced costs. Both sides are
re-verified before anything is returned, so the result never depends on
trusting the solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .budget import BudgetExhausted, NodeBudget
from .cliques import (
    chromatic_number,
    degeneracy_order,
    independence_number,
    max_weight_independent_set,
    maximal_independent_sets,
)
from .errors import ChifracError, GraphInputError, NotVertexTransitiveError, ResourceLimitError
from .graph import Graph, VertexSet, bits
from .graph6 import decode_graph6, encode_graph6
from .iso import is_vertex_transitive

FULL_ENUMERATION_MAX_N = 20

_ZERO = Fraction(0)
_ONE = Fraction(1)


def format_rational(x: Fraction) -> str:
    """Render as "p/q", or plain "p" for integers."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise GraphInputError(f"not a rational number: {text!r}") from None


@dataclass(frozen=True)
class FractionalSolution:
    """Covering certificate: independent sets with rational weights.

    ``dual`` (per-vertex weights) certifies optimality when present: the
    dual is feasible for the packing LP and its total equals ``value``.
    """

    sets: tuple[VertexSet, ...]
    weights: tuple[Fraction, ...]
    value: Fraction
    dual: tuple[Fraction, ...] | None = None


@dataclass(frozen=True)
class FoldColoring:
    """a:b coloring: every vertex holds a sorted b-subset of 0..a-1."""

    a: int
    b: int
    assignment: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.b < 1:
            raise GraphInputError(f"fold count b must be >= 1, got {self.b}")
        if self.a < self.b:
            raise GraphInputError(f"palette size {self.a} smaller than fold count {self.b}")
        for v, cs in enumerate(self.assignment):
            if len(cs) != self.b or any(cs[i] >= cs[i + 1] for i in range(len(cs) - 1)):
                raise GraphInputError(f"vertex {v} needs a sorted set of {self.b} colors")
            if cs[0] < 0 or cs[-1] >= self.a:
                raise GraphInputError(f"vertex {v} uses colors outside 0..{self.a - 1}")


# ---------------- rational simplex over the packing dual ----------------


def _simplex_packing(
    row_masks: list[int], n: int
) -> tuple[Fraction, list[Fraction], list[Fraction]]:
    """Maximize sum(y) s.t. sum of y over each row <= 1, y >= 0.

    Returns (value, y, u): y the packing optimum, u >= 0 the per-row
    multipliers whose total equals the value (the covering weights).
    Bland's rule everywhere, so termination is unconditional.
    """
    m = len(row_masks)
    total = n + m
    tab = []
    for i, mask in enumerate(row_masks):
        row = [_ONE if (mask >> v) & 1 else _ZERO for v in range(n)]
        row += [_ONE if j == i else _ZERO for j in range(m)]
        row.append(_ONE)
        tab.append(row)
    basis = [n + i for i in range(m)]
    red = [_ONE] * n + [_ZERO] * m
    obj = _ZERO
    while True:
        enter = -1
        for j in range(total):
            if red[j] > 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best: Fraction | None = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][total] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            raise ChifracError(
                "packing LP unbounded: some vertex lies in no independent-set row"
            )
        prow = tab[leave]
        piv = prow[enter]
        if piv != 1:
            for j in range(total + 1):
                if prow[j]:
                    prow[j] /= piv
        for i in range(m):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                row = tab[i]
                for j in range(total + 1):
                    if prow[j]:
                        row[j] -= f * prow[j]
        f = red[enter]
        for j in range(total):
            if prow[j]:
                red[j] -= f * prow[j]
        obj += f * prow[total]
        basis[leave] = enter
    y = [_ZERO] * n
    for i, b in enumerate(basis):
        if b < n:
            y[b] = tab[i][total]
    u = [-red[n + i] for i in range(m)]
    return obj, y, u


def _check_certificates(
    g: Graph,
    row_masks: list[int],
    value: Fraction,
    y: list[Fraction],
    u: list[Fraction],
    dual_rows_complete: bool,
) -> None:
    """Exact re-verification of both LP certificates; raises on any failure."""
    n = g.n
    if any(w < 0 for w in u) or any(w < 0 for w in y):
        raise ChifracError("negative weight in LP certificate")
    for v in range(n):
        cover = sum((u[i] for i, mask in enumerate(row_masks) if (mask >> v) & 1), _ZERO)
        if cover < 1:
            raise ChifracError(f"covering certificate misses vertex {v}")
    if sum(u, _ZERO) != value or sum(y, _ZERO) != value:
        raise ChifracError("primal and dual totals disagree")
    if dual_rows_complete:
        for mask in row_masks:
            if sum((y[v] for v in bits(mask)), _ZERO) > 1:
                raise ChifracError("dual weights overload an independent set")


def _greedy_cover_rows(g: Graph) -> list[int]:
    """Maximal independent sets that jointly cover every vertex."""
    n = g.n
    full = (1 << n) - 1
    rows: list[int] = []
    covered = 0
    while covered != full:
        seed = ((~covered) & full & -((~covered) & full)).bit_length() - 1
        mask = 1 << seed
        blocked = g.rows[seed] | mask
        for v in range(n):
            if not (blocked >> v) & 1:
                mask |= 1 << v
                blocked |= g.rows[v] | (1 << v)
        rows.append(mask)
        covered |= mask
    return rows


def _extend_to_maximal(g: Graph, mask: int) -> int:
    blocked = mask
    for v in bits(mask):
        blocked |= g.rows[v]
    for v in range(g.n):
        if not (blocked >> v) & 1:
            mask |= 1 << v
            blocked |= g.rows[v] | (1 << v)
    return mask


def _lexmin_optimal_is(
    g: Graph, weights: list[Fraction], target: Fraction, budget: int | None
) -> int:
    """Lexicographically smallest vertex set among max-weight independent sets."""
    n = g.n
    chosen = 0
    cand = (1 << n) - 1
    got = _ZERO
    for v in range(n):
        if got == target:
            break
        if not (cand >> v) & 1:
            continue
        rest = cand & ~g.rows[v] & ~((1 << (v + 1)) - 1)
        ids = list(bits(rest))
        sub = g.induced(ids)
        w, _ = max_weight_independent_set(sub, [weights[x] for x in ids], budget)
        if got + weights[v] + w == target:
            chosen |= 1 << v
            got += weights[v]
            cand &= ~g.rows[v] & ~(1 << v)
        else:
            cand &= ~(1 << v)
    if got != target:
        raise ChifracError("lexmin refinement lost the pricing optimum")
    return chosen


def chi_f_exact(
    g: Graph, budget: int | None = None, with_dual: bool = True
) -> tuple[Fraction, FractionalSolution]:
    """Exact fractional chromatic number with a verified covering certificate.

    Full maximal-independent-set enumeration up to n = 20; row generation
    with exact rational pricing beyond that.
    """
    n = g.n
    if n == 0:
        return _ZERO, FractionalSolution((), (), _ZERO, () if with_dual else None)
    if n <= FULL_ENUMERATION_MAX_N:
        row_masks = [sum(1 << v for v in s) for s in maximal_independent_sets(g)]
        value, y, u = _simplex_packing(row_masks, n)
        _check_certificates(g, row_masks, value, y, u, dual_rows_complete=True)
    else:
        row_masks = _greedy_cover_rows(g)
        best_lower = _ZERO
        while True:
            value, y, u = _simplex_packing(row_masks, n)
            try:
                w, _ = max_weight_independent_set(g, y, budget)
            except ResourceLimitError as exc:
                raise ResourceLimitError(
                    "fractional LP pricing exceeded its budget",
                    nodes=exc.nodes,
                    lower=best_lower,
                    upper=value,
                ) from None
            if w <= 1:
                break
            best_lower = max(best_lower, value / w)
            mask = _lexmin_optimal_is(g, y, w, budget)
            row_masks.append(_extend_to_maximal(g, mask))
        _check_certificates(g, row_masks, value, y, u, dual_rows_complete=True)
    sets = []
    weights = []
    for i, wt in enumerate(u):
        if wt > 0:
            sets.append(frozenset(bits(row_masks[i])))
            weights.append(wt)
    sol = FractionalSolution(
        tuple(sets), tuple(weights), value, tuple(y) if with_dual else None
    )
    return value, sol


def verify_fractional_solution(g: Graph, sol: FractionalSolution) -> bool:
    """Independent re-check of every FractionalSolution invariant."""
    cover = [_ZERO] * g.n
    for s, w in zip(sol.sets, sol.weights):
        if w < 0:
            return False
        for v in s:
            for x in s:
                if x != v and g.has_edge(v, x):
                    return False
            cover[v] += w
    if any(c < 1 for c in cover):
        return False
    if sum(sol.weights, _ZERO) != sol.value:
        return False
    if sol.dual is not None:
        if len(sol.dual) != g.n or any(d < 0 for d in sol.dual):
            return False
        if sum(sol.dual, _ZERO) != sol.value:
            return False
        for s in maximal_independent_sets(g):
            if sum((sol.dual[v] for v in s), _ZERO) > 1:
                return False
    return True


def chi_f_vertex_transitive(g: Graph, budget: int | None = None) -> Fraction:
    """n/alpha, valid exactly on vertex-transitive graphs."""
    if not is_vertex_transitive(g, budget):
        raise NotVertexTransitiveError("graph is not vertex-transitive")
    return Fraction(g.n, independence_number(g, budget))


# ---------------- a:b fold colorings ----------------


def find_ab_coloring(
    g: Graph, a: int, b: int, budget: int | None = None
) -> FoldColoring | None:
    """Search for an a:b coloring; None means proven nonexistent.

    Backtracking over b-subsets per vertex in degeneracy order; the first
    vertex is pinned to {0..b-1} to kill palette symmetry.
    """
    if b < 1 or a < b:
        raise GraphInputError(f"need a >= b >= 1, got a={a} b={b}")
    n = g.n
    if n == 0:
        return FoldColoring(a, b, ())
    order = degeneracy_order(g)
    nb = NodeBudget(budget)
    assign: list[tuple[int, ...] | None] = [None] * n
    masks = [0] * n

    def rec(i: int) -> bool:
        nb.tick()
        if i == n:
            return True
        v = order[i]
        forb = 0
        for u in bits(g.rows[v]):
            forb |= masks[u]
        allowed = [c for c in range(a) if not (forb >> c) & 1]
        if len(allowed) < b:
            return False
        choices = [tuple(range(b))] if i == 0 else combinations(allowed, b)
        for comb in choices:
            mask = 0
            for c in comb:
                mask |= 1 << c
            assign[v] = comb
            masks[v] = mask
            if rec(i + 1):
                return True
            assign[v] = None
            masks[v] = 0
        return False

    try:
        ok = rec(0)
    except BudgetExhausted:
        raise ResourceLimitError(
            f"{a}:{b} coloring search exceeded its node budget", nodes=nb.limit
        ) from None
    if not ok:
        return None
    return FoldColoring(a, b, tuple(assign[v] for v in range(n)))  # type: ignore[misc]


def verify_fold_coloring(
    g: Graph, c: FoldColoring
) -> tuple[bool, tuple[str, object] | None]:
    """Check a FoldColoring against g; returns (ok, witness).

    The witness names the offending vertex or edge.
    """
    if len(c.assignment) != g.n:
        return False, ("vertex", min(len(c.assignment), g.n))
    masks = []
    for v, cs in enumerate(c.assignment):
        m = 0
        for col in cs:
            m |= 1 << col
        masks.append(m)
    for u, v in g.edges():
        if masks[u] & masks[v]:
            return False, ("edge", (u, v))
    return True, None


def chi_b(g: Graph, b: int, budget: int | None = None) -> int:
    """Smallest a admitting an a:b coloring (b-fold coloring number)."""
    if b < 1:
        raise GraphInputError(f"fold count b must be >= 1, got {b}")
    if g.n == 0:
        return 0
    value, _ = chi_f_exact(g, budget, with_dual=False)
    lo = math.ceil(value * b)
    hi = b * chromatic_number(g, budget)
    while lo < hi:
        mid = (lo + hi) // 2
        if find_ab_coloring(g, mid, b, budget) is not None:
            hi = mid
        else:
            lo = mid + 1
    return lo


# ---------------- JSON forms ----------------


def fractional_solution_to_json(sol: FractionalSolution) -> dict:
    return {
        "chi_f": format_rational(sol.value),
        "primal": [
            {"set": sorted(s), "weight": format_rational(w)}
            for s, w in zip(sol.sets, sol.weights)
        ],
        "dual": None if sol.dual is None else [format_rational(d) for d in sol.dual],
    }


def fold_coloring_to_json(g: Graph, c: FoldColoring) -> dict:
    return {
        "graph": encode_graph6(g),
        "a": c.a,
        "b": c.b,
        "assignment": {str(v): list(cs) for v, cs in enumerate(c.assignment)},
    }


def fold_coloring_from_json(obj: dict) -> tuple[Graph, FoldColoring]:
    try:
        g = decode_graph6(obj["graph"])
        a = int(obj["a"])
        b = int(obj["b"])
        raw = obj["assignment"]
        assignment = tuple(
            tuple(sorted(int(c) for c in raw[str(v)])) for v in range(g.n)
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphInputError(f"malformed fold-coloring certificate: {exc}") from None
    return g, FoldColoring(a, b, assignment)
