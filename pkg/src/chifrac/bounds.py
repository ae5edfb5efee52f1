"""Degree-threshold classification and decomposition bounds.

Three layers of exact reasoning about how close the fractional chromatic
number sits to the maximum degree: a closed-form average bound, a structural
classifier for the graphs that reach the threshold, and a two-vertex-cut
calculus that bounds a glued graph by its closed sides. A streaming sweep
measures the empirical gap over graph6 corpora.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, TextIO

from .cliques import max_clique
from .errors import (
    ChifracError,
    Graph6FormatError,
    GraphInputError,
    NotConnectedError,
    NotSeparatorError,
)
from .graph import (
    Graph,
    bits,
    contract_pair,
    cycle_power,
    delta,
    is_connected,
    make_complete,
    make_cycle,
    strong_product,
)
from .graph6 import decode_graph6, encode_graph6
from .iso import find_isomorphism
from .lp import chi_f_exact, format_rational

CATEGORIES = (
    "Complete",
    "OddCycle",
    "CliqueEqualsDelta",
    "C8Squared",
    "C5BoxK2",
    "BelowDelta",
)


@dataclass(frozen=True)
class ClassificationVerdict:
    """Threshold category plus a category-specific witness.

    ``category`` is one of CATEGORIES. The evidence carries the object that
    justifies the call: the clique for CliqueEqualsDelta, the explicit vertex
    mapping for the two sporadic graphs, or the degree and clique data that
    rule the other categories out.
    """

    category: str
    evidence: dict[str, object]

    @property
    def at_threshold(self) -> bool:
        """True when the category asserts chi_f >= maximum degree."""
        return self.category != "BelowDelta"


def molloy_reed_bound(g: Graph) -> Fraction:
    """Exact value of (omega + Delta + 1) / 2, an upper bound for chi_f."""
    size, _ = max_clique(g)
    return Fraction(size + delta(g) + 1, 2)


def classify(
    g: Graph, strict: bool = False, budget: int | None = None
) -> ClassificationVerdict:
    """Decide whether a connected graph has chi_f >= Delta, structurally.

    Categories are tested in a fixed order: complete graph, odd cycle,
    clique number equal to maximum degree, the square of the 8-cycle, the
    strong product of a 5-cycle with an edge. Anything else is BelowDelta.
    No linear program runs unless ``strict`` is set, which additionally
    solves for chi_f, cross-checks the verdict against the exact value, and
    records chi_f in the evidence.
    """
    if not is_connected(g):
        raise NotConnectedError("classification applies to connected graphs only")
    verdict = _structural_category(g, budget)
    if strict:
        value, _ = chi_f_exact(g, budget=budget, with_dual=False)
        d = delta(g)
        if verdict.at_threshold != (value >= d):
            raise ChifracError(
                f"classifier disagrees with the exact value on {encode_graph6(g)}: "
                f"category {verdict.category}, chi_f {format_rational(value)}, "
                f"max degree {d}"
            )
        evidence = dict(verdict.evidence)
        evidence["chi_f"] = value
        verdict = ClassificationVerdict(verdict.category, evidence)
    return verdict


def _structural_category(g: Graph, budget: int | None) -> ClassificationVerdict:
    n = g.n
    if g.m == n * (n - 1) // 2:
        return ClassificationVerdict("Complete", {"n": n})
    if n % 2 == 1 and all(g.degree(v) == 2 for v in range(n)):
        return ClassificationVerdict("OddCycle", {"length": n})
    d = delta(g)
    size, clique = max_clique(g, budget)
    if size == d:
        return ClassificationVerdict(
            "CliqueEqualsDelta", {"clique": tuple(sorted(clique)), "delta": d}
        )
    if n == 8:
        mapping = find_isomorphism(g, cycle_power(8, 2), budget=budget)
        if mapping is not None:
            return ClassificationVerdict("C8Squared", {"isomorphism": tuple(mapping)})
    if n == 10:
        reference = strong_product(make_cycle(5), make_complete(2))
        mapping = find_isomorphism(g, reference, budget=budget)
        if mapping is not None:
            return ClassificationVerdict("C5BoxK2", {"isomorphism": tuple(mapping)})
    return ClassificationVerdict("BelowDelta", {"delta": d, "omega": size})


def cut2_upper_bound(
    g: Graph,
    cut: tuple[int, int],
    side: Iterable[int],
    budget: int | None = None,
) -> Fraction:
    """Bound chi_f of a graph split along a two-vertex separator.

    ``side`` lists the vertices of one open side of the cut; the closed
    sides G1 (side plus cut) and G2 (everything else plus cut) overlap in
    exactly the cut pair. When the pair is adjacent the returned value
    max(chi_f(G1), chi_f(G2)) equals chi_f(g). When it is not, the bound is
    max over chi_f(G1), chi_f of G2 with the pair joined, and chi_f of G2
    with the pair merged; the join and merge happen on the G2 side, so the
    side assignment matters for the quality of the bound.
    """
    u, v = cut
    for w in (u, v):
        if not 0 <= w < g.n:
            raise GraphInputError(f"cut vertex {w} is out of range")
    if u == v:
        raise GraphInputError("cut must name two distinct vertices")
    side_set = set(side)
    for w in side_set:
        if not 0 <= w < g.n:
            raise GraphInputError(f"side vertex {w} is out of range")
    if side_set & {u, v}:
        raise NotSeparatorError("side must not contain the cut vertices")
    rest = [w for w in range(g.n) if w not in side_set and w != u and w != v]
    if not side_set or not rest:
        raise NotSeparatorError("both sides of the cut must be non-empty")
    rest_mask = 0
    for w in rest:
        rest_mask |= 1 << w
    for w in sorted(side_set):
        crossing = g.rows[w] & rest_mask
        if crossing:
            x = next(bits(crossing))
            raise NotSeparatorError(
                f"edge {w}-{x} crosses the cut, so the pair does not separate"
            )
    g1 = g.induced(sorted(side_set) + [u, v])
    keep2 = sorted(rest + [u, v])
    g2 = g.induced(keep2)
    value1, _ = chi_f_exact(g1, budget=budget, with_dual=False)
    if g.has_edge(u, v):
        value2, _ = chi_f_exact(g2, budget=budget, with_dual=False)
        return max(value1, value2)
    pu = keep2.index(u)
    pv = keep2.index(v)
    joined, _ = chi_f_exact(g2.with_edge(pu, pv), budget=budget, with_dual=False)
    merged_graph = contract_pair(g2, pu, pv).graph
    merged, _ = chi_f_exact(merged_graph, budget=budget, with_dual=False)
    return max(value1, joined, merged)


def find_two_cuts(g: Graph) -> list[tuple[int, int]]:
    """All vertex pairs whose joint removal disconnects the graph."""
    if not is_connected(g):
        raise NotConnectedError("separator enumeration applies to connected graphs")
    out: list[tuple[int, int]] = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            rest = [w for w in range(g.n) if w != u and w != v]
            if len(rest) >= 2 and not is_connected(g.induced(rest)):
                out.append((u, v))
    return out


@dataclass(frozen=True)
class GapRecord:
    """One graph strictly below the degree threshold, with its exact gap."""

    graph6: str
    delta: int
    omega: int
    chi_f: Fraction
    gap: Fraction


def read_checkpoint(stream: Iterable[str]) -> dict[str, Fraction]:
    """Map graph6 id -> chi_f from a previous sweep's checkpoint lines."""
    done: dict[str, Fraction] = {}
    for idx, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n")
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise GraphInputError(
                f"checkpoint line {idx}: expected graph6, chi_f, gap"
            )
        try:
            done[parts[0]] = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise GraphInputError(
                f"checkpoint line {idx}: bad rational {parts[1]!r}"
            ) from None
    return done


def gap_sweep(
    lines: Iterable[str],
    k: int,
    checkpoint: TextIO | None = None,
    done: dict[str, Fraction] | None = None,
    parse_errors: list[tuple[int, str]] | None = None,
    budget: int | None = None,
) -> list[GapRecord]:
    """Measure Delta - chi_f over a graph6 stream, at maximum degree k.

    Keeps exactly the connected graphs with maximum degree k that classify
    as BelowDelta and solves each one exactly. Undecodable or disconnected
    lines are appended to ``parse_errors`` as (line number, message) and the
    sweep continues. Every fresh record is written to ``checkpoint`` as a
    "graph6 TAB chi_f TAB gap" line the moment it is computed; passing the
    parsed contents of an old checkpoint as ``done`` skips re-solving those
    graphs on resume (their records are rebuilt from the stored value and
    not re-written).
    """
    records: list[GapRecord] = []
    for idx, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        try:
            g = decode_graph6(text, line=idx)
            if not is_connected(g):
                raise Graph6FormatError("graph is not connected", line=idx)
        except Graph6FormatError as exc:
            if parse_errors is not None:
                parse_errors.append((idx, str(exc)))
            continue
        if delta(g) != k:
            continue
        verdict = classify(g, budget=budget)
        if verdict.at_threshold:
            continue
        omega = int(verdict.evidence["omega"])
        fresh = done is None or text not in done
        if fresh:
            value, _ = chi_f_exact(g, budget=budget, with_dual=False)
        else:
            value = done[text]
        gap = k - value
        records.append(GapRecord(text, k, omega, value, gap))
        if checkpoint is not None and fresh:
            checkpoint.write(
                f"{text}\t{format_rational(value)}\t{format_rational(gap)}\n"
            )
            checkpoint.flush()
    return records


def sweep_summary(k: int, records: list[GapRecord]) -> dict[str, object]:
    """JSON-ready running minimum over sweep records."""
    best: GapRecord | None = None
    for record in records:
        if best is None or record.gap < best.gap:
            best = record
    return {
        "k": k,
        "count": len(records),
        "min_gap": format_rational(best.gap) if best is not None else None,
        "argmin_graph6": best.graph6 if best is not None else None,
    }
