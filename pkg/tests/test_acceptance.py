"""Acceptance suite: one test per numbered criterion, in order.

Criteria 2, 3 and 5 share one streaming pass over the connected corpus
(n <= 9); the pass collects violations instead of asserting inline so a
single broken graph reports alongside its criterion. Each test appends a
summary line to conftest.ACCEPTANCE_LINES, printed after the run.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import pytest

from chifrac.bounds import classify, cut2_upper_bound, molloy_reed_bound
from chifrac.cliques import cliques_of_size, is_k_colorable
from chifrac.errors import NotFoundError, NoValidSelectionError
from chifrac.graph import (
    Graph,
    cycle_power,
    delta,
    is_connected,
    make_complete,
    make_cycle,
    strong_product,
)
from chifrac.graph6 import decode_graph6
from chifrac.lp import (
    chi_f_exact,
    find_ab_coloring,
    format_rational,
    verify_fold_coloring,
    verify_fractional_solution,
)
from chifrac.patterns import catalog_graph, hitting_independent_set, lemma_family
from chifrac.pipeline import neighborhoods, run_pipeline, select_all

from conftest import ACCEPTANCE_LINES, connected_lines, random_graph

# connected graphs per vertex count, 1 through 9
CORPUS_SIZES = (1, 1, 2, 6, 21, 112, 853, 11117, 261080)

GAP_LIMIT = Fraction(4) - Fraction(2, 67)


def _is_clique(g: Graph, vs) -> bool:
    return all(g.has_edge(u, v) for u, v in itertools.combinations(vs, 2))


def _chi_f(g: Graph) -> Fraction:
    return chi_f_exact(g, with_dual=False)[0]


@pytest.fixture(scope="module")
def desk_sweep():
    """One pass over all connected graphs n <= 9 for criteria 2, 3 and 5.

    c2: a classification other than BelowDelta must come with chi_f >= Delta
        and BelowDelta with chi_f < Delta. Threshold categories are checked
        by exhibiting a clique of size Delta (no LP); BelowDelta graphs by a
        (Delta-1)-coloring, with an exact LP for the rest.
    c3: every BelowDelta graph with Delta = 4 gets an exact LP; this is the
        criterion's whole scope, since omega = 4 would classify the graph as
        CliqueEqualsDelta, omega = 5 only fits K5, and an 8-cycle square is
        caught by its own category.
    c5: every graph with Delta <= 5 and omega <= 4 must admit a hitting
        independent set for the 5to41 and 5to42 families.
    """
    fam41 = lemma_family("5to41")
    fam42 = lemma_family("5to42")
    total = 0
    lp_runs = 0
    c2_bad: list[tuple[str, str]] = []
    c3_count = 0
    c3_worst: Fraction | None = None
    c3_argworst = ""
    c5_count = 0
    c5_bad: list[str] = []
    for n in range(1, 10):
        seen = 0
        for line in connected_lines(n):
            seen += 1
            g = decode_graph6(line, line=seen)
            d = delta(g)
            verdict = classify(g)
            cat = verdict.category
            if cat == "Complete":
                omega = g.n
                # chi_f >= omega = n > n - 1 = Delta
                if 2 * g.m != g.n * (g.n - 1):
                    c2_bad.append((line, cat))
            elif cat == "OddCycle":
                omega = 2
                # connected and 2-regular with odd n is an odd cycle;
                # any edge gives chi_f >= 2 = Delta
                if d != 2 or g.m != g.n or g.n % 2 == 0:
                    c2_bad.append((line, cat))
            elif cat == "CliqueEqualsDelta":
                omega = d
                q = verdict.evidence["clique"]
                if len(q) != d or not _is_clique(g, q):
                    c2_bad.append((line, cat))
            elif cat == "C8Squared":
                omega = 3
                value = _chi_f(g)
                lp_runs += 1
                if d != 4 or value != 4:
                    c2_bad.append((line, cat))
            elif cat == "BelowDelta":
                omega = verdict.evidence["omega"]
                if d == 4:
                    value = _chi_f(g)
                    lp_runs += 1
                    c3_count += 1
                    if value > GAP_LIMIT:
                        c2_bad.append((line, cat))
                    if c3_worst is None or value > c3_worst:
                        c3_worst = value
                        c3_argworst = line
                elif is_k_colorable(g, d - 1) is None:
                    value = _chi_f(g)
                    lp_runs += 1
                    if value >= d:
                        c2_bad.append((line, cat))
            else:
                omega = g.n
                value = _chi_f(g)
                lp_runs += 1
                if value < d:
                    c2_bad.append((line, cat))
            if d <= 5 and omega <= 4:
                c5_count += 1
                for fam in (fam41, fam42):
                    try:
                        hit = hitting_independent_set(g, fam)
                    except NotFoundError:
                        c5_bad.append(line)
                        continue
                    if any(g.has_edge(u, v) for u, v in itertools.combinations(hit, 2)):
                        c5_bad.append(line)
        assert seen == CORPUS_SIZES[n - 1], f"corpus file for n={n} is incomplete"
        total += seen
    return {
        "total": total,
        "lp_runs": lp_runs,
        "c2_bad": c2_bad,
        "c3_count": c3_count,
        "c3_worst": c3_worst,
        "c3_argworst": c3_argworst,
        "c5_count": c5_count,
        "c5_bad": c5_bad,
    }


def test_criterion_1_named_values():
    t0 = time.perf_counter()
    checks: list[tuple[Graph, Fraction]] = []
    for n in range(1, 9):
        checks.append((make_complete(n), Fraction(n)))
    for k in range(1, 6):
        checks.append((make_cycle(2 * k + 1), 2 + Fraction(1, k)))
    checks.append((cycle_power(8, 2), Fraction(4)))
    k2 = make_complete(2)
    checks.append((strong_product(make_cycle(5), k2), Fraction(5)))
    for l in (2, 3, 4):
        checks.append((strong_product(make_cycle(2 * l + 1), k2), 4 + Fraction(2, l)))
    for g, want in checks:
        value, sol = chi_f_exact(g)
        assert value == want
        assert verify_fractional_solution(g, sol)
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    ACCEPTANCE_LINES.append(
        f"criterion 1: PASS, {len(checks)} named values exact in {elapsed:.2f}s"
    )


def test_criterion_2_classification_matches_chi_f(desk_sweep):
    assert desk_sweep["total"] == sum(CORPUS_SIZES)
    assert desk_sweep["c2_bad"] == []
    ACCEPTANCE_LINES.append(
        f"criterion 2: PASS, classify != BelowDelta <=> chi_f >= Delta on all "
        f"{desk_sweep['total']} connected graphs n <= 9 "
        f"({desk_sweep['lp_runs']} exact LPs), zero exceptions"
    )


def test_criterion_3_degree_four_gap(desk_sweep):
    assert desk_sweep["c3_count"] > 0
    assert desk_sweep["c2_bad"] == []
    worst = desk_sweep["c3_worst"]
    assert worst is not None and worst <= GAP_LIMIT
    gap = 4 - worst
    assert gap >= Fraction(2, 67)
    ACCEPTANCE_LINES.append(
        f"criterion 3: PASS, chi_f <= 4 - 2/67 on all {desk_sweep['c3_count']} "
        f"connected Delta=4 omega<=3 non-C8^2 graphs n <= 9, "
        f"min gap {format_rational(gap)} at {desk_sweep['c3_argworst']}"
    )


def test_criterion_4_degree_bound_dominates():
    count = 0
    worst_slack: Fraction | None = None
    for n in range(1, 9):
        for line in connected_lines(n):
            g = decode_graph6(line)
            value = _chi_f(g)
            bound = molloy_reed_bound(g)
            assert bound >= value, line
            slack = bound - value
            if worst_slack is None or slack < worst_slack:
                worst_slack = slack
            count += 1
    assert count == sum(CORPUS_SIZES[:8])
    ACCEPTANCE_LINES.append(
        f"criterion 4: PASS, (omega + Delta + 1)/2 >= chi_f on all {count} "
        f"connected graphs n <= 8, min slack {format_rational(worst_slack)}"
    )


def test_criterion_5_hitting_sweeps(desk_sweep):
    assert desk_sweep["c5_bad"] == []
    assert desk_sweep["c5_count"] > 0
    # the one excluded graph: no independent set of C5xK2 meets all its K4s
    c5k2 = strong_product(make_cycle(5), make_complete(2))
    with pytest.raises(NotFoundError) as exc:
        hitting_independent_set(c5k2, lemma_family("5to41"))
    witness = exc.value.witness
    assert len(witness) == 4 and _is_clique(c5k2, witness)
    ACCEPTANCE_LINES.append(
        f"criterion 5: PASS, families 5to41 and 5to42 hit on all "
        f"{desk_sweep['c5_count']} connected Delta<=5 omega<=4 graphs n <= 9, "
        f"C5xK2 exception confirmed"
    )


def random_degree4_k4free(rng: random.Random, n: int) -> Graph:
    # resample until the selection stage accepts: an arbitrary K4-free
    # degree-4 graph can have a vertex where every neighborhood split
    # contracts onto a forbidden pattern (C8^2 is the canonical case),
    # and such inputs are outside run_pipeline's domain
    while True:
        g = Graph.from_edges(n, [])
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        rng.shuffle(pairs)
        for a, b in pairs:
            if g.degree(a) >= 4 or g.degree(b) >= 4:
                continue
            cand = g.with_edge(a, b)
            if cliques_of_size(cand, 4):
                continue
            g = cand
        if not (is_connected(g) and delta(g) == 4):
            continue
        try:
            select_all(g)
        except NoValidSelectionError:
            continue
        return g


def test_criterion_6_fold_assembly():
    rng = random.Random(643)
    level_caps = {4: 36, 5: 24, 7: 4}
    vertices_audited = 0
    for trial in range(200):
        n = rng.randrange(5, 25)
        g = random_degree4_k4free(rng, n)
        fold, report = run_pipeline(g)
        ok, witness = verify_fold_coloring(g, fold)
        assert ok, (trial, witness)
        k = report["k"]
        assert fold.a == 4 * k and fold.b == k + 1
        selections = select_all(g)
        for u in range(g.n):
            sets = {
                j: neighborhoods(g, selections, u, j, "pattern")
                for j in (1, 2, 3, 4, 5, 7)
            }
            assert len(sets[1] | sets[2] | sets[3]) <= 36, (trial, u)
            for j, cap in level_caps.items():
                assert len(sets[j]) <= cap, (trial, u, j)
            union = frozenset().union(*sets.values())
            assert len(union) <= 96, (trial, u)
            vertices_audited += 1
    ACCEPTANCE_LINES.append(
        f"criterion 6: PASS, 200 pipeline runs verified at ratio 4k/(k+1), "
        f"caps 36/36/24/4 and union 96 hold at all {vertices_audited} vertices"
    )


def test_criterion_7_catalog_11_3_colorings():
    names = ("H2", "H7", "H10", "G4", "G5", "G6", "G2+uv", "G2/uv")
    for name in names:
        g = catalog_graph(name)
        fold = find_ab_coloring(g, 11, 3)
        assert fold is not None, name
        ok, witness = verify_fold_coloring(g, fold)
        assert ok, (name, witness)
    ACCEPTANCE_LINES.append(
        f"criterion 7: PASS, verified 11:3 colorings for {', '.join(names)}"
    )


def test_criterion_8_lp_duality():
    rng = random.Random(733)
    zero = Fraction(0)
    for trial in range(500):
        n = rng.randrange(1, 13)
        g = random_graph(rng, n, rng.uniform(0.1, 0.9))
        value, sol = chi_f_exact(g)
        assert sol.dual is not None, trial
        assert sum(sol.dual, zero) == value, trial
        assert verify_fractional_solution(g, sol), trial
    ACCEPTANCE_LINES.append(
        "criterion 8: PASS, primal equals dual exactly on 500 random graphs n <= 12"
    )


def _cut_side(rng: random.Random, n: int) -> Graph:
    # connected, with 0 and 1 never adjacent; the glue step adds that edge
    while True:
        g = random_graph(rng, n, rng.uniform(0.35, 0.75))
        edges = [e for e in g.edges() if e != (0, 1)]
        g = Graph.from_edges(n, edges)
        if is_connected(g):
            return g


def test_criterion_9_cut2_calculus():
    rng = random.Random(811)
    edge_cases = 0
    for trial in range(100):
        want_edge = trial % 2 == 0
        na = rng.randrange(3, 9)
        nb = rng.randrange(3, 9)
        a = _cut_side(rng, na)
        b = _cut_side(rng, nb)
        lift = lambda v: v if v < 2 else v + na - 2
        edges = set(a.edges())
        for u, v in b.edges():
            x, y = lift(u), lift(v)
            edges.add((min(x, y), max(x, y)))
        if want_edge:
            edges.add((0, 1))
        g = Graph.from_edges(na + nb - 2, sorted(edges))
        exact = _chi_f(g)
        bound = cut2_upper_bound(g, (0, 1), range(2, na))
        if want_edge:
            assert bound == exact, trial
            edge_cases += 1
        else:
            assert bound >= exact, trial
    ACCEPTANCE_LINES.append(
        f"criterion 9: PASS, cut2 exact on {edge_cases} edge gluings and a valid "
        f"upper bound on {100 - edge_cases} non-edge gluings"
    )
