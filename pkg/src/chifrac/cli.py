"""Command line front end.

One executable, ten subcommands, machine-readable output: rationals print
as p/q, everything structured is JSON matching the schemas under
docs/schemas.  Exit codes: 0 success, 1 domain failure (not found, proven
impossible, hypothesis violated), 2 usage or parse error, 3 node budget
exhausted.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .bounds import (
    classify,
    cut2_upper_bound,
    find_two_cuts,
    gap_sweep,
    molloy_reed_bound,
    read_checkpoint,
    sweep_summary,
)
from .cliques import max_clique
from .errors import (
    ChifracError,
    Graph6FormatError,
    GraphInputError,
    NotFoundError,
    ResourceLimitError,
)
from .graph import Graph, cycle_power, delta, make_complete, make_cycle, strong_product
from .graph6 import decode_graph6, format_edge_list
from .lp import (
    FractionalSolution,
    chi_f_exact,
    find_ab_coloring,
    fold_coloring_from_json,
    fold_coloring_to_json,
    format_rational,
    fractional_solution_to_json,
    parse_rational,
    verify_fold_coloring,
    verify_fractional_solution,
)
from .patterns import (
    HittingFamily,
    catalog_graph,
    catalog_names,
    check_lemma_hypotheses,
    hitting_independent_set,
    lemma_family,
    stable_set_meeting_max_cliques,
)
from .pipeline import run_pipeline

_CONSTRUCTOR_HELP = (
    "a graph6 string, a catalog name, or a constructor: "
    '"C8^2", "Kn:5", "Cn:7", "CnPow:8,2", "StrongProd:<g6>,<g6>"'
)


# ==================== input parsing ====================


def parse_graph_spec(text: str) -> Graph:
    """Constructor grammar with graph6 fallback."""
    s = text.strip()
    if not s:
        raise GraphInputError("empty graph specification")
    if s in catalog_names():
        return catalog_graph(s)
    if s == "C8^2":
        return cycle_power(8, 2)
    head, sep, rest = s.partition(":")
    if sep and head in ("Kn", "Cn", "CnPow", "StrongProd"):
        try:
            if head == "Kn":
                return make_complete(int(rest))
            if head == "Cn":
                return make_cycle(int(rest))
            if head == "CnPow":
                n, k = rest.split(",")
                return cycle_power(int(n), int(k))
            left, right = rest.split(",", 1)
            return strong_product(decode_graph6(left), decode_graph6(right))
        except ValueError:
            raise GraphInputError(
                f"malformed constructor {s!r}; expected {_CONSTRUCTOR_HELP}"
            ) from None
    return decode_graph6(s)


def _input_graph(args: argparse.Namespace) -> Graph:
    if getattr(args, "graph", None) is not None:
        return parse_graph_spec(args.graph)
    if getattr(args, "file", None) is not None:
        with open(args.file, encoding="ascii") as fh:
            return parse_graph_spec(fh.read())
    return parse_graph_spec(sys.stdin.readline())


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip() != ""]
    except ValueError:
        raise GraphInputError(f"{what} must be comma-separated integers, got {text!r}") from None


def _jsonable(obj: object) -> object:
    if isinstance(obj, (frozenset, set)):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, (tuple, list)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return obj


def _emit(obj: object) -> None:
    print(json.dumps(_jsonable(obj), indent=2))


def _write_json(path: str, obj: object) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


# ==================== subcommands ====================


def _cmd_chi_f(args: argparse.Namespace) -> int:
    g = _input_graph(args)
    value, sol = chi_f_exact(g, with_dual=args.certificate is not None)
    print(format_rational(value))
    if args.certificate is not None:
        _write_json(args.certificate, fractional_solution_to_json(sol))
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    g = _input_graph(args)
    verdict = classify(g, strict=args.strict)
    evidence = {
        key: list(val) if isinstance(val, tuple) else val
        for key, val in verdict.evidence.items()
    }
    _emit({"category": verdict.category, "evidence": evidence})
    return 0


def _cmd_color(args: argparse.Namespace) -> int:
    g = _input_graph(args)
    fold = find_ab_coloring(g, args.a, args.b)
    if fold is None:
        _emit(
            {
                "error": "proven-none",
                "message": f"no {args.a}:{args.b} coloring exists",
            }
        )
        return 1
    _emit(fold_coloring_to_json(g, fold))
    return 0


def _certificate_kind(obj: dict) -> str:
    if "assignment" in obj:
        return "fold"
    if "primal" in obj:
        return "fractional"
    raise GraphInputError("certificate has neither an assignment nor a primal part")


def _fractional_from_json(obj: dict) -> FractionalSolution:
    try:
        sets = [frozenset(int(v) for v in entry["set"]) for entry in obj["primal"]]
        weights = [parse_rational(entry["weight"]) for entry in obj["primal"]]
        value = parse_rational(obj["chi_f"])
        dual = obj.get("dual")
        duals = None if dual is None else tuple(parse_rational(d) for d in dual)
    except (KeyError, TypeError) as exc:
        raise GraphInputError(f"malformed fractional certificate: {exc}") from None
    return FractionalSolution(tuple(sets), tuple(weights), value, duals)


def _cmd_verify(args: argparse.Namespace) -> int:
    with open(args.certificate, encoding="ascii") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise GraphInputError("certificate must be a JSON object")
    kind = _certificate_kind(obj)
    if kind == "fold":
        cert_graph, fold = fold_coloring_from_json(obj)
        g = cert_graph
        if args.graph is not None or args.file is not None:
            g = _input_graph(args)
            if g.rows != cert_graph.rows:
                _emit(
                    {
                        "ok": False,
                        "kind": kind,
                        "witness": {"kind": "graph-mismatch", "at": None},
                    }
                )
                return 1
        ok, witness = verify_fold_coloring(g, fold)
        if ok:
            _emit({"ok": True, "kind": kind})
            return 0
        place, at = witness
        _emit(
            {
                "ok": False,
                "kind": kind,
                "witness": {"kind": place, "at": list(at) if isinstance(at, tuple) else at},
            }
        )
        return 1
    g = _input_graph(args)
    sol = _fractional_from_json(obj)
    if verify_fractional_solution(g, sol):
        _emit({"ok": True, "kind": kind})
        return 0
    _emit({"ok": False, "kind": kind, "witness": None})
    return 1


def _cmd_bound(args: argparse.Namespace) -> int:
    g = _input_graph(args)
    omega, _ = max_clique(g)
    out = {
        "molloy_reed": format_rational(molloy_reed_bound(g)),
        "delta": delta(g),
        "omega": omega,
    }
    if args.exact:
        value, _ = chi_f_exact(g, with_dual=False)
        out["chi_f"] = format_rational(value)
        out["slack"] = format_rational(molloy_reed_bound(g) - value)
    _emit(out)
    return 0


def _cmd_cut2(args: argparse.Namespace) -> int:
    g = _input_graph(args)
    if args.find:
        _emit({"cuts": [list(c) for c in find_two_cuts(g)]})
        return 0
    if args.cut is None or args.side is None:
        raise GraphInputError("cut2 needs either --find or both --cut and --side")
    cut = _int_list(args.cut, "--cut")
    if len(cut) != 2:
        raise GraphInputError(f"--cut needs exactly two vertices, got {len(cut)}")
    side = _int_list(args.side, "--side")
    bound = cut2_upper_bound(g, (cut[0], cut[1]), side)
    _emit({"bound": format_rational(bound), "cut": cut, "side": sorted(side)})
    return 0


def _cmd_hitting(args: argparse.Namespace) -> int:
    g = _input_graph(args)
    if args.check:
        if args.lemma is None:
            raise GraphInputError("--check needs --lemma")
        report = check_lemma_hypotheses(g, args.lemma)
        out: dict[str, object] = {
            "lemma": report.lemma,
            "checks": report.checks,
            "ok": report.ok,
        }
        if args.seed is not None:
            out["seed"] = args.seed
        _emit(out)
        return 0
    if args.max_cliques:
        found = stable_set_meeting_max_cliques(g, extend_maximal=args.maximal)
    else:
        if args.lemma is not None:
            family = lemma_family(args.lemma)
        elif args.pattern:
            patterns = []
            modes = []
            for spec in args.pattern:
                body, sep, mode = spec.partition("@")
                patterns.append(parse_graph_spec(body))
                modes.append(mode if sep else "induced")
            family = HittingFamily(tuple(patterns), tuple(modes))
        else:
            raise GraphInputError(
                "hitting needs --lemma, --pattern or --max-cliques"
            )
        found = hitting_independent_set(g, family, extend_maximal=args.maximal)
    out = {"set": sorted(found), "size": len(found)}
    if args.seed is not None:
        out["seed"] = args.seed
    _emit(out)
    return 0


def _cmd_delta4(args: argparse.Namespace) -> int:
    g = _input_graph(args)
    fold, report = run_pipeline(g, mode=args.mode)
    if args.seed is not None:
        report["seed"] = args.seed
    if args.emit_certificate is not None:
        _write_json(args.emit_certificate, fold_coloring_to_json(g, fold))
    if args.emit_report is not None:
        _write_json(args.emit_report, report)
    # timings only go to the report file so stdout stays byte-reproducible
    _emit({key: val for key, val in report.items() if key != "stage_seconds"})
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    done = None
    if args.checkpoint is not None:
        try:
            with open(args.checkpoint, encoding="ascii") as fh:
                done = read_checkpoint(fh)
        except FileNotFoundError:
            done = {}
    if args.file is not None:
        stream = open(args.file, encoding="ascii")
    else:
        stream = sys.stdin
    parse_errors: list[tuple[int, str]] = []
    try:
        if args.checkpoint is not None:
            with open(args.checkpoint, "a", encoding="ascii") as ck:
                records = gap_sweep(
                    stream, args.k, checkpoint=ck, done=done, parse_errors=parse_errors
                )
        else:
            records = gap_sweep(stream, args.k, parse_errors=parse_errors)
    finally:
        if stream is not sys.stdin:
            stream.close()
    out = sweep_summary(args.k, records)
    out["parse_errors"] = [[line, message] for line, message in parse_errors]
    if args.records:
        out["records"] = [
            {
                "graph6": r.graph6,
                "chi_f": format_rational(r.chi_f),
                "gap": format_rational(r.gap),
            }
            for r in records
        ]
    if args.seed is not None:
        out["seed"] = args.seed
    _emit(out)
    return 0


def _cmd_catalog(args: argparse.Namespace) -> int:
    if args.list:
        for name in catalog_names():
            print(name)
        return 0
    if args.name is None:
        raise GraphInputError("catalog needs --name or --list")
    g = catalog_graph(args.name)
    sys.stdout.write(
        format_edge_list(g, comment=f"{args.name}: {g.n} vertices, {g.m} edges")
    )
    return 0


# ==================== parser ====================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chifrac",
        description="Exact fractional coloring toolkit for bounded-degree graphs.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    source = argparse.ArgumentParser(add_help=False)
    grp = source.add_mutually_exclusive_group()
    grp.add_argument("--graph", help=_CONSTRUCTOR_HELP)
    grp.add_argument("--file", help="read the graph specification from a file")
    source.add_argument("--seed", type=int, help="seed for randomized search, echoed")

    p = sub.add_parser("chi-f", parents=[source], help="exact fractional chromatic number")
    p.add_argument("--certificate", help="write the primal/dual certificate JSON here")
    p.set_defaults(func=_cmd_chi_f)

    p = sub.add_parser("classify", parents=[source], help="degree-threshold category")
    p.add_argument("--strict", action="store_true", help="cross-check with the exact LP")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("color", parents=[source], help="search for an a:b coloring")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("verify", parents=[source], help="check a coloring certificate")
    p.add_argument("--certificate", required=True, help="certificate JSON path")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bound", parents=[source], help="clique-degree averaging bound")
    p.add_argument("--exact", action="store_true", help="also solve the exact LP")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("cut2", parents=[source], help="two-vertex cut decomposition bound")
    p.add_argument("--find", action="store_true", help="list all 2-cuts instead")
    p.add_argument("--cut", help="the separating pair, as u,v")
    p.add_argument("--side", help="vertices of one side, comma-separated")
    p.set_defaults(func=_cmd_cut2)

    p = sub.add_parser("hitting", parents=[source], help="independent transversal search")
    p.add_argument("--lemma", choices=("6to5", "5to41", "5to42"))
    p.add_argument(
        "--pattern",
        action="append",
        help="pattern spec, optionally suffixed @induced or @subgraph; repeatable",
    )
    p.add_argument("--max-cliques", action="store_true", help="hit every maximum clique")
    p.add_argument("--maximal", action="store_true", help="extend to a maximal independent set")
    p.add_argument("--check", action="store_true", help="report lemma hypothesis checks only")
    p.set_defaults(func=_cmd_hitting)

    p = sub.add_parser("delta4", parents=[source], help="constructive bounded-degree coloring")
    p.add_argument("--mode", choices=("pattern", "conservative"), default="pattern")
    p.add_argument("--emit-certificate", help="write the fold coloring JSON here")
    p.add_argument("--emit-report", help="write the run report JSON here")
    p.set_defaults(func=_cmd_delta4)

    p = sub.add_parser("sweep", parents=[source], help="fractional gap sweep over a graph6 stream")
    p.add_argument("--k", type=int, required=True, help="degree threshold")
    p.add_argument("--checkpoint", help="resumable results file")
    p.add_argument("--records", action="store_true", help="include per-graph records")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("catalog", parents=[source], help="emit a cataloged graph")
    p.add_argument("--name", help="catalog key")
    p.add_argument("--list", action="store_true", help="print the available keys")
    p.set_defaults(func=_cmd_catalog)

    return parser


def _report_error(slug: str, exc: Exception, **extra: object) -> None:
    payload: dict[str, object] = {"error": slug, "message": str(exc)}
    for key, val in extra.items():
        if val is not None:
            payload[key] = val
    _emit(payload)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return 0 if code == 0 else 2
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        _report_error(
            "resource-limit",
            exc,
            nodes=exc.nodes,
            lower=None if exc.lower is None else format_rational(Fraction(exc.lower)),
            upper=None if exc.upper is None else format_rational(Fraction(exc.upper)),
        )
        return 3
    except Graph6FormatError as exc:
        _report_error("graph6", exc, line=exc.line, offset=exc.offset)
        return 2
    except GraphInputError as exc:
        _report_error("input", exc)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        _report_error("io", exc)
        return 2
    except NotFoundError as exc:
        _report_error("not-found", exc, witness=_jsonable(exc.witness))
        return 1
    except ChifracError as exc:
        slug = type(exc).__name__.removesuffix("Error")
        slug = "".join("-" + c.lower() if c.isupper() else c for c in slug).lstrip("-")
        _report_error(slug, exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
