"""Command-line interface.

    polybinom chromatic FILE     chi, star vector, split, audits
    polybinom flow FILE          both flow polynomials, splits, orientation table
    polybinom order FILE         order polynomial, split, polytope oracles
    polybinom survey KIND        exhaustive/sampled theorem verification
    polybinom table1             monomial-basis inequality rows for degrees 5-7

Exit codes: 0 all checks pass, 1 counterexample found, 2 input rejected,
3 cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .chromatic import chromatic_analysis, match_reference_forms, star_via_order_polynomials
from .decompositions import check_partial_sum_inequalities
from .errors import CapExceeded, InputFormatError, NotApplicable, PolybinomError
from .flows import flow_analysis, kochol_orientation_counts
from .graphs import parse_graph_file
from .polynomials import binomial_transform
from .posets import (
    ehrhart_polynomial,
    hstar_via_descents,
    interior_point_count,
    interior_star,
    omega_star,
    order_star_split,
    parse_poset_file,
    strict_order_poly,
)
from .survey import run_flow_survey, run_graph_survey, run_poset_survey

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_REJECTED = 2
EXIT_CAP = 3


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _audit_lines(audits) -> list[str]:
    lines = []
    for report in audits:
        lines.append(f"  {report.family}: {report.verdict}")
        for row in report.rows:
            if not row.holds:
                lines.append(f"    j={row.j}: {row.lhs} !{report.relation} {row.rhs}")
    return lines


def _write_audit_csv(path: str, instance: str, audits) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["instance", "family", "j", "lhs", "rhs", "holds"])
        for report in audits:
            for row in report.rows:
                writer.writerow([instance, report.family, row.j, row.lhs, row.rhs, row.holds])


def _read_file(path: str) -> tuple[str, str]:
    text = Path(path).read_text()
    return text, hashlib.sha256(text.encode()).hexdigest()


def _check_edge_cap(g, cap: int | None) -> None:
    if cap is not None and g.edge_count > cap:
        raise CapExceeded(f"graph has {g.edge_count} edges, --cap-edges is {cap}")


def _cmd_chromatic(args) -> int:
    text, digest = _read_file(args.file)
    g = parse_graph_file(text)
    _check_edge_cap(g, args.cap_edges)
    result = chromatic_analysis(g)
    via_orders = star_via_order_polynomials(g)
    order_sum_ok = via_orders == result.chi_star
    failed = (
        not result.constants_match_oracle
        or not order_sum_ok
        or any(r.verdict == "fail" for r in result.audits)
    )
    if args.csv:
        _write_audit_csv(args.csv, args.file, result.audits)
    if args.json:
        payload = result.to_json()
        payload.update(
            {
                "schema": 1,
                "version": __version__,
                "input_sha256": digest,
                "order_polynomial_sum_matches": order_sum_ok,
                "verdict": "fail" if failed else "pass",
                "run": {"timestamp": _timestamp()},
            }
        )
        _emit_json(payload)
    else:
        print(f"graph: {g.vertex_count} vertices, {g.edge_count} edges")
        print(f"chi: {result.chi.pretty()}")
        print(f"chi_star: {tuple(result.chi_star.entries)}")
        print(f"a: {result.split.p}")
        print(f"b: {result.split.q}")
        print(f"acyclic orientations: {result.acyclic_count}")
        print(f"constants match oracle: {result.constants_match_oracle}")
        print(f"order-polynomial sum matches: {order_sum_ok}")
        print("audits:")
        print("\n".join(_audit_lines(result.audits)))
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def _cmd_flow(args) -> int:
    text, digest = _read_file(args.file)
    g = parse_graph_file(text)
    _check_edge_cap(g, args.cap_edges)
    result = flow_analysis(g)
    xi = result.xi
    kochol = {n: kochol_orientation_counts(g, n) for n in range(1, xi + 3)}
    kochol_ok = all(sum(t.values()) == result.f(n) for n, t in kochol.items())
    keys_ok = all(set(t) <= result.tc_orientation_set for t in kochol.values())
    failed = (
        not result.constants_match_oracle
        or not kochol_ok
        or not keys_ok
        or any(r.verdict == "fail" for r in result.audits)
    )
    if args.csv:
        _write_audit_csv(args.csv, args.file, result.audits)
    if args.json:
        payload = result.to_json()
        payload.update(
            {
                "schema": 1,
                "version": __version__,
                "input_sha256": digest,
                "kochol_table": {
                    str(n): {"".join(map(str, k)): v for k, v in t.items()}
                    for n, t in kochol.items()
                },
                "kochol_sums_match_f": kochol_ok,
                "kochol_keys_totally_cyclic": keys_ok,
                "verdict": "fail" if failed else "pass",
                "run": {"timestamp": _timestamp()},
            }
        )
        _emit_json(payload)
    else:
        print(f"graph: {g.vertex_count} vertices, {g.edge_count} edges, xi = {xi}")
        print(f"phi: {result.phi.pretty()}")
        print(f"f: {result.f.pretty()}")
        print(f"phi_star: {tuple(result.phi_star.entries)}")
        print(f"f_star: {tuple(result.f_star.entries)}")
        print(f"alpha: {result.phi_split.p}")
        print(f"beta: {result.phi_split.q}")
        print(f"c: {result.f_split.p}")
        print(f"d: {result.f_split.q}")
        print(f"totally cyclic orientations: {result.tc_orientation_count}")
        print(f"in-degree sequences: {result.indegree_sequence_count}")
        print(f"constants match oracles: {result.constants_match_oracle}")
        print(f"orientation-sum identity (n=1..{xi + 2}): {kochol_ok}")
        top = kochol[xi + 2]
        print(f"orientation table at n={xi + 2}: {len(top)} orientations, total {sum(top.values())}")
        print("audits:")
        print("\n".join(_audit_lines(result.audits)))
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def _cmd_order(args) -> int:
    text, digest = _read_file(args.file)
    p = parse_poset_file(text)
    d = p.element_count
    if d == 0:
        raise NotApplicable("empty", "the empty poset is excluded from verification")
    poly = strict_order_poly(p)
    star = omega_star(p)
    split = order_star_split(p)
    hstar = binomial_transform(ehrhart_polynomial(p), d, start=0)
    descents = hstar_via_descents(p) if d <= 8 else None
    inner = interior_star(p)
    ehr = ehrhart_polynomial(p)
    reciprocity_ok = all(
        (-1) ** d * ehr(-n) == interior_point_count(p, n) for n in range(1, d + 3)
    )
    audits = (
        check_partial_sum_inequalities(star.entries, d, "order_tail_sums"),
        check_partial_sum_inequalities(star.entries, d, "binomial_coefficient_bound"),
    )
    checks = {
        "top_entry_is_one": star.entries[d] == 1,
        "reciprocity": reciprocity_ok,
        "hstar_reversal_is_interior": hstar.interior_reversal() == inner,
        "interior_shift_is_order_star": inner.entries[1:] == star.entries,
        "descents_match_lattice_hstar": descents == hstar if descents is not None else None,
    }
    failed = any(v is False for v in checks.values()) or any(
        r.verdict == "fail" for r in audits
    )
    if args.csv:
        _write_audit_csv(args.csv, args.file, audits)
    if args.json:
        payload = {
            "schema": 1,
            "version": __version__,
            "input_sha256": digest,
            "poset": p.to_json(),
            "order_polynomial": poly.to_json(),
            "omega_star": star.to_json(),
            "a": list(split.p),
            "b": list(split.q),
            "hstar": hstar.to_json(),
            "checks": checks,
            "audits": [r.to_json() for r in audits],
            "verdict": "fail" if failed else "pass",
            "run": {"timestamp": _timestamp()},
        }
        _emit_json(payload)
    else:
        print(f"poset: {d} elements, covers {list(p.cover_pairs())}")
        print(f"order polynomial: {poly.pretty()}")
        print(f"omega_star: {tuple(star.entries)}")
        print(f"a: {split.p}")
        print(f"b: {split.q}")
        print(f"hstar (order polytope): {tuple(hstar.entries)}")
        for name, value in checks.items():
            print(f"{name}: {value}")
        print("audits:")
        print("\n".join(_audit_lines(audits)))
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


def _cmd_survey(args) -> int:
    runners = {
        "graphs": run_graph_survey,
        "posets": run_poset_survey,
        "flows": run_flow_survey,
    }
    runner = runners[args.kind]
    report = runner(args.max_size, args.mode, args.seed)
    payload = report.to_json(timestamp=_timestamp())
    if args.csv:
        with open(args.csv, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["instance", "check", "verdict"])
            for inst in payload["instances"]:
                for name, verdict in sorted(inst["checks"].items()):
                    writer.writerow([inst["id"], name, verdict])
    if args.json:
        _emit_json(payload)
    else:
        print(f"survey kind={args.kind} mode={args.mode} max_size={args.max_size} seed={args.seed}")
        print(f"instances: {len(report.instances)}  skipped: {len(report.skipped)}")
        for skip in report.skipped:
            print(f"  skipped {skip['id']}: {skip['reason']}")
        print(f"counterexamples: {len(report.counterexamples)}")
        for ce in report.counterexamples:
            print(f"  {ce['id']}: {ce['check']}")
        print(f"verdict: {payload['verdict']}  ({report.elapsed_seconds:.1f}s)")
    return EXIT_OK if report.ok else EXIT_COUNTEREXAMPLE


def _cmd_table1(args) -> int:
    report = match_reference_forms()
    if args.json:
        report.update({"schema": 1, "version": __version__, "run": {"timestamp": _timestamp()}})
        _emit_json(report)
    else:
        for d, block in sorted(report["degrees"].items()):
            print(f"degree {d}:")
            for j, text in block["derived"]:
                print(f"  j={j}: {text}")
            for idx, match in sorted(block["matches"].items()):
                print(f"  golden[{idx}] {match['golden']} <- derived j={match['derived_j']}")
        print(f"all golden rows matched: {report['all_matched']}")
    return EXIT_OK if report["all_matched"] else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polybinom",
        description="Exact graph/poset counting polynomials and their decompositions.",
    )
    parser.add_argument("--version", action="version", version=f"polybinom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_file: bool, with_edge_cap: bool = False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--csv", metavar="PATH", help="write audit rows as CSV")
        if with_edge_cap:
            p.add_argument(
                "--cap-edges",
                type=int,
                metavar="M",
                default=None,
                help="reject graphs with more than M edges (exit 3)",
            )
        if with_file:
            p.add_argument("file", metavar="FILE", help="input file")

    p = sub.add_parser("chromatic", help="chromatic polynomial analysis of a graph file")
    add_common(p, with_file=True, with_edge_cap=True)
    p.set_defaults(func=_cmd_chromatic)

    p = sub.add_parser("flow", help="flow polynomial analysis of a graph file")
    add_common(p, with_file=True, with_edge_cap=True)
    p.set_defaults(func=_cmd_flow)

    p = sub.add_parser("order", help="order polynomial analysis of a poset file")
    add_common(p, with_file=True)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("survey", help="run a verification survey")
    p.add_argument("kind", choices=["graphs", "posets", "flows"])
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--mode", choices=["exhaustive", "sample"], default="exhaustive")
    p.add_argument("--seed", type=int, default=0)
    add_common(p, with_file=False)
    p.set_defaults(func=_cmd_survey)

    p = sub.add_parser("table1", help="derive and match the monomial-basis inequality rows")
    add_common(p, with_file=False)
    p.set_defaults(func=_cmd_table1)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputFormatError, NotApplicable) as exc:
        reason = getattr(exc, "reason", "parse-error")
        print(f"rejected ({reason}): {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except FileNotFoundError as exc:
        print(f"rejected (missing-file): {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except PolybinomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REJECTED


if __name__ == "__main__":
    sys.exit(main())
