"""Exhaustive and sampled verification surveys over small instance families.

Families are deterministic: simple graphs come from edge-subset enumeration
deduplicated by canonical certificate, posets from the validated generator,
flow instances from the bridgeless graphs plus a fixed multigraph fixture
set.  Every skipped instance carries a machine-readable reason; every
failed check lands in the counterexample list (expected empty).
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from . import __version__
from .chromatic import chromatic_analysis, star_via_order_polynomials
from .decompositions import (
    ab_decomposition,
    ca_decomposition,
    chain_report,
    check_partial_sum_inequalities,
    nonnegativity_report,
)
from .errors import NotApplicable
from .flows import flow_analysis, kochol_orientation_counts
from .graphs import Multigraph, complete_graph, cyclomatic_number, dipole, graph_certificate
from .polynomials import binomial_transform
from .posets import (
    Poset,
    ehrhart_polynomial,
    generate_posets,
    hstar_via_descents,
    interior_point_count,
    interior_star,
    omega_star,
    order_star_split,
)

__all__ = [
    "SurveyReport",
    "connected_graph_classes",
    "flow_fixture_set",
    "run_flow_survey",
    "run_graph_survey",
    "run_poset_survey",
]

POSET_SURVEY_CAP = 6
FLOW_XI_SURVEY_CAP = 5


# ---------------------------------------------------------------------------
# instance families


def connected_graph_classes(max_d: int) -> list[Multigraph]:
    """Connected simple graphs on 1..max_d vertices, one per isomorphism class.

    Enumerates all edge subsets of the complete graph and deduplicates by
    canonical certificate; the representative is the certificate's own edge
    list, so output is independent of enumeration order.
    """
    out: list[Multigraph] = []
    for d in range(1, max_d + 1):
        pairs = list(combinations(range(d), 2))
        seen: set[tuple] = set()
        reps = []
        for mask in range(1 << len(pairs)):
            edges = tuple(pairs[k] for k in range(len(pairs)) if (mask >> k) & 1)
            g = Multigraph(d, edges)
            if not g.is_connected:
                continue
            cert = graph_certificate(g)
            if cert in seen:
                continue
            seen.add(cert)
            reps.append(Multigraph(d, cert[1]))
        reps.sort(key=lambda g: (g.edge_count, g.edges))
        out.extend(reps)
    return out


def flow_fixture_set() -> list[tuple[str, Multigraph]]:
    """Fixed multigraph fixtures exercised by every flow survey."""
    k4_doubled = Multigraph(4, complete_graph(4).edges + ((0, 1),))
    fixtures = [(f"dipole{k}", dipole(k)) for k in range(2, 6)]
    fixtures.append(("theta", dipole(3)))
    fixtures.append(("k4_doubled_edge", k4_doubled))
    return fixtures


def _random_graph(rng: random.Random, max_d: int) -> Multigraph:
    d = rng.randint(2, max_d)
    edges = tuple(pair for pair in combinations(range(d), 2) if rng.random() < 0.5)
    return Multigraph(d, edges)


def sample_graphs(seed: int, count: int, max_d: int, *, bridgeless: bool = False) -> list[Multigraph]:
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < count and attempts < count * 200:
        attempts += 1
        g = _random_graph(rng, max_d)
        if not g.is_connected:
            continue
        if bridgeless and (not g.is_bridgeless or cyclomatic_number(g) > FLOW_XI_SURVEY_CAP):
            continue
        out.append(g)
    return out


def sample_posets(seed: int, count: int, max_d: int) -> list[Poset]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = rng.randint(1, max_d)
        pairs = [(i, j) for i in range(d) for j in range(i + 1, d) if rng.random() < 0.4]
        out.append(Poset.from_relation(d, pairs))
    return out


def _graph_id(g: Multigraph) -> str:
    edges = ",".join(f"{u}-{v}" for u, v in g.edges)
    return f"d{g.vertex_count}:{edges}" if edges else f"d{g.vertex_count}:-"


def _poset_id(p: Poset) -> str:
    covers = ",".join(f"{a}<{b}" for a, b in p.cover_pairs())
    return f"d{p.element_count}:{covers}" if covers else f"d{p.element_count}:-"


# ---------------------------------------------------------------------------
# report plumbing


@dataclass
class SurveyReport:
    kind: str
    scope: dict
    instances: list[dict] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    def record(self, instance_id: str, payload: dict, checks: dict[str, str]) -> None:
        self.instances.append({"id": instance_id, "checks": checks, **payload})
        for name, verdict in checks.items():
            if verdict == "fail":
                self.counterexamples.append({"id": instance_id, "check": name})

    def skip(self, instance_id: str, reason: str) -> None:
        self.skipped.append({"id": instance_id, "reason": reason})

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def check_column(self, name: str) -> list[str]:
        return [inst["checks"].get(name, "absent") for inst in self.instances]

    def to_json(self, *, timestamp: str | None = None) -> dict:
        body = {
            "schema": 1,
            "tool": "polybinom",
            "version": __version__,
            "kind": self.kind,
            "scope": self.scope,
            "scope_hash": hashlib.sha256(
                json.dumps(self.scope, sort_keys=True).encode()
            ).hexdigest(),
            "instance_count": len(self.instances),
            "instances": sorted(self.instances, key=lambda r: r["id"]),
            "skipped": sorted(self.skipped, key=lambda r: r["id"]),
            "counterexamples": sorted(
                self.counterexamples, key=lambda r: (r["id"], r["check"])
            ),
            "verdict": "pass" if self.ok else "fail",
        }
        if timestamp is not None:
            # volatile fields live under one key so reports stay byte-identical
            # across reruns once this key is dropped
            body["run"] = {"timestamp": timestamp, "elapsed_seconds": self.elapsed_seconds}
        return body


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# survey drivers


def run_graph_survey(max_size: int, mode: str = "exhaustive", seed: int = 0) -> SurveyReport:
    """Chromatic split, oracle constants, inequality audits, and the
    order-polynomial cross-route, over connected loopless simple graphs."""
    report = SurveyReport("graphs", {"max_size": max_size, "mode": mode, "seed": seed})
    t0 = time.perf_counter()
    if mode == "exhaustive":
        graphs = connected_graph_classes(max_size)
    elif mode == "sample":
        graphs = sample_graphs(seed, count=25, max_d=max_size)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for g in graphs:
        gid = _graph_id(g)
        try:
            result = chromatic_analysis(g)
        except NotApplicable as exc:
            report.skip(gid, exc.reason)
            continue
        checks = {
            "split_reconstructs": _verdict(result.split.difference() == result.chi_star.entries),
            "constants_match_acyclic_oracle": _verdict(result.constants_match_oracle),
            "top_entry_is_acyclic_count": _verdict(
                result.chi_star.entries[-1] == result.acyclic_count
            ),
            "reciprocity_at_minus_one": _verdict(
                (-1) ** g.vertex_count * result.chi(-1) == result.acyclic_count
            ),
        }
        for audit in result.audits:
            checks[audit.family] = audit.verdict
        via_orders = star_via_order_polynomials(g)
        checks["order_polynomial_sum_matches"] = _verdict(via_orders == result.chi_star)
        report.record(
            gid,
            {
                "d": g.vertex_count,
                "m": g.edge_count,
                "chi_star": list(result.chi_star.entries),
                "a": list(result.split.p),
                "b": list(result.split.q),
                "acyclic_orientations": result.acyclic_count,
            },
            checks,
        )
    report.elapsed_seconds = time.perf_counter() - t0
    return report


def run_poset_survey(max_size: int, mode: str = "exhaustive", seed: int = 0) -> SurveyReport:
    """Order star splits, both polytope oracles, reciprocity, and the
    lattice-point decompositions, over poset isomorphism classes."""
    report = SurveyReport("posets", {"max_size": max_size, "mode": mode, "seed": seed})
    t0 = time.perf_counter()
    if mode == "exhaustive":
        cap = min(max_size, POSET_SURVEY_CAP)
        posets = [p for d in range(1, cap + 1) for p in generate_posets(d)]
        report.scope["class_counts"] = [len(generate_posets(d)) for d in range(1, cap + 1)]
    elif mode == "sample":
        posets = sample_posets(seed, count=25, max_d=max_size)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for p in posets:
        pid = _poset_id(p)
        d = p.element_count
        star = omega_star(p)
        split = order_star_split(p)
        checks = {
            "split_reconstructs": _verdict(split.difference() == star.entries),
            "top_entry_is_one": _verdict(star.entries[d] == 1),
            "constants_are_one": _verdict(
                split.p[0] == 1 and (not split.q or split.q[0] == 1)
            ),
            "first_entry_zero_unless_antichain": _verdict(
                p.is_antichain or star.entries[1] == 0 if d >= 1 else True
            ),
        }
        for vec, hi, fam in ((split.p, d - 1, "order_chain_a"), (split.q, d - 2, "order_chain_b")):
            checks[fam] = chain_report(vec, hi, fam).verdict
            checks[fam + "_positive"] = nonnegativity_report(vec, fam, minimum=1).verdict
        checks["order_tail_sums"] = check_partial_sum_inequalities(
            star.entries, d, "order_tail_sums"
        ).verdict
        checks["binomial_coefficient_bound"] = check_partial_sum_inequalities(
            star.entries, d, "binomial_coefficient_bound"
        ).verdict

        # order polytope oracles
        hstar = binomial_transform(ehrhart_polynomial(p), d, start=0)
        descents = hstar_via_descents(p)
        inner = interior_star(p)
        ehr = ehrhart_polynomial(p)
        reciprocity_ok = all(
            (-1) ** d * ehr(-n) == interior_point_count(p, n) for n in range(1, d + 3)
        )
        checks["descents_match_lattice_hstar"] = _verdict(descents == hstar)
        checks["reciprocity"] = _verdict(reciprocity_ok)
        checks["hstar_reversal_is_interior"] = _verdict(
            hstar.interior_reversal() == inner
        )
        checks["interior_shift_is_order_star"] = _verdict(
            inner.entries[1:] == star.entries and inner.entries[0] == 0
        )
        ab = ab_decomposition(hstar)
        checks["hstar_ab_chain"] = ab.audit.verdict
        ca = ca_decomposition(hstar, interior=inner)
        for audit in ca.audits:
            checks[audit.family] = audit.verdict
        checks["hstar_tail_vs_head"] = check_partial_sum_inequalities(
            hstar.entries, d, "hstar_tail_vs_head"
        ).verdict
        checks["hstar_top_vs_head"] = check_partial_sum_inequalities(
            hstar.entries, d, "hstar_top_vs_head"
        ).verdict

        report.record(
            pid,
            {
                "d": d,
                "omega_star": list(star.entries),
                "a": list(split.p),
                "b": list(split.q),
                "hstar": list(hstar.entries),
            },
            checks,
        )
    report.elapsed_seconds = time.perf_counter() - t0
    return report


def run_flow_survey(
    max_size: int,
    mode: str = "exhaustive",
    seed: int = 0,
    *,
    max_xi: int = FLOW_XI_SURVEY_CAP,
    include_fixtures: bool = True,
) -> SurveyReport:
    """Flow splits, orientation oracles, inequality audits, and the
    per-orientation sum identity, over bridgeless instances."""
    report = SurveyReport(
        "flows", {"max_size": max_size, "mode": mode, "seed": seed, "max_xi": max_xi}
    )
    t0 = time.perf_counter()
    instances: list[tuple[str, Multigraph]] = []
    if mode == "exhaustive":
        for g in connected_graph_classes(max_size):
            instances.append((_graph_id(g), g))
        if include_fixtures:
            instances.extend(flow_fixture_set())
    elif mode == "sample":
        instances = [
            (_graph_id(g), g) for g in sample_graphs(seed, 15, max_size, bridgeless=True)
        ]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for gid, g in instances:
        if not g.is_bridgeless:
            report.skip(gid, "bridge")
            continue
        xi = cyclomatic_number(g)
        if xi == 0:
            report.skip(gid, "xi=0")
            continue
        if xi > max_xi:
            report.skip(gid, "cap")
            continue
        result = flow_analysis(g)
        checks = {
            "phi_split_reconstructs": _verdict(
                result.phi_split.difference() == result.phi_star.entries
            ),
            "f_split_reconstructs": _verdict(
                result.f_split.difference() == result.f_star.entries
            ),
            "constants_match_oracles": _verdict(result.constants_match_oracle),
            "phi_degree_is_xi": _verdict(result.phi.degree == xi),
            "f_degree_is_xi": _verdict(result.f.degree == xi),
        }
        for audit in result.audits:
            checks[audit.family] = audit.verdict
        kochol_ok = True
        keys_ok = True
        for n in range(1, xi + 3):
            table = kochol_orientation_counts(g, n)
            if sum(table.values()) != result.f(n):
                kochol_ok = False
            if not set(table) <= result.tc_orientation_set:
                keys_ok = False
        checks["kochol_sums_match_f"] = _verdict(kochol_ok)
        checks["kochol_keys_totally_cyclic"] = _verdict(keys_ok)
        report.record(
            gid,
            {
                "d": g.vertex_count,
                "m": g.edge_count,
                "xi": xi,
                "phi_star": list(result.phi_star.entries),
                "f_star": list(result.f_star.entries),
                "alpha": list(result.phi_split.p),
                "beta": list(result.phi_split.q),
                "c": list(result.f_split.p),
                "dvec": list(result.f_split.q),
                "totally_cyclic": result.tc_orientation_count,
                "indegree_sequences": result.indegree_sequence_count,
            },
            checks,
        )
    report.elapsed_seconds = time.perf_counter() - t0
    return report
