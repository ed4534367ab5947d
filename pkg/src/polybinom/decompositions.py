"""Symmetric decompositions of star vectors and the inequality audits on them.

Every integer vector v of length D+1 splits uniquely as v = p - q with
p palindromic of length D+1 (p_j = p_{D-j}) and q palindromic of length D
(q_j = q_{D-1-j}, padded with a zero at index D).  The closed form is

    p_j = (v_D + v_{D-1} + ... + v_{D-j}) - (v_0 + v_1 + ... + v_{j-1}),
    q_j = p_j - v_j.

Positivity and the monotonicity chains of these parts are the substance of
the theorems verified by this package, so they are *audited* and reported,
never assumed; verify-mode callers can escalate a failed audit to an error.

For star vectors of lattice-point counts there are two further canonical
decompositions, both driven by the degree s and codegree l = D+1-s:

* the a/b pair with (1 + z + ... + z^(l-1)) h(z) = a(z) + z^l b(z),
* the degree-free c/a pair with h(z) = c(z) - z a(z), c_j = a_{j-1} + h_j.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import VerificationFailed
from .polynomials import StarVector, binomial

__all__ = [
    "ABDecomposition",
    "CADecomposition",
    "InequalityReport",
    "InequalityRow",
    "SymmetricSplit",
    "ab_decomposition",
    "ca_decomposition",
    "chain_report",
    "check_partial_sum_inequalities",
    "nonnegativity_report",
    "require_pass",
    "symmetric_split",
]


# ---------------------------------------------------------------------------
# audit reports


@dataclass(frozen=True)
class InequalityRow:
    j: int
    lhs: int
    rhs: int
    holds: bool


@dataclass(frozen=True)
class InequalityReport:
    family: str
    relation: str  # printed as "lhs <relation> rhs"
    parameters: dict
    rows: tuple[InequalityRow, ...]

    @property
    def verdict(self) -> str:
        if not self.rows:
            return "vacuous"
        return "pass" if all(r.holds for r in self.rows) else "fail"

    @property
    def failures(self) -> tuple[InequalityRow, ...]:
        return tuple(r for r in self.rows if not r.holds)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "relation": self.relation,
            "parameters": self.parameters,
            "rows": [
                {"j": r.j, "lhs": r.lhs, "rhs": r.rhs, "holds": r.holds} for r in self.rows
            ],
            "verdict": self.verdict,
        }


def require_pass(reports: Sequence[InequalityReport]) -> None:
    """Raise VerificationFailed if any report has a failing row."""
    bad = [r for r in reports if r.verdict == "fail"]
    if bad:
        details = "; ".join(
            f"{r.family}{[(row.j, row.lhs, row.rhs) for row in r.failures]}" for r in bad
        )
        raise VerificationFailed(f"inequality audit failed: {details}")


def _entry(v: Sequence[int], i: int) -> int:
    return v[i] if 0 <= i < len(v) else 0


def _span(v: Sequence[int], lo: int, hi: int) -> int:
    """Inclusive sum v[lo] + ... + v[hi]; empty when lo > hi."""
    return sum(_entry(v, i) for i in range(lo, hi + 1))


def chain_report(v: Sequence[int], max_j: int, family: str, **params) -> InequalityReport:
    """Audit v_0 <= v_1 <= v_j for 1 <= j <= max_j (rows are lhs >= rhs)."""
    rows = []
    if max_j >= 1 and len(v) > 1:
        rows.append(InequalityRow(1, _entry(v, 1), _entry(v, 0), _entry(v, 1) >= _entry(v, 0)))
        for j in range(2, max_j + 1):
            rows.append(InequalityRow(j, _entry(v, j), _entry(v, 1), _entry(v, j) >= _entry(v, 1)))
    return InequalityReport(family, ">=", dict(params, max_j=max_j), tuple(rows))


def nonnegativity_report(v: Sequence[int], family: str, *, minimum: int = 0, **params) -> InequalityReport:
    rows = tuple(InequalityRow(i, x, minimum, x >= minimum) for i, x in enumerate(v))
    return InequalityReport(family, ">=", dict(params, minimum=minimum), rows)


# ---------------------------------------------------------------------------
# partial-sum and entrywise inequality families

FamilyRule = Callable[[Sequence[int], int], tuple[list[InequalityRow], str, dict]]


def _tail_sums(v: Sequence[int], d: int):
    # sum v[d-2 .. d-j] >= sum v[2 .. j] for 2 <= j <= floor(d/2)
    rows = []
    for j in range(2, d // 2 + 1):
        lhs = _span(v, d - j, d - 2)
        rhs = _span(v, 2, j)
        rows.append(InequalityRow(j, lhs, rhs, lhs >= rhs))
    return rows, ">=", {"d": d}


def _flow_tail_sums_base(v: Sequence[int], xi: int):
    # sum v[xi-j .. xi-1] >= sum v[1 .. j] for 1 <= j <= floor((xi-1)/2)
    rows = []
    for j in range(1, (xi - 1) // 2 + 1):
        lhs = _span(v, xi - j, xi - 1)
        rhs = _span(v, 1, j)
        rows.append(InequalityRow(j, lhs, rhs, lhs >= rhs))
    return rows, ">=", {"xi": xi}


def _flow_tail_sums_shifted(v: Sequence[int], xi: int):
    # sum v[xi-j .. xi-1] >= sum v[2 .. j+1] for 1 <= j <= floor((xi-1)/2)
    rows = []
    for j in range(1, (xi - 1) // 2 + 1):
        lhs = _span(v, xi - j, xi - 1)
        rhs = _span(v, 2, j + 1)
        rows.append(InequalityRow(j, lhs, rhs, lhs >= rhs))
    return rows, ">=", {"xi": xi}


def _hstar_tail_vs_head(v: Sequence[int], d: int):
    # sum v[d-j .. d-1] <= sum v[2 .. j+1] for 1 <= j <= floor(d/2) - 1
    rows = []
    for j in range(1, d // 2):
        lhs = _span(v, d - j, d - 1)
        rhs = _span(v, 2, j + 1)
        rows.append(InequalityRow(j, lhs, rhs, lhs <= rhs))
    return rows, "<=", {"d": d}


def _hstar_top_vs_head(v: Sequence[int], d: int):
    # sum v[d-j+1 .. d] <= sum v[2 .. j+1] for 1 <= j <= floor(d/2) - 1
    rows = []
    for j in range(1, d // 2):
        lhs = _span(v, d - j + 1, d)
        rhs = _span(v, 2, j + 1)
        rows.append(InequalityRow(j, lhs, rhs, lhs <= rhs))
    return rows, "<=", {"d": d}


def _chromatic_mirror(v: Sequence[int], d: int):
    # v[d-j] >= v[j] for 2 <= j <= floor((d-1)/2)
    rows = []
    for j in range(2, (d - 1) // 2 + 1):
        lhs, rhs = _entry(v, d - j), _entry(v, j)
        rows.append(InequalityRow(j, lhs, rhs, lhs >= rhs))
    return rows, ">=", {"d": d}


def _flow_mirror(v: Sequence[int], xi: int):
    # v[xi-j] >= v[j]; run the mirror-nonredundant range 1 <= j <= floor(xi/2).
    # Larger j would compare the same pairs reversed (and can genuinely fail),
    # so the audited range is recorded in the parameters.
    rows = []
    for j in range(1, xi // 2 + 1):
        lhs, rhs = _entry(v, xi - j), _entry(v, j)
        rows.append(InequalityRow(j, lhs, rhs, lhs >= rhs))
    return rows, ">=", {"xi": xi, "range": "1..floor(xi/2)"}


def _binomial_coefficient_bound(v: Sequence[int], d: int):
    # v[d-j] <= C(v[d-1] + j - 1, j) for 1 <= j <= d
    rows = []
    top = _entry(v, d - 1)
    for j in range(1, d + 1):
        lhs = _entry(v, d - j)
        rhs = binomial(top + j - 1, j)
        rows.append(InequalityRow(j, lhs, rhs, lhs <= rhs))
    return rows, "<=", {"d": d}


_FAMILIES: dict[str, FamilyRule] = {
    "chromatic_tail_sums": _tail_sums,
    "order_tail_sums": _tail_sums,
    "flow_tail_sums_base": _flow_tail_sums_base,
    "flow_tail_sums_shifted": _flow_tail_sums_shifted,
    "hstar_tail_vs_head": _hstar_tail_vs_head,
    "hstar_top_vs_head": _hstar_top_vs_head,
    "chromatic_mirror": _chromatic_mirror,
    "flow_mirror": _flow_mirror,
    "binomial_coefficient_bound": _binomial_coefficient_bound,
}

INEQUALITY_FAMILIES = tuple(sorted(_FAMILIES))


def check_partial_sum_inequalities(v: Sequence[int], degree: int, family: str) -> InequalityReport:
    """Audit one inequality family against the vector.

    ``degree`` is the structural index bound of the family: the vertex/element
    count d for chromatic/order/h* families, the cyclomatic number xi for the
    flow families.  Violations become failing rows, never exceptions; an
    empty index range yields an explicitly "vacuous" verdict.
    """
    try:
        rule = _FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown inequality family {family!r}; known: {INEQUALITY_FAMILIES}")
    rows, relation, params = rule(v, degree)
    return InequalityReport(family, relation, params, tuple(rows))


# ---------------------------------------------------------------------------
# symmetric split v = p - q


@dataclass(frozen=True)
class SymmetricSplit:
    """The unique palindromic pair p (length D+1) and q (length D) with v = p - q."""

    p: tuple[int, ...]
    q: tuple[int, ...]
    degree: int

    def __post_init__(self):
        D = self.degree
        if len(self.p) != D + 1 or len(self.q) != D:
            raise ValueError(f"split over degree {D} needs |p|={D + 1}, |q|={D}")
        for j in range(D + 1):
            if self.p[j] != self.p[D - j]:
                raise ValueError(f"p is not palindromic at index {j}: {self.p}")
        for j in range(D):
            if self.q[j] != self.q[D - 1 - j]:
                raise ValueError(f"q is not palindromic at index {j}: {self.q}")

    def difference(self) -> tuple[int, ...]:
        """p - q with q padded by a zero at index D; reconstructs the input."""
        padded_q = self.q + (0,)
        return tuple(a - b for a, b in zip(self.p, padded_q))

    def to_json(self) -> dict:
        return {"p": list(self.p), "q": list(self.q), "degree": self.degree}


def symmetric_split(v: Sequence[int], degree: int) -> SymmetricSplit:
    """Split v (length <= degree+1, zero-padded) into its palindromic parts.

    Positivity of the parts is intentionally not checked here: it is the
    claim under test, audited by callers.
    """
    D = degree
    if len(v) > D + 1:
        raise ValueError(f"vector of length {len(v)} exceeds degree bound {D}")
    w = list(v) + [0] * (D + 1 - len(v))
    suffix = 0  # v_D + ... + v_{D-j}
    prefix = 0  # v_0 + ... + v_{j-1}
    p = []
    for j in range(D + 1):
        suffix += w[D - j]
        p.append(suffix - prefix)
        prefix += w[j]
    q = tuple(p[j] - w[j] for j in range(D))
    split = SymmetricSplit(tuple(p), q, D)
    if split.difference() != tuple(w):
        raise AssertionError("symmetric split failed to reconstruct its input")
    return split


# ---------------------------------------------------------------------------
# a/b and c/a decompositions of lattice-point star vectors


def _poly_mul(u: Sequence[int], w: Sequence[int]) -> list[int]:
    out = [0] * (len(u) + len(w) - 1 or 1)
    for i, a in enumerate(u):
        for j, b in enumerate(w):
            out[i + j] += a * b
    return out


def _trim(u: Sequence[int]) -> tuple[int, ...]:
    u = list(u)
    while u and u[-1] == 0:
        u.pop()
    return tuple(u)


@dataclass(frozen=True)
class ABDecomposition:
    """a (palindromic, length D+1) and b (palindromic, length s) with

    (1 + z + ... + z^(l-1)) h(z) = a(z) + z^l b(z),  l = D+1-s.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    s: int
    codegree: int
    audit: InequalityReport = field(compare=False)

    def to_json(self) -> dict:
        return {
            "a": list(self.a),
            "b": list(self.b),
            "degree": self.s,
            "codegree": self.codegree,
            "audit": self.audit.to_json(),
        }


def ab_decomposition(h: StarVector, *, verify: bool = False) -> ABDecomposition:
    """Split a start=0 lattice-point star vector into its a/b pair.

    a_j = h_0 + ... + h_j - h_D - ... - h_{D-j+1}
    b_j = -h_0 - ... - h_j + h_s + ... + h_{s-j}

    The defining identity is asserted; the chain 1 = a_0 <= a_1 <= a_j is
    returned as an audit (and enforced when ``verify``).
    """
    if h.start != 0:
        raise ValueError("a/b decomposition expects a start=0 star vector")
    v = h.entries
    if all(e == 0 for e in v):
        raise ValueError("a/b decomposition of the zero vector is undefined")
    if v[0] < 1:
        raise ValueError(f"expected constant term >= 1, got {v[0]}")
    if v[0] > 1:
        warnings.warn("a/b decomposition of a summed star vector (constant term > 1)", stacklevel=2)
    D = h.degree_bound
    s = h.degree
    l = D + 1 - s
    a = []
    head = 0
    tail = 0
    for j in range(D + 1):
        head += _entry(v, j)
        if j >= 1:
            tail += _entry(v, D - j + 1)
        a.append(head - tail)
    # b_j = (h_s + ... + h_{s-j}) - (h_0 + ... + h_j)
    b = []
    head = 0
    stail = 0
    for j in range(s):
        head += _entry(v, j)
        stail += _entry(v, s - j)
        b.append(stail - head)
    # identity check: (1 + z + ... + z^(l-1)) h(z) == a(z) + z^l b(z)
    lhs = _trim(_poly_mul([1] * l, list(v)))
    rhs = list(a) + [0] * max(0, l + len(b) - (D + 1))
    for j, bb in enumerate(b):
        rhs[l + j] += bb
    if lhs != _trim(rhs):
        raise AssertionError(f"a/b identity failed: {lhs} != {_trim(rhs)}")
    for j in range(D + 1):
        if a[j] != a[D - j]:
            raise AssertionError(f"a part not palindromic: {a}")
    for j in range(s):
        if b[j] != b[s - 1 - j]:
            raise AssertionError(f"b part not palindromic: {b}")
    audit = chain_report(a, D - 1, "ab_chain_a", normalized=v[0] == 1)
    result = ABDecomposition(tuple(a), tuple(b), s, l, audit)
    if verify:
        require_pass([audit, nonnegativity_report(b, "ab_nonneg_b")])
    return result


@dataclass(frozen=True)
class CADecomposition:
    """c (palindromic, length D+2) and a (palindromic, length D+1) with

    h(z) = c(z) - z a(z);  the interior star vector equals c - a.
    """

    c: tuple[int, ...]
    a: tuple[int, ...]
    audits: tuple[InequalityReport, ...] = field(compare=False)

    def interior_entries(self) -> tuple[int, ...]:
        padded_a = self.a + (0,)
        return tuple(cc - aa for cc, aa in zip(self.c, padded_a))

    def to_json(self) -> dict:
        return {
            "c": list(self.c),
            "a": list(self.a),
            "audits": [r.to_json() for r in self.audits],
        }


def ca_decomposition(
    h: StarVector,
    interior: StarVector | None = None,
    *,
    verify: bool = False,
) -> CADecomposition:
    """Degree-independent c/a split: c_j = a_{j-1} + h_j with c_0 = h_0.

    When ``interior`` (the start=1 star vector of the interior counts) is
    supplied, c - a is checked against it exactly.
    """
    ab = ab_decomposition(h)
    a = ab.a
    v = h.entries
    D = h.degree_bound
    c = [v[0]]
    for j in range(1, D + 2):
        c.append(a[j - 1] + _entry(v, j))
    for j in range(D + 2):
        if c[j] != c[D + 1 - j]:
            raise AssertionError(f"c part not palindromic: {c}")
    # h(z) = c(z) - z a(z)
    recon = [c[0]] + [c[j] - a[j - 1] for j in range(1, D + 2)]
    if _trim(recon) != _trim(v):
        raise AssertionError(f"c/a identity failed: {recon} != {list(v)}")
    audits = (
        chain_report(a, D - 1, "ca_chain_a", normalized=v[0] == 1),
        chain_report(c, D, "ca_chain_c", normalized=v[0] == 1),
    )
    result = CADecomposition(tuple(c), a, audits)
    if interior is not None:
        if interior.start != 1 or result.interior_entries() != interior.entries:
            raise AssertionError(
                f"c - a = {result.interior_entries()} does not match interior vector {interior.entries}"
            )
    if verify:
        require_pass(list(audits))
    return result
