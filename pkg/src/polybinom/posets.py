"""Posets, order polynomials, order-polytope lattice counts, and generation.

The strict order count of a poset P on d elements,

    count(n) = #{maps f: P -> {1..n} with a < b in P  =>  f(a) < f(b)},

is a degree-d polynomial; its star vector has zero constant term and top
entry 1.  The associated 0/1 polytope (points of the unit cube whose
coordinates weakly respect the order) provides two independent oracles for
the same data: direct lattice-point counts and the descent statistic over
linear extensions.

Ground truth throughout is brute-force counting plus exact interpolation;
the descent route is the fast cross-check, with its convention (descents of
the extension word under the lexicographically smallest natural labeling)
frozen after calibration against the lattice-point oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .decompositions import SymmetricSplit, symmetric_split
from .errors import CapExceeded, InputFormatError
from .polynomials import Polynomial, StarVector, binomial_transform, interpolate

__all__ = [
    "ORDER_POLY_ELEMENT_CAP",
    "DESCENT_ELEMENT_CAP",
    "POINT_ENUMERATION_BUDGET",
    "Poset",
    "antichain",
    "chain",
    "ehrhart_polynomial",
    "generate_posets",
    "hstar_via_descents",
    "interior_point_count",
    "interior_star",
    "omega_star",
    "order_polytope_points",
    "order_star_split",
    "parse_poset_file",
    "poset_certificate",
    "strict_order_poly",
]

ORDER_POLY_ELEMENT_CAP = 7
DESCENT_ELEMENT_CAP = 8
POINT_ENUMERATION_BUDGET = 10**8


@dataclass(frozen=True)
class Poset:
    """Finite strict partial order on elements 0..d-1.

    ``above[i]`` is the bitmask of elements strictly greater than i under the
    full (transitively closed) order.
    """

    element_count: int
    above: tuple[int, ...]

    def __post_init__(self):
        d = self.element_count
        if len(self.above) != d:
            raise ValueError("above mask per element required")
        for i, mask in enumerate(self.above):
            if mask >> d:
                raise ValueError(f"relation mask for {i} exceeds element range")
            if (mask >> i) & 1:
                raise ValueError(f"order is not irreflexive at {i}")
            j = mask
            while j:
                b = (j & -j).bit_length() - 1
                if (self.above[b] >> i) & 1:
                    raise ValueError(f"order is not antisymmetric on ({i}, {b})")
                if self.above[b] & ~mask:
                    raise ValueError(f"order is not transitive above ({i}, {b})")
                j &= j - 1

    @classmethod
    def from_relation(cls, d: int, pairs: Sequence[tuple[int, int]]) -> "Poset":
        """Build from arbitrary strict pairs (a < b); closure is computed.

        Rejects cyclic input (which would force a < a).
        """
        above = [0] * d
        for a, b in pairs:
            if not (0 <= a < d and 0 <= b < d):
                raise ValueError(f"pair ({a}, {b}) out of range")
            if a != b:
                above[a] |= 1 << b
        changed = True
        while changed:
            changed = False
            for i in range(d):
                mask = above[i]
                acc = mask
                j = mask
                while j:
                    b = (j & -j).bit_length() - 1
                    acc |= above[b]
                    j &= j - 1
                if acc != mask:
                    above[i] = acc
                    changed = True
        for i in range(d):
            if (above[i] >> i) & 1:
                raise ValueError("relation contains a cycle; not a partial order")
        return cls(d, tuple(above))

    @classmethod
    def from_covers(cls, d: int, covers: Sequence[tuple[int, int]]) -> "Poset":
        return cls.from_relation(d, covers)

    def less(self, a: int, b: int) -> bool:
        return bool((self.above[a] >> b) & 1)

    @cached_property
    def below(self) -> tuple[int, ...]:
        masks = [0] * self.element_count
        for i in range(self.element_count):
            j = self.above[i]
            while j:
                b = (j & -j).bit_length() - 1
                masks[b] |= 1 << i
                j &= j - 1
        return tuple(masks)

    def cover_pairs(self) -> tuple[tuple[int, int], ...]:
        """Transitive reduction: pairs a < b with nothing strictly between."""
        out = []
        for a in range(self.element_count):
            j = self.above[a]
            while j:
                b = (j & -j).bit_length() - 1
                j &= j - 1
                if not (self.above[a] & self.below[b]):
                    out.append((a, b))
        return tuple(sorted(out))

    @property
    def is_antichain(self) -> bool:
        return all(m == 0 for m in self.above)

    def natural_labeling(self) -> tuple[int, ...]:
        """Lexicographically smallest topological order of the elements."""
        d = self.element_count
        placed = 0
        order = []
        remaining = set(range(d))
        while remaining:
            for v in sorted(remaining):
                if self.below[v] & ~placed == 0:
                    order.append(v)
                    placed |= 1 << v
                    remaining.remove(v)
                    break
            else:
                raise AssertionError("no minimal element found; order is cyclic")
        return tuple(order)

    def linear_extensions(self) -> Iterator[tuple[int, ...]]:
        """All topological orders, lexicographically by element sequence."""
        d = self.element_count
        below = self.below
        prefix: list[int] = []

        def extend(placed: int):
            if len(prefix) == d:
                yield tuple(prefix)
                return
            for v in range(d):
                if (placed >> v) & 1:
                    continue
                if below[v] & ~placed == 0:
                    prefix.append(v)
                    yield from extend(placed | (1 << v))
                    prefix.pop()

        yield from extend(0)

    def to_json(self) -> dict:
        return {
            "elements": self.element_count,
            "covers": [list(c) for c in self.cover_pairs()],
        }


def chain(d: int) -> Poset:
    return Poset.from_relation(d, [(i, i + 1) for i in range(d - 1)])


def antichain(d: int) -> Poset:
    return Poset.from_relation(d, [])


# ---------------------------------------------------------------------------
# counting maps


def _count_monotone_maps(p: Poset, low: int, high: int, strict: bool) -> int:
    """Maps f: P -> {low..high} respecting the order (strictly or weakly).

    Backtracks over elements in topological order; predecessors bound each
    value from below, so pruning is exact.
    """
    d = p.element_count
    if d == 0:
        return 1
    if high < low:
        return 0
    span = high - low + 1
    if d * math.log(span + 1) > math.log(POINT_ENUMERATION_BUDGET):
        raise CapExceeded(f"map enumeration budget exceeded: {span}^{d}")
    order = p.natural_labeling()
    pos = {v: i for i, v in enumerate(order)}
    bump = 1 if strict else 0
    preds: list[list[int]] = [[] for _ in range(d)]
    for i, v in enumerate(order):
        mask = p.below[v]
        while mask:
            b = (mask & -mask).bit_length() - 1
            preds[i].append(pos[b])
            mask &= mask - 1
    values = [0] * d

    def count_from(i: int) -> int:
        lo = low
        for q in preds[i]:
            bound = values[q] + bump
            if bound > lo:
                lo = bound
        if lo > high:
            return 0
        if i == d - 1:
            return high - lo + 1
        total = 0
        for val in range(lo, high + 1):
            values[i] = val
            total += count_from(i + 1)
        return total

    return count_from(0)


def strict_order_poly(p: Poset, cap: int = ORDER_POLY_ELEMENT_CAP) -> Polynomial:
    """The polynomial counting strict order-preserving maps into {1..n}.

    Interpolated exactly from brute-force counts at n = 1..d+1; rational
    monomial coefficients are expected (the counts are integer-valued).
    """
    d = p.element_count
    if d > cap:
        raise CapExceeded(f"order polynomial cap is {cap} elements, got {d}")
    if d == 0:
        return Polynomial([1])
    points = [(n, _count_monotone_maps(p, 1, n, strict=True)) for n in range(1, d + 2)]
    return interpolate(points, d, integral=False)


def omega_star(p: Poset, cap: int = ORDER_POLY_ELEMENT_CAP) -> StarVector:
    """Star vector of the strict order count: length d+1, zero constant term.

    The count vanishes at n = 0, so the series starting at n >= 1 and the
    start=0 transform have the same numerator; the start=0 convention keeps
    the vector at its true length d+1 (degree <= d, top entry 1).
    """
    d = p.element_count
    if d == 0:
        raise ValueError("the empty poset has no star vector in this convention")
    poly = strict_order_poly(p, cap)
    if poly(0) != 0:
        raise AssertionError("strict order count must vanish at n = 0")
    return binomial_transform(poly, d, start=0)


def order_star_split(p: Poset, cap: int = ORDER_POLY_ELEMENT_CAP) -> SymmetricSplit:
    """Palindromic split of the order star vector over degree d."""
    v = omega_star(p, cap)
    return symmetric_split(v.entries, p.element_count)


# ---------------------------------------------------------------------------
# order polytope oracles


def order_polytope_points(p: Poset, n: int, interior: bool = False) -> int:
    """Lattice points of the n-th dilate of the order polytope (or its interior).

    Closed: weakly order-preserving maps into {0..n}.  Interior: strictly
    order-preserving maps into {1..n-1}.
    """
    if n < 0:
        raise ValueError("dilation factor must be nonnegative")
    if interior:
        return _count_monotone_maps(p, 1, n - 1, strict=True)
    return _count_monotone_maps(p, 0, n, strict=False)


def interior_point_count(p: Poset, n: int) -> int:
    return order_polytope_points(p, n, interior=True)


def ehrhart_polynomial(p: Poset) -> Polynomial:
    """Lattice-point count of the dilated order polytope, interpolated exactly."""
    d = p.element_count
    points = [(n, order_polytope_points(p, n)) for n in range(d + 1)]
    return interpolate(points, d, integral=False)


def interior_star(p: Poset) -> StarVector:
    """Star vector (start=1) of the interior lattice-point counts."""
    d = p.element_count
    points = [(n, interior_point_count(p, n)) for n in range(1, d + 2)]
    poly = interpolate(points, d, integral=False)
    return binomial_transform(poly, d, start=1)


def hstar_via_descents(p: Poset, cap: int = DESCENT_ELEMENT_CAP) -> StarVector:
    """h* of the order polytope as the descent distribution of extensions.

    Convention (frozen after calibration against the lattice-point oracle):
    write each linear extension as the word of its labels under the
    lexicographically smallest natural labeling and count positions where
    the label drops.  Agreement with the transform of the closed lattice
    counts is asserted.
    """
    d = p.element_count
    if d > cap:
        raise CapExceeded(f"linear-extension enumeration cap is {cap} elements, got {d}")
    if d == 0:
        raise ValueError("the empty poset has no h* vector in this convention")
    label = {}
    for position, v in enumerate(p.natural_labeling()):
        label[v] = position + 1
    counts = [0] * (d + 1)
    for ext in p.linear_extensions():
        word = [label[v] for v in ext]
        descents = sum(1 for i in range(d - 1) if word[i] > word[i + 1])
        counts[descents] += 1
    vector = StarVector(tuple(counts), d, start=0)
    lattice = binomial_transform(ehrhart_polynomial(p), d, start=0)
    if vector != lattice:
        raise AssertionError(
            f"descent statistic {vector.entries} disagrees with lattice h* {lattice.entries}"
        )
    return vector


# ---------------------------------------------------------------------------
# exhaustive generation up to isomorphism


def _upper_triangular_closures(d: int) -> Iterator[tuple[int, ...]]:
    """All transitively closed strict orders compatible with 0 < 1 < ... < d-1.

    Every isomorphism class has at least one such representative (relabel by
    any topological order).
    """
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    npairs = len(pairs)
    for mask in range(1 << npairs):
        above = [0] * d
        for k in range(npairs):
            if (mask >> k) & 1:
                i, j = pairs[k]
                above[i] |= 1 << j
        ok = True
        for i in range(d):
            j = above[i]
            while j:
                b = (j & -j).bit_length() - 1
                if above[b] & ~above[i]:
                    ok = False
                    break
                j &= j - 1
            if not ok:
                break
        if ok:
            yield tuple(above)


def _poset_invariant(d: int, above: Sequence[int], below: Sequence[int]) -> tuple[int, ...]:
    from .graphs import refine_invariants  # shared partition-refinement helper

    init = [(bin(below[v]).count("1"), bin(above[v]).count("1")) for v in range(d)]

    def profile(v: int, inv):
        ups = tuple(sorted(inv[b] for b in _bits(above[v])))
        downs = tuple(sorted(inv[b] for b in _bits(below[v])))
        return (downs, ups)

    return refine_invariants(d, init, profile)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        b = (mask & -mask).bit_length() - 1
        yield b
        mask &= mask - 1


def poset_certificate(p: Poset) -> tuple:
    """Hashable encoding equal exactly for isomorphic posets."""
    from .graphs import invariant_sorting_maps

    d = p.element_count
    if d == 0:
        return (0, 0)
    inv = _poset_invariant(d, p.above, p.below)
    maps = invariant_sorting_maps(inv, None)
    best = None
    for relabel in maps:
        code = 0
        for i in range(d):
            for b in _bits(p.above[i]):
                code |= 1 << (relabel[i] * d + relabel[b])
        if best is None or code < best:
            best = code
    return (d, best)


def generate_posets(d: int) -> list[Poset]:
    """All isomorphism classes of posets on d labeled elements.

    Enumerates naturally labeled representatives (strict upper-triangular
    closed relations) and deduplicates by canonical certificate.  Class
    counts for d = 1..6 are 1, 2, 5, 16, 63, 318, which the test suite pins
    as a generator self-check.
    """
    if d < 0:
        raise ValueError("element count must be nonnegative")
    if d == 0:
        return [Poset(0, ())]
    reps: dict[tuple, Poset] = {}
    for above in _upper_triangular_closures(d):
        p = Poset(d, above)
        cert = poset_certificate(p)
        if cert not in reps:
            reps[cert] = p
    return [reps[c] for c in sorted(reps)]


# ---------------------------------------------------------------------------
# file format: `elements <d>` then `cover <a> <b>` lines; `#` comments


def parse_poset_file(text: str) -> Poset:
    element_count: int | None = None
    covers: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "elements":
            if element_count is not None:
                raise InputFormatError("duplicate 'elements' line", lineno)
            if len(fields) != 2 or not fields[1].isdigit():
                raise InputFormatError("expected 'elements <d>'", lineno)
            element_count = int(fields[1])
        elif fields[0] == "cover":
            if element_count is None:
                raise InputFormatError("'cover' before 'elements'", lineno)
            if len(fields) != 3:
                raise InputFormatError("expected 'cover <a> <b>'", lineno)
            try:
                a, b = int(fields[1]), int(fields[2])
            except ValueError:
                raise InputFormatError("cover endpoints must be integers", lineno)
            if not (0 <= a < element_count and 0 <= b < element_count):
                raise InputFormatError(
                    f"element out of range 0..{element_count - 1}", lineno
                )
            if a == b:
                raise InputFormatError("cover relation must be irreflexive", lineno)
            covers.append((a, b))
        else:
            raise InputFormatError(f"unknown directive {fields[0]!r}", lineno)
    if element_count is None:
        raise InputFormatError("missing 'elements <d>' line")
    try:
        return Poset.from_covers(element_count, covers)
    except ValueError as exc:
        raise InputFormatError(str(exc))


def format_poset_file(p: Poset) -> str:
    lines = [f"elements {p.element_count}"]
    lines += [f"cover {a} {b}" for a, b in p.cover_pairs()]
    return "\n".join(lines) + "\n"
