"""Multigraphs, structural queries, and exhaustive orientation enumeration.

Graphs are immutable: a vertex count plus an ordered tuple of endpoint
pairs.  Pairs are unordered as edges but their stored order is meaningful
as the reference orientation for flow computations (tail = first, head =
second), so it is preserved verbatim from input.

Orientation enumeration over all 2^m direction vectors is the oracle of
record for the theorem checks; it is capped at m <= 24 edges.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

from .errors import CapExceeded, InputFormatError

__all__ = [
    "Multigraph",
    "Orientation",
    "ORIENTATION_EDGE_CAP",
    "complete_graph",
    "contract_edge",
    "cycle_graph",
    "cyclomatic_number",
    "delete_edge",
    "dipole",
    "enumerate_acyclic_orientations",
    "enumerate_totally_cyclic_orientations",
    "format_graph_file",
    "graph_certificate",
    "in_degree_sequence_count",
    "orientation_to_poset",
    "parse_graph_file",
    "path_graph",
]

ORIENTATION_EDGE_CAP = 24


@dataclass(frozen=True)
class Multigraph:
    """Labeled multigraph; loops (u == u) and parallel edges allowed."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.vertex_count} vertices")
        object.__setattr__(self, "edges", edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def loops(self) -> tuple[int, ...]:
        return tuple(i for i, (u, v) in enumerate(self.edges) if u == v)

    def simplify(self) -> "Multigraph":
        """Collapse parallel edges, keeping the first copy of each class.

        Loops collapse to a single loop per vertex; edge order is preserved.
        """
        seen: set[frozenset] = set()
        kept = []
        for u, v in self.edges:
            key = frozenset((u, v))
            if key in seen:
                continue
            seen.add(key)
            kept.append((u, v))
        return Multigraph(self.vertex_count, tuple(kept))

    def component_ids(self) -> list[int]:
        """Component index per vertex; loops attach to their own vertex."""
        parent = list(range(self.vertex_count))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
        roots: dict[int, int] = {}
        out = []
        for v in range(self.vertex_count):
            r = find(v)
            out.append(roots.setdefault(r, len(roots)))
        return out

    @property
    def component_count(self) -> int:
        ids = self.component_ids()
        return max(ids) + 1 if ids else 0

    @property
    def is_connected(self) -> bool:
        return self.component_count <= 1

    def bridges(self) -> tuple[int, ...]:
        """Edge indices whose deletion increases the component count."""
        base = self.component_count
        out = []
        for i, (u, v) in enumerate(self.edges):
            if u == v:
                continue
            if delete_edge(self, i).component_count > base:
                out.append(i)
        return tuple(out)

    @property
    def is_bridgeless(self) -> bool:
        return not self.bridges()

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}


def complete_graph(d: int) -> Multigraph:
    return Multigraph(d, tuple((u, v) for u in range(d) for v in range(u + 1, d)))


def path_graph(d: int) -> Multigraph:
    return Multigraph(d, tuple((i, i + 1) for i in range(d - 1)))


def cycle_graph(d: int) -> Multigraph:
    return Multigraph(d, tuple((i, (i + 1) % d) for i in range(d)))


def dipole(k: int) -> Multigraph:
    """Two vertices joined by k parallel edges."""
    return Multigraph(2, tuple((0, 1) for _ in range(k)))


def cyclomatic_number(g: Multigraph) -> int:
    """|E| - |V| + number of components: the cycle-space dimension."""
    return g.edge_count - g.vertex_count + g.component_count


def delete_edge(g: Multigraph, e: int) -> Multigraph:
    if not 0 <= e < g.edge_count:
        raise IndexError(f"edge index {e} out of range")
    return Multigraph(g.vertex_count, g.edges[:e] + g.edges[e + 1 :])


def contract_edge(g: Multigraph, e: int) -> Multigraph:
    """Identify the endpoints of edge e into the smaller label.

    The larger endpoint label disappears; labels above it shift down by one.
    Parallel copies of e become loops and are kept, as the multigraph
    deletion-contraction recursion requires.
    """
    if not 0 <= e < g.edge_count:
        raise IndexError(f"edge index {e} out of range")
    u, v = g.edges[e]
    if u == v:
        raise ValueError(f"cannot contract loop {e} at vertex {u}")
    lo, hi = min(u, v), max(u, v)

    def relabel(w: int) -> int:
        if w == hi:
            return lo
        return w - 1 if w > hi else w

    new_edges = tuple(
        (relabel(a), relabel(b)) for i, (a, b) in enumerate(g.edges) if i != e
    )
    return Multigraph(g.vertex_count - 1, new_edges)


# ---------------------------------------------------------------------------
# orientations


@dataclass(frozen=True)
class Orientation:
    """Direction bit per edge: 0 keeps the stored (tail, head), 1 reverses it."""

    graph: Multigraph
    direction: tuple[int, ...]

    def __post_init__(self):
        if len(self.direction) != self.graph.edge_count:
            raise ValueError("direction vector length must equal the edge count")

    def arc(self, e: int) -> tuple[int, int]:
        u, v = self.graph.edges[e]
        return (u, v) if self.direction[e] == 0 else (v, u)

    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple(self.arc(e) for e in range(self.graph.edge_count))

    def in_degrees(self) -> tuple[int, ...]:
        deg = [0] * self.graph.vertex_count
        for e in range(self.graph.edge_count):
            deg[self.arc(e)[1]] += 1
        return tuple(deg)


def _check_orientation_cap(g: Multigraph) -> None:
    if g.edge_count > ORIENTATION_EDGE_CAP:
        raise CapExceeded(
            f"orientation enumeration needs 2^{g.edge_count} candidates; "
            f"cap is m <= {ORIENTATION_EDGE_CAP}"
        )


def _all_orientations(g: Multigraph) -> Iterator[Orientation]:
    m = g.edge_count
    for mask in range(1 << m):
        yield Orientation(g, tuple((mask >> e) & 1 for e in range(m)))


def _is_acyclic(d: int, arcs: Sequence[tuple[int, int]]) -> bool:
    indeg = [0] * d
    out: list[list[int]] = [[] for _ in range(d)]
    for t, h in arcs:
        out[t].append(h)
        indeg[h] += 1
    queue = deque(v for v in range(d) if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == d


def enumerate_acyclic_orientations(g: Multigraph) -> list[Orientation]:
    """All orientations with no coherently oriented cycle, in bitmask order.

    A loop is itself a directed cycle, so a graph with loops has none.
    Antiparallel twins form a 2-cycle, so parallel edges must agree in
    direction; the generic cycle check enforces that.
    """
    if g.has_loops:
        return []
    _check_orientation_cap(g)
    return [o for o in _all_orientations(g) if _is_acyclic(g.vertex_count, o.arcs())]


def _strongly_connected_components_ok(g: Multigraph, o: Orientation) -> bool:
    # Totally cyclic (every edge on a coherently oriented cycle) is equivalent
    # to every connected component being strongly connected: a strongly
    # connected component closes a cycle through each of its arcs, and an arc
    # on a coherent cycle forces mutual reachability along it.
    comp = g.component_ids()
    d = g.vertex_count
    out: list[list[int]] = [[] for _ in range(d)]
    back: list[list[int]] = [[] for _ in range(d)]
    for t, h in o.arcs():
        out[t].append(h)
        back[h].append(t)
    groups: dict[int, list[int]] = {}
    for v in range(d):
        groups.setdefault(comp[v], []).append(v)

    def reaches_all(start: int, adj: list[list[int]], members: set[int]) -> bool:
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return members <= seen

    for members in groups.values():
        if len(members) == 1:
            continue
        mset = set(members)
        root = members[0]
        if not reaches_all(root, out, mset) or not reaches_all(root, back, mset):
            return False
    return True


def enumerate_totally_cyclic_orientations(g: Multigraph) -> list[Orientation]:
    """All orientations whose components are strongly connected, bitmask order.

    Loops are coherently cyclic in either direction, and both directions are
    counted as distinct orientations.
    """
    _check_orientation_cap(g)
    return [o for o in _all_orientations(g) if _strongly_connected_components_ok(g, o)]


def in_degree_sequence_count(orientations: Sequence[Orientation]) -> int:
    """Number of distinct vertex-indexed in-degree vectors."""
    if not orientations:
        return 0
    g = orientations[0].graph
    for o in orientations:
        if o.graph != g:
            raise ValueError("orientations must all be over the same graph")
    return len({o.in_degrees() for o in orientations})


def orientation_to_poset(o: Orientation):
    """The poset on the vertices whose order is reachability along the arcs."""
    from .posets import Poset  # local import keeps posets free of graph deps

    d = o.graph.vertex_count
    if not _is_acyclic(d, o.arcs()):
        raise ValueError("orientation has a directed cycle; no poset order exists")
    return Poset.from_relation(d, o.arcs())


# ---------------------------------------------------------------------------
# canonical certificates (isomorphism dedup and memo keys)


def _normalize_invariants(values: Sequence) -> tuple[int, ...]:
    ranks = {v: i for i, v in enumerate(sorted(set(values)))}
    return tuple(ranks[v] for v in values)


def refine_invariants(n: int, initial: Sequence, profile) -> tuple[int, ...]:
    """Iterated 1-neighborhood refinement of a vertex invariant."""
    inv = _normalize_invariants(initial)
    while True:
        nxt = _normalize_invariants([(inv[v], profile(v, inv)) for v in range(n)])
        if nxt == inv:
            return inv
        inv = nxt


def invariant_sorting_maps(inv: tuple[int, ...], cap: int | None) -> list[tuple[int, ...]] | None:
    """All relabelings v -> slot that sort vertices by invariant.

    Returns None when the count would exceed ``cap``; callers then fall back
    to a single deterministic relabeling (still a valid, just possibly
    non-canonical, encoding).
    """
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(inv):
        classes.setdefault(c, []).append(v)
    total = 1
    for _, vs in sorted(classes.items()):
        total *= math.factorial(len(vs))
        if cap is not None and total > cap:
            return None
    slot_base: dict[int, int] = {}
    base = 0
    for c in sorted(classes):
        slot_base[c] = base
        base += len(classes[c])
    maps = []
    ordered_classes = [classes[c] for c in sorted(classes)]
    for arrangement in product(*(permutations(vs) for vs in ordered_classes)):
        relabel = [0] * len(inv)
        for c, members in zip(sorted(classes), arrangement):
            for offset, v in enumerate(members):
                relabel[v] = slot_base[c] + offset
        maps.append(tuple(relabel))
    return maps


def _graph_invariant(g: Multigraph) -> tuple[int, ...]:
    n = g.vertex_count
    deg = [0] * n
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
        if u != v:
            adj[u].append(v)
            adj[v].append(u)

    def profile(v: int, inv: tuple[int, ...]):
        return tuple(sorted(inv[w] for w in adj[v]))

    return refine_invariants(n, deg, profile)


def _encode_edges(g: Multigraph, relabel: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return tuple(
        sorted(tuple(sorted((relabel[u], relabel[v]))) for u, v in g.edges)
    )


def graph_certificate(g: Multigraph, *, perm_cap: int | None = None) -> tuple:
    """Hashable encoding equal for isomorphic graphs (given enough perms).

    The certificate is the minimum, over all invariant-sorting relabelings,
    of the sorted edge multiset.  Equal certificates always imply isomorphic
    graphs; with ``perm_cap`` set, very symmetric graphs may fall back to a
    single relabeling, which only reduces key sharing, never correctness.
    """
    inv = _graph_invariant(g)
    maps = invariant_sorting_maps(inv, perm_cap)
    if maps is None:
        order = sorted(range(g.vertex_count), key=lambda v: (inv[v], v))
        relabel = [0] * g.vertex_count
        for slot, v in enumerate(order):
            relabel[v] = slot
        return (g.vertex_count, _encode_edges(g, relabel))
    best = min(_encode_edges(g, relabel) for relabel in maps)
    return (g.vertex_count, best)


# ---------------------------------------------------------------------------
# file format: `vertices <n>` then `edge <u> <v>` lines; `#` comments


def parse_graph_file(text: str) -> Multigraph:
    vertex_count: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "vertices":
            if vertex_count is not None:
                raise InputFormatError("duplicate 'vertices' line", lineno)
            if len(fields) != 2 or not fields[1].isdigit():
                raise InputFormatError("expected 'vertices <n>'", lineno)
            vertex_count = int(fields[1])
        elif fields[0] == "edge":
            if vertex_count is None:
                raise InputFormatError("'edge' before 'vertices'", lineno)
            if len(fields) != 3:
                raise InputFormatError("expected 'edge <u> <v>'", lineno)
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise InputFormatError("edge endpoints must be integers", lineno)
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InputFormatError(
                    f"endpoint out of range 0..{vertex_count - 1}", lineno
                )
            edges.append((u, v))
        else:
            raise InputFormatError(f"unknown directive {fields[0]!r}", lineno)
    if vertex_count is None:
        raise InputFormatError("missing 'vertices <n>' line")
    return Multigraph(vertex_count, tuple(edges))


def format_graph_file(g: Multigraph) -> str:
    lines = [f"vertices {g.vertex_count}"]
    lines += [f"edge {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
