import pytest

from polybinom.errors import CapExceeded, InputFormatError
from polybinom.graphs import (
    Multigraph,
    Orientation,
    complete_graph,
    contract_edge,
    cycle_graph,
    cyclomatic_number,
    delete_edge,
    dipole,
    enumerate_acyclic_orientations,
    enumerate_totally_cyclic_orientations,
    format_graph_file,
    graph_certificate,
    in_degree_sequence_count,
    orientation_to_poset,
    parse_graph_file,
    path_graph,
)
from polybinom.posets import chain


class TestStructure:
    def test_cyclomatic_numbers(self):
        assert cyclomatic_number(dipole(2)) == 1
        assert cyclomatic_number(Multigraph(4, ())) == 0
        assert cyclomatic_number(dipole(3)) == 2
        assert cyclomatic_number(complete_graph(4)) == 3

    def test_endpoint_validation(self):
        with pytest.raises(ValueError):
            Multigraph(2, ((0, 2),))

    def test_components_and_bridges(self):
        g = Multigraph(4, ((0, 1), (2, 3)))
        assert g.component_count == 2
        assert not g.is_connected
        assert set(g.bridges()) == {0, 1}
        assert cycle_graph(4).is_bridgeless
        loops_only = Multigraph(2, ((0, 0),))
        assert loops_only.component_count == 2  # the loop does not join 0 and 1
        assert loops_only.is_bridgeless

    def test_simplify_keeps_order(self):
        g = Multigraph(3, ((1, 2), (0, 1), (2, 1), (0, 0), (0, 0)))
        assert g.simplify().edges == ((1, 2), (0, 1), (0, 0))


class TestDeleteContract:
    def test_triangle_contraction(self):
        g = contract_edge(complete_graph(3), 0)
        assert g.vertex_count == 2
        assert g.edges == ((0, 1), (0, 1))

    def test_path_contraction(self):
        g = contract_edge(path_graph(3), 0)
        assert g.vertex_count == 2
        assert g.edges == ((0, 1),)

    def test_parallel_becomes_loop(self):
        g = contract_edge(dipole(2), 0)
        assert g.vertex_count == 1
        assert g.edges == ((0, 0),)

    def test_loop_contraction_rejected(self):
        with pytest.raises(ValueError):
            contract_edge(Multigraph(1, ((0, 0),)), 0)

    def test_deletion(self):
        assert delete_edge(complete_graph(3), 1).edges == ((0, 1), (1, 2))
        assert delete_edge(dipole(2), 0).edges == ((0, 1),)
        assert delete_edge(Multigraph(1, ((0, 0),)), 0).edges == ()

    def test_collapse_into_min_label_shifts_down(self):
        g = Multigraph(4, ((1, 3), (0, 3), (2, 3)))
        out = contract_edge(g, 0)  # identify 3 into 1, shift 3+ down
        assert out.vertex_count == 3
        assert out.edges == ((0, 1), (2, 1))


class TestOrientations:
    def test_acyclic_counts(self):
        assert len(enumerate_acyclic_orientations(complete_graph(3))) == 6
        assert len(enumerate_acyclic_orientations(path_graph(3))) == 4
        assert enumerate_acyclic_orientations(Multigraph(1, ((0, 0),))) == []

    def test_parallel_edges_must_codirect(self):
        acyclic = enumerate_acyclic_orientations(dipole(2))
        assert len(acyclic) == 2
        for o in acyclic:
            assert o.direction[0] == o.direction[1]

    def test_totally_cyclic_counts(self):
        assert len(enumerate_totally_cyclic_orientations(dipole(2))) == 2
        assert len(enumerate_totally_cyclic_orientations(dipole(3))) == 6
        assert enumerate_totally_cyclic_orientations(path_graph(4)) == []

    def test_loop_is_coherent_cycle(self):
        g = Multigraph(1, ((0, 0),))
        assert len(enumerate_totally_cyclic_orientations(g)) == 2

    def test_indegree_sequences(self):
        assert in_degree_sequence_count(enumerate_totally_cyclic_orientations(dipole(2))) == 1
        assert in_degree_sequence_count(enumerate_totally_cyclic_orientations(dipole(3))) == 2
        assert in_degree_sequence_count([]) == 0

    def test_indegree_rejects_mixed_graphs(self):
        a = Orientation(dipole(2), (0, 0))
        b = Orientation(path_graph(2), (0,))
        with pytest.raises(ValueError):
            in_degree_sequence_count([a, b])

    def test_cap(self):
        with pytest.raises(CapExceeded):
            enumerate_acyclic_orientations(Multigraph(2, tuple((0, 1) for _ in range(25))))


def _edge_on_coherent_cycle(o: Orientation, e: int) -> bool:
    # direct characterization: a simple directed path head -> tail closes a
    # coherent cycle through e (such a path can never reuse e itself)
    tail, head = o.arc(e)
    if tail == head:
        return True
    adj = [[] for _ in range(o.graph.vertex_count)]
    for i in range(o.graph.edge_count):
        t, h = o.arc(i)
        if t != h:
            adj[t].append(h)
    seen = {head}
    stack = [head]
    while stack:
        v = stack.pop()
        if v == tail:
            return True
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


class TestTotallyCyclicEquivalence:
    @pytest.mark.parametrize(
        "g",
        [
            dipole(2),
            dipole(3),
            complete_graph(3),
            complete_graph(4),
            cycle_graph(5),
            path_graph(4),
            Multigraph(4, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 0), (1, 3))),
            Multigraph(3, ((0, 1), (0, 1), (1, 2), (1, 2))),
            Multigraph(5, ((0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2))),
        ],
    )
    def test_strong_components_match_edge_cycles(self, g):
        # both characterizations agree on every one of the 2^m orientations
        m = g.edge_count
        strong = {o.direction for o in enumerate_totally_cyclic_orientations(g)}
        for mask in range(1 << m):
            o = Orientation(g, tuple((mask >> e) & 1 for e in range(m)))
            by_cycles = all(_edge_on_coherent_cycle(o, e) for e in range(m))
            assert by_cycles == (o.direction in strong)


class TestOrientationToPoset:
    def test_directed_path_is_chain(self):
        o = Orientation(path_graph(3), (0, 0))
        assert orientation_to_poset(o).above == chain(3).above

    def test_transitive_closure(self):
        o = Orientation(complete_graph(3), (0, 0, 0))  # 0->1, 0->2, 1->2
        p = orientation_to_poset(o)
        assert p.less(0, 2) and p.less(0, 1) and p.less(1, 2)

    def test_edgeless_gives_antichain(self):
        o = Orientation(Multigraph(3, ()), ())
        assert orientation_to_poset(o).is_antichain

    def test_cyclic_rejected(self):
        o = Orientation(complete_graph(3), (0, 1, 0))  # 0->1->2->0
        with pytest.raises(ValueError):
            orientation_to_poset(o)


class TestCertificates:
    def test_isomorphic_relabelings_share_certificate(self):
        g1 = Multigraph(4, ((0, 1), (1, 2), (2, 3)))
        g2 = Multigraph(4, ((3, 2), (2, 1), (0, 1)))
        assert graph_certificate(g1) == graph_certificate(g2)

    def test_distinct_graphs_differ(self):
        assert graph_certificate(path_graph(4)) != graph_certificate(cycle_graph(4))
        assert graph_certificate(dipole(2)) != graph_certificate(path_graph(2))


class TestFileFormat:
    def test_round_trip_is_deterministic(self):
        text = "vertices 3\n# a comment\nedge 0 1\nedge 1 2\nedge 0 0\n"
        g1 = parse_graph_file(text)
        g2 = parse_graph_file(text)
        assert g1 == g2
        assert g1.edges == ((0, 1), (1, 2), (0, 0))
        assert parse_graph_file(format_graph_file(g1)) == g1

    def test_errors_carry_line_numbers(self):
        with pytest.raises(InputFormatError) as err:
            parse_graph_file("vertices 2\nedge 0 5\n")
        assert err.value.line == 2
        with pytest.raises(InputFormatError):
            parse_graph_file("edge 0 1\n")
        with pytest.raises(InputFormatError) as err:
            parse_graph_file("vertices 2\nfrobnicate\n")
        assert err.value.line == 2
