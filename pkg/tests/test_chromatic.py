import random

import pytest

from polybinom.errors import CapExceeded, NotApplicable
from polybinom.chromatic import (
    EXPECTED_FORMS,
    LinearForm,
    chromatic_analysis,
    chromatic_polynomial,
    chromatic_star,
    match_reference_forms,
    monomial_inequality_forms,
    star_via_order_polynomials,
)
from polybinom.graphs import Multigraph, complete_graph, cycle_graph, path_graph
from polybinom.polynomials import Polynomial


def wheel_graph(rim: int) -> Multigraph:
    spokes = tuple((0, i) for i in range(1, rim + 1))
    rim_edges = tuple((i, i % rim + 1) for i in range(1, rim + 1))
    return Multigraph(rim + 1, spokes + rim_edges)


def random_connected_graph(rng: random.Random, d: int) -> Multigraph:
    while True:
        edges = tuple(
            (u, v) for u in range(d) for v in range(u + 1, d) if rng.random() < 0.5
        )
        g = Multigraph(d, edges)
        if g.is_connected:
            return g


class TestChromaticPolynomial:
    def test_small_fixtures(self):
        assert chromatic_polynomial(complete_graph(3)) == Polynomial([0, 2, -3, 1])
        assert chromatic_polynomial(path_graph(3)) == Polynomial([0, 1, -2, 1])
        assert chromatic_polynomial(Multigraph(1, ((0, 0),))).is_zero

    def test_known_closed_forms(self):
        # complete graphs are falling factorials; cycles are (n-1)^d + (-1)^d (n-1)
        k5 = chromatic_polynomial(complete_graph(5))
        assert [k5(n) for n in range(6)] == [0, 0, 0, 0, 0, 120]
        c5 = chromatic_polynomial(cycle_graph(5))
        for n in range(1, 7):
            assert c5(n) == (n - 1) ** 5 - (n - 1)

    def test_disconnected_multiplies(self):
        g = Multigraph(5, ((0, 1), (1, 2), (0, 2), (3, 4)))
        expected = chromatic_polynomial(complete_graph(3)) * chromatic_polynomial(path_graph(2))
        assert chromatic_polynomial(g) == expected

    def test_parallel_collapse_is_sound(self):
        rng = random.Random(7)
        for _ in range(10):
            d = rng.randint(2, 5)
            base = random_connected_graph(rng, d)
            doubled = Multigraph(d, base.edges + base.edges[:1] * rng.randint(1, 3))
            assert chromatic_polynomial(doubled) == chromatic_polynomial(base)

    def test_cap(self):
        with pytest.raises(CapExceeded):
            chromatic_polynomial(Multigraph(11, ()))


class TestChromaticStar:
    def test_fixtures(self):
        assert chromatic_star(complete_graph(3)).entries == (0, 0, 0, 6)
        assert chromatic_star(path_graph(3)).entries == (0, 0, 2, 4)
        assert chromatic_star(Multigraph(1, ())).entries == (0, 1)

    def test_analysis_splits(self):
        r = chromatic_analysis(path_graph(3))
        assert r.split.p == (4, 6, 6, 4)
        assert r.split.q == (4, 6, 4)
        assert r.acyclic_count == 4
        assert r.constants_match_oracle
        r = chromatic_analysis(path_graph(2))
        assert r.chi_star.entries == (0, 0, 2)
        assert r.split.p == (2, 2, 2)
        assert r.split.q == (2, 2)

    def test_loop_not_applicable(self):
        with pytest.raises(NotApplicable) as err:
            chromatic_analysis(Multigraph(2, ((0, 1), (1, 1))))
        assert err.value.reason == "loop"

    def test_single_vertex(self):
        r = chromatic_analysis(Multigraph(1, ()))
        assert r.split.p == (1, 1)
        assert r.split.q == (1,)
        assert r.acyclic_count == 1

    def test_multigraph_matches_simplification(self):
        # loopless multigraphs carry the same chi and orientation data as
        # their simplifications (parallel edges must co-orient)
        rng = random.Random(3)
        for _ in range(8):
            base = random_connected_graph(rng, rng.randint(2, 5))
            if not base.edges:
                continue
            multi = Multigraph(base.vertex_count, base.edges + base.edges[:2])
            rm, rs = chromatic_analysis(multi), chromatic_analysis(base.simplify())
            assert rm.chi == rs.chi
            assert rm.chi_star == rs.chi_star
            assert rm.acyclic_count == rs.acyclic_count
            assert rm.split == rs.split


class TestAcyclicReciprocity:
    def test_count_matches_signed_evaluation(self):
        # |acyclic orientations| = (-1)^d chi(-1), against the enumeration oracle
        from polybinom.graphs import enumerate_acyclic_orientations

        rng = random.Random(17)
        graphs = [complete_graph(4), cycle_graph(5), path_graph(4), Multigraph(4, ())]
        graphs += [random_connected_graph(rng, rng.randint(2, 5)) for _ in range(8)]
        for g in graphs:
            d = g.vertex_count
            chi = chromatic_polynomial(g)
            assert (-1) ** d * chi(-1) == len(enumerate_acyclic_orientations(g))


class TestOrderPolynomialRoute:
    def test_fixtures(self):
        assert star_via_order_polynomials(complete_graph(3)).entries == (0, 0, 0, 6)
        assert star_via_order_polynomials(path_graph(3)).entries == (0, 0, 2, 4)
        assert star_via_order_polynomials(Multigraph(2, ())).entries == (0, 1, 1)

    def test_matches_chi_star_on_random_graphs(self):
        rng = random.Random(11)
        for _ in range(6):
            g = random_connected_graph(rng, rng.randint(2, 5))
            assert star_via_order_polynomials(g) == chromatic_star(g)


class TestSampledDegreeSevenFamily:
    # the inequality audits hold on the larger sampled family as well
    @pytest.mark.parametrize(
        "g",
        [complete_graph(7), cycle_graph(7), wheel_graph(6)],
        ids=["K7", "C7", "W7"],
    )
    def test_named_graphs(self, g):
        chromatic_analysis(g, verify=True)

    def test_random_graphs(self):
        rng = random.Random(2024)
        for _ in range(12):
            chromatic_analysis(random_connected_graph(rng, 7), verify=True)


class TestMonomialForms:
    def test_degree_five(self):
        forms = monomial_inequality_forms(5)
        assert [j for j, _ in forms] == [2]
        assert forms[0][1] == LinearForm(20, (5, 1, -4, -5))

    def test_degree_six_rows_coincide(self):
        forms = monomial_inequality_forms(6)
        assert [j for j, _ in forms] == [2, 3]
        assert forms[0][1] == forms[1][1] == LinearForm(245, (-5, 5, 7, -19, -65))

    def test_degree_seven(self):
        forms = dict(monomial_inequality_forms(7))
        assert forms[2] == LinearForm(1071, (21, -1, -9, 11, -9, -301))
        assert forms[3] == LinearForm(1148, (-7, -3, 8, 15, -52, -273))

    def test_normalization_divides_gcd(self):
        assert LinearForm(40, (10, 2, -8, -10)).normalized() == LinearForm(20, (5, 1, -4, -5))

    def test_formatting(self):
        assert LinearForm(20, (5, 1, -4, -5)).format() == "5c_1 + c_2 - 4c_3 - 5c_4 + 20 >= 0"

    def test_out_of_range_degree(self):
        with pytest.raises(ValueError):
            monomial_inequality_forms(4)

    def test_reference_match_report(self):
        report = match_reference_forms()
        assert report["all_matched"]
        assert set(report["degrees"]) == set(EXPECTED_FORMS)

    def test_forms_hold_on_actual_chromatic_polynomials(self):
        # every derived form evaluates nonnegatively on real chromatic data
        rng = random.Random(5)
        for d in (5, 6, 7):
            graphs = [complete_graph(d), cycle_graph(d)] + [
                random_connected_graph(rng, d) for _ in range(5)
            ]
            for g in graphs:
                chi = chromatic_polynomial(g)
                coeffs = list(chi.int_coeffs()) + [0] * (d + 1 - len(chi.coeffs))
                assert coeffs[d] == 1 and coeffs[0] == 0
                for _, form in monomial_inequality_forms(d):
                    value = form.constant + sum(
                        form.coefficients[t - 1] * coeffs[t] for t in range(1, d)
                    )
                    assert value >= 0
