import pytest

from polybinom.errors import CapExceeded, InputFormatError
from polybinom.polynomials import Polynomial, binomial_transform
from polybinom.posets import (
    Poset,
    antichain,
    chain,
    ehrhart_polynomial,
    format_poset_file,
    generate_posets,
    hstar_via_descents,
    interior_point_count,
    interior_star,
    omega_star,
    order_polytope_points,
    order_star_split,
    parse_poset_file,
    poset_certificate,
    strict_order_poly,
)

V_POSET = Poset.from_relation(3, [(0, 1), (0, 2)])


class TestPosetConstruction:
    def test_closure_is_computed(self):
        p = Poset.from_relation(3, [(0, 1), (1, 2)])
        assert p.less(0, 2)
        assert p.cover_pairs() == ((0, 1), (1, 2))

    def test_cycles_rejected(self):
        with pytest.raises(ValueError):
            Poset.from_relation(3, [(0, 1), (1, 2), (2, 0)])

    def test_redundant_cover_accepted(self):
        p = Poset.from_relation(3, [(0, 1), (1, 2), (0, 2)])
        assert p.cover_pairs() == ((0, 1), (1, 2))

    def test_natural_labeling_is_lex_smallest(self):
        p = Poset.from_relation(4, [(2, 0), (3, 1)])
        assert p.natural_labeling() == (2, 0, 3, 1)

    def test_linear_extension_count(self):
        assert len(list(chain(4).linear_extensions())) == 1
        assert len(list(antichain(4).linear_extensions())) == 24
        assert len(list(V_POSET.linear_extensions())) == 2


class TestOrderPolynomial:
    def test_chain_counts_subsets(self):
        from fractions import Fraction

        poly = strict_order_poly(chain(3))
        assert poly == Polynomial([0, Fraction(1, 3), Fraction(-1, 2), Fraction(1, 6)])
        assert [poly(n) for n in range(1, 5)] == [0, 0, 1, 4]

    def test_antichain_unconstrained(self):
        assert strict_order_poly(antichain(2)) == Polynomial([0, 0, 1])

    def test_single_element(self):
        assert strict_order_poly(chain(1)) == Polynomial([0, 1])

    def test_cap(self):
        with pytest.raises(CapExceeded):
            strict_order_poly(antichain(8))

    def test_omega_star_values(self):
        assert omega_star(chain(3)).entries == (0, 0, 0, 1)
        assert omega_star(antichain(2)).entries == (0, 1, 1)
        assert omega_star(antichain(4)).entries == (0, 1, 11, 11, 1)

    def test_split_examples(self):
        s = order_star_split(chain(3))
        assert (s.p, s.q) == ((1, 1, 1, 1), (1, 1, 1))
        s = order_star_split(antichain(2))
        assert (s.p, s.q) == ((1, 2, 1), (1, 1))
        s = order_star_split(chain(1))
        assert (s.p, s.q) == ((1, 1), (1,))


class TestOrderPolytope:
    def test_closed_chain_multisets(self):
        assert order_polytope_points(chain(3), 3) == 20

    def test_no_interior_point_in_first_dilate(self):
        for p in (chain(3), antichain(3), V_POSET):
            assert order_polytope_points(p, 1, interior=True) == 0

    def test_antichain_interior(self):
        assert order_polytope_points(antichain(2), 2, interior=True) == 1

    def test_strict_count_is_shifted_interior(self):
        for p in (chain(3), antichain(3), V_POSET):
            poly = strict_order_poly(p)
            for n in range(1, p.element_count + 3):
                assert poly(n) == interior_point_count(p, n + 1)

    def test_reciprocity(self):
        for p in (chain(4), antichain(3), V_POSET):
            d = p.element_count
            ehr = ehrhart_polynomial(p)
            for n in range(1, d + 3):
                assert (-1) ** d * ehr(-n) == interior_point_count(p, n)

    def test_hstar_via_descents_examples(self):
        assert hstar_via_descents(chain(3)).entries == (1, 0, 0, 0)
        assert hstar_via_descents(antichain(2)).entries == (1, 1, 0)
        assert hstar_via_descents(antichain(3)).entries == (1, 4, 1, 0)

    def test_interior_relations(self):
        for p in (chain(3), antichain(3), V_POSET, Poset.from_relation(4, [(0, 2), (1, 2), (2, 3)])):
            d = p.element_count
            hstar = binomial_transform(ehrhart_polynomial(p), d, start=0)
            inner = interior_star(p)
            assert hstar.interior_reversal() == inner
            assert inner.entries[1:] == omega_star(p).entries


class TestGeneratedFamilies:
    def test_class_counts_match_reference(self):
        assert [len(generate_posets(d)) for d in range(1, 6)] == [1, 2, 5, 16, 63]

    def test_class_count_d6(self):
        assert len(generate_posets(6)) == 318

    def test_certificates_separate_classes(self):
        posets = generate_posets(4)
        certs = {poset_certificate(p) for p in posets}
        assert len(certs) == len(posets)

    def test_certificate_is_relabeling_invariant(self):
        p = Poset.from_relation(4, [(0, 1), (1, 3), (2, 3)])
        q = Poset.from_relation(4, [(3, 2), (2, 0), (1, 0)])
        assert poset_certificate(p) == poset_certificate(q)

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_top_entry_is_always_one(self, d):
        for p in generate_posets(d):
            assert omega_star(p).entries[d] == 1

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_first_entry_zero_unless_antichain(self, d):
        for p in generate_posets(d):
            if not p.is_antichain:
                assert omega_star(p).entries[1] == 0


class TestExhaustiveSplitsD6:
    def test_order_splits_hold_for_all_318_classes(self):
        from polybinom.decompositions import (
            chain_report,
            check_partial_sum_inequalities,
            nonnegativity_report,
        )

        posets = generate_posets(6)
        assert len(posets) == 318
        for p in posets:
            d = p.element_count
            star = omega_star(p)
            split = order_star_split(p)
            assert split.difference() == star.entries
            assert star.entries[d] == 1
            assert split.p[0] == 1 and split.q[0] == 1
            assert chain_report(split.p, d - 1, "a").verdict == "pass"
            assert chain_report(split.q, d - 2, "b").verdict == "pass"
            assert nonnegativity_report(split.p, "a", minimum=1).verdict == "pass"
            assert nonnegativity_report(split.q, "b", minimum=1).verdict == "pass"
            assert check_partial_sum_inequalities(
                star.entries, d, "order_tail_sums"
            ).verdict in ("pass", "vacuous")
            assert check_partial_sum_inequalities(
                star.entries, d, "binomial_coefficient_bound"
            ).verdict == "pass"


class TestPosetFile:
    def test_round_trip(self):
        text = "elements 3\ncover 0 1\ncover 1 2\n"
        p = parse_poset_file(text)
        assert p.above == chain(3).above
        assert parse_poset_file(format_poset_file(p)).above == p.above

    def test_rejects_non_poset(self):
        with pytest.raises(InputFormatError):
            parse_poset_file("elements 2\ncover 0 1\ncover 1 0\n")
        with pytest.raises(InputFormatError) as err:
            parse_poset_file("elements 2\ncover 0 0\n")
        assert err.value.line == 2
        with pytest.raises(InputFormatError):
            parse_poset_file("cover 0 1\n")
