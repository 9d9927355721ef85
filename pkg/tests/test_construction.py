import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from poset_operads.construction import (
    associative_by_oracle,
    associative_elements_check,
    check_functoriality,
    count_normal_forms,
    dimension,
    expected_relation_dimension,
    hilbert_coeffs,
    induced_morphism,
    is_basic,
    relations_closure,
    normal_forms,
    orientation,
    relation_family,
    relations_star,
    star,
)
from poset_operads.errors import NotAMorphism, NotForest
from poset_operads.oracle import ideal_component, quotient_dim
from poset_operads.poset import Poset, PosetMorphism, enumerate_forests, enumerate_posets, intervals_count, is_morphism, is_trivial, random_poset
from poset_operads.rewriting import check_termination_measure, is_normal
from poset_operads.trees import TreePoly, alphabet, compose2, enumerate_trees

from worked_examples import TRIVIAL_DIMS, TWO_CHAINS, TWO_CHAINS_DIMS, V


class TestRelations:
    def test_chain2_family(self):
        fam = relation_family(Poset.chain(2))
        assert all(p.is_binomial() for p in fam)
        assert relations_star(Poset.chain(2)).dimension == 6

    def test_trivial_relations_are_associativity(self):
        P = Poset.trivial(3)
        pres = relations_star(P)
        comp = ideal_component(pres, 3)
        assert pres.dimension == 3
        for a in P.elements:
            assert comp.contains(TreePoly.binomial(compose2(star(a), 1, star(a)), compose2(star(a), 2, star(a))))

    @pytest.mark.parametrize("n", range(5))
    def test_dimension_formula_exhaustive(self, n):
        for P in enumerate_posets(n):
            assert relations_star(P).dimension == expected_relation_dimension(P) == 4 * intervals_count(P) - 3 * n

    @pytest.mark.parametrize("P", [Poset.chain(3), Poset.from_relations(3, [(1, 2), (1, 3)]), V, TWO_CHAINS])
    def test_relations_closure(self, P):
        for a in P.elements:
            trees, ok = relations_closure(P, a)
            assert ok
            assert compose2(star(a), 1, star(a)) in trees


class TestOrientation:
    def test_rule_count(self):
        # comparable ordered pairs for o_1, strictly comparable for o_2
        for P in [Poset.chain(2), Poset.chain(3), V, TWO_CHAINS]:
            comp = sum(1 for a in P.elements for b in P.elements if P.comparable(a, b))
            strict = comp - P.size
            assert len(orientation(P).rules) == comp + strict

    @pytest.mark.parametrize("n", range(1, 4))
    def test_termination_certificate(self, n):
        for P in enumerate_posets(n, up_to_iso=True):
            R = orientation(P)
            assert check_termination_measure(R, R.measure, max_degree=3)

    def test_rules_are_relations(self):
        for P in [Poset.chain(3), V, TWO_CHAINS]:
            comp = ideal_component(relations_star(P), 3)
            for lhs, rhs in orientation(P).rules:
                assert comp.contains(TreePoly.binomial(lhs, rhs))


class TestDimensions:
    @pytest.mark.parametrize("l", [2, 3])
    def test_trivial_three_routes(self, l):
        P = Poset.trivial(l)
        expected = TRIVIAL_DIMS[l][:5]
        assert [count_normal_forms(P, n) for n in range(1, 6)] == expected
        assert hilbert_coeffs(P, 5) == expected
        assert [quotient_dim(relations_star(P), n) for n in range(1, 6)] == expected

    def test_two_chains(self):
        assert [dimension(TWO_CHAINS, n) for n in range(1, 7)] == TWO_CHAINS_DIMS
        assert hilbert_coeffs(TWO_CHAINS, 6) == TWO_CHAINS_DIMS

    @pytest.mark.parametrize("l", range(1, 6))
    def test_chain_stationary(self, l):
        assert [dimension(Poset.chain(l), n) for n in range(2, 8)] == [l] * 6

    def test_normal_forms_are_normal(self):
        for P in enumerate_forests(4):
            R = orientation(P)
            for t in normal_forms(P, 4):
                assert is_normal(R, t)

    def test_normal_forms_brute_force(self):
        # oracle: filter all trees by the rule set
        for P in enumerate_forests(3):
            R = orientation(P)
            for n in range(2, 5):
                brute = [t for t in enumerate_trees(alphabet("star", P.elements), n) if is_normal(R, t)]
                assert brute == normal_forms(P, n)

    def test_non_forest_uses_oracle(self):
        assert [dimension(V, n) for n in range(1, 5)] == [quotient_dim(relations_star(V), n) for n in range(1, 5)]
        with pytest.raises(NotForest):
            hilbert_coeffs(V, 4)

    def test_v_poset_normal_forms_overcount(self):
        # the orientation is not confluent for V, so normal forms outnumber the quotient basis
        from poset_operads.construction import _nf_by_root

        nf = sum(len(v) for v in _nf_by_root(V, 4, {}).values())
        assert nf > quotient_dim(relations_star(V), 4)


class TestAssociative:
    @pytest.mark.parametrize("P", [Poset.trivial(2), Poset.chain(2), V, Poset.from_relations(3, [(1, 2)])])
    def test_all_sign_vectors(self, P):
        for coeffs in itertools.product((-1, 0, 1), repeat=P.size):
            x = dict(zip(P.elements, coeffs))
            assert associative_elements_check(P, x) == associative_by_oracle(P, x)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6), st.lists(st.fractions(max_denominator=5), min_size=4, max_size=4))
    def test_rational_coefficients(self, seed, cs):
        P = random_poset(4, random.Random(seed), 0.5)
        x = dict(zip(P.elements, cs))
        assert associative_elements_check(P, x) == associative_by_oracle(P, x)


class TestBasic:
    def test_trivial_is_basic(self):
        assert is_basic(Poset.trivial(2)).ok

    def test_chain2_witness(self):
        v = is_basic(Poset.chain(2))
        assert not v.ok
        w = v.witness
        assert w["kernel"] and w["source_arity"] + w["operand_arity"] - 1 <= 4

    @pytest.mark.parametrize("n", range(0, 4))
    def test_basic_iff_trivial(self, n):
        for P in enumerate_posets(n, up_to_iso=True):
            assert is_basic(P, 4).ok == is_trivial(P)


class TestFunctoriality:
    def test_not_a_morphism(self):
        C2 = Poset.chain(2)
        with pytest.raises(NotAMorphism):
            induced_morphism(PosetMorphism(C2, C2, (2, 1)))

    def test_random_pairs(self):
        rng = random.Random(5)
        done = 0
        while done < 25:
            A, B, C = (random_poset(rng.randint(1, 3), rng, 0.5) for _ in range(3))
            f = PosetMorphism(A, B, tuple(rng.randint(1, B.size) for _ in A.elements))
            g = PosetMorphism(B, C, tuple(rng.randint(1, C.size) for _ in B.elements))
            if not (is_morphism(f) and is_morphism(g)):
                continue
            done += 1
            assert induced_morphism(f).relations_preserved
            assert induced_morphism(g).relations_preserved
            assert check_functoriality(f, g)

    def test_identity(self):
        P = TWO_CHAINS
        m = induced_morphism(PosetMorphism(P, P, tuple(P.elements)))
        assert m.relations_preserved and all(k == v for k, v in m.mapping.items())
