import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from rankgraph import (
    CapExceededError,
    DegreeMismatchError,
    GroupArgumentError,
    Permutation,
    PermutationGroup,
    StabilizerChain,
    compose,
    conjugacy_classes,
    centralizer,
    contains,
    generates,
    group_from_generators,
    is_normal,
    normal_closure,
    quotient,
)
from rankgraph.config import Limits

from oracles import brute_closure, brute_centralizer, brute_conjugacy_classes


perms = st.integers(3, 8).flatmap(
    lambda n: st.permutations(range(n)).map(Permutation))


def perm_pairs(max_degree=8):
    return st.integers(3, max_degree).flatmap(
        lambda n: st.tuples(st.permutations(range(n)).map(Permutation),
                            st.permutations(range(n)).map(Permutation)))


class TestPermutation:
    def test_identity_compose(self):
        q = Permutation.from_cycles(4, [0, 2, 1])
        assert compose(Permutation.identity(4), q) == q

    def test_involution_squares_to_identity(self):
        p = Permutation.from_cycles(2, [0, 1])
        assert compose(p, p).is_identity()

    def test_three_cycle_squared(self):
        p = Permutation.from_cycles(3, [0, 1, 2])
        assert compose(p, p) == Permutation.from_cycles(3, [0, 2, 1])

    def test_left_to_right_action(self):
        p = Permutation.from_cycles(3, [0, 1])
        q = Permutation.from_cycles(3, [1, 2])
        # apply p first: 0 -> 1 -> 2
        assert (p * q)(0) == 2

    def test_not_a_permutation(self):
        with pytest.raises(GroupArgumentError):
            Permutation([0, 0, 1])

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            Permutation.identity(3) * Permutation.identity(4)

    @given(perms)
    def test_inverse(self, p):
        assert (p * p.inverse()).is_identity()
        assert (p.inverse() * p).is_identity()

    @given(perm_pairs())
    def test_inverse_of_product(self, pair):
        p, q = pair
        assert (p * q).inverse() == q.inverse() * p.inverse()

    @given(st.integers(3, 7).flatmap(
        lambda n: st.tuples(*[st.permutations(range(n)).map(Permutation)] * 3)))
    def test_associativity(self, triple):
        p, q, r = triple
        assert (p * q) * r == p * (q * r)

    @given(perms)
    def test_order_divides_lcm_structure(self, p):
        assert (p ** p.order()).is_identity()

    def test_cycle_string(self):
        assert Permutation.identity(5).cycle_string() == "()"
        assert Permutation.from_cycles(5, [0, 1, 2]).cycle_string() == "(0 1 2)"


class TestGroupConstruction:
    def test_empty_generators(self):
        G = group_from_generators(3, [])
        assert G.order == 1

    def test_a5_order(self):
        G = group_from_generators(5, [
            Permutation.from_cycles(5, [0, 1, 2, 3, 4]),
            Permutation.from_cycles(5, [0, 1, 2])])
        assert G.order == 60

    def test_s5_order(self):
        G = group_from_generators(5, [
            Permutation.from_cycles(5, [0, 1, 2, 3, 4]),
            Permutation.from_cycles(5, [0, 1])])
        assert G.order == 120

    @settings(max_examples=25, deadline=None)
    @given(st.integers(4, 6).flatmap(lambda n: st.lists(
        st.permutations(range(n)).map(Permutation), min_size=1, max_size=3)))
    def test_order_matches_brute_closure(self, gens):
        degree = gens[0].degree
        G = group_from_generators(degree, gens)
        assert G.order == len(brute_closure(degree, gens))

    @settings(max_examples=15, deadline=None)
    @given(st.integers(4, 6).flatmap(lambda n: st.lists(
        st.permutations(range(n)).map(Permutation), min_size=1, max_size=3)))
    def test_contains_matches_element_list(self, gens):
        degree = gens[0].degree
        G = group_from_generators(degree, gens)
        closure = brute_closure(degree, gens)
        rng = random.Random(0)
        sample = [Permutation(rng.sample(range(degree), degree))
                  for _ in range(10)]
        for p in sample + [Permutation(img) for img in list(closure)[:10]]:
            assert G.contains(p) == (p.images in closure)

    def test_known_order_early_exit_is_sound(self, A5):
        chain = StabilizerChain(5, A5.generators, known_order=60)
        assert chain.order() == 60
        assert chain.contains(Permutation.from_cycles(5, [0, 1], [2, 3]))
        assert not chain.contains(Permutation.from_cycles(5, [0, 1]))


class TestMembershipAndGeneration:
    def test_identity_in_any_group(self, A5):
        assert contains(A5, A5.identity)

    def test_odd_permutation_not_in_a5(self, A5):
        assert not contains(A5, Permutation.from_cycles(5, [0, 1]))

    def test_random_product_stays_inside(self, A5):
        rng = random.Random(7)
        p = A5.identity
        for _ in range(30):
            p = p * rng.choice(A5.generators)
        assert contains(A5, p)

    def test_generators_generate(self, A5):
        assert generates(A5, list(A5.generators))

    def test_identity_does_not_generate(self, A5):
        assert not generates(A5, [A5.identity])

    def test_five_cycle_double_transposition(self, A5):
        # expected value frozen from the brute-force closure oracle
        x = Permutation.from_cycles(5, [0, 1, 2, 3, 4])
        y = Permutation.from_cycles(5, [0, 1], [2, 3])
        assert len(brute_closure(5, [x, y])) == 60
        assert generates(A5, [x, y])

    def test_outside_element_rejected(self, A5):
        with pytest.raises(GroupArgumentError):
            generates(A5, [Permutation.from_cycles(5, [0, 1])])


class TestElements:
    def test_trivial_group(self):
        G = group_from_generators(4, [])
        assert [p.cycle_string() for p in G.elements()] == ["()"]

    def test_c3(self):
        G = group_from_generators(3, [Permutation.from_cycles(3, [0, 1, 2])])
        assert len(G.elements()) == 3

    def test_a5_elements_distinct_and_sorted(self, A5):
        els = A5.elements()
        assert len(els) == 60
        assert len(set(els)) == 60
        assert list(els) == sorted(els)
        assert els[0].is_identity()

    def test_cap(self):
        G = group_from_generators(5, [
            Permutation.from_cycles(5, [0, 1, 2, 3, 4]),
            Permutation.from_cycles(5, [0, 1, 2])])
        with pytest.raises(CapExceededError):
            G.elements(Limits(max_elements=10))


class TestConjugacyClasses:
    def test_abelian_all_singletons(self):
        G = group_from_generators(6, [Permutation.from_cycles(6, [0, 1, 2]),
                                      Permutation.from_cycles(6, [3, 4])])
        assert all(len(c) == 1 for c in conjugacy_classes(G))

    def test_a5_class_sizes(self, A5):
        # frozen from the brute-force conjugation-orbit oracle
        oracle = brute_conjugacy_classes(A5)
        assert sorted(len(c) for c in oracle) == [1, 12, 12, 15, 20]
        ours = conjugacy_classes(A5)
        assert sorted(len(c) for c in ours) == [1, 12, 12, 15, 20]
        assert sum(len(c) for c in ours) == 60

    def test_s3_three_classes(self):
        G = group_from_generators(3, [Permutation.from_cycles(3, [0, 1, 2]),
                                      Permutation.from_cycles(3, [0, 1])])
        assert len(conjugacy_classes(G)) == 3


class TestCentralizer:
    def test_identity_gives_whole_group(self, A5):
        assert centralizer(A5, A5.identity).order == 60

    def test_five_cycle(self, A5):
        # frozen from the brute scan oracle
        p = Permutation.from_cycles(5, [0, 1, 2, 3, 4])
        assert len(brute_centralizer(A5, p)) == 5
        C = centralizer(A5, p)
        assert C.order == 5
        assert C.contains(p)

    def test_is_subgroup_containing_element(self, S4):
        p = Permutation.from_cycles(4, [0, 1, 2])
        C = centralizer(S4, p)
        assert C.contains(p)
        for a in C.generators:
            for b in C.generators:
                assert C.contains(a * b)


class TestNormalClosure:
    def test_identity_seed(self, S4):
        assert normal_closure(S4, [S4.identity]).order == 1

    def test_three_cycle_in_s4(self, S4):
        N = normal_closure(S4, [Permutation.from_cycles(4, [0, 1, 2])])
        assert N.order == 12

    def test_simple_group(self, A5):
        N = normal_closure(A5, [Permutation.from_cycles(5, [0, 1, 2])])
        assert N.order == 60

    def test_is_normal(self, S4, V4):
        assert is_normal(S4, V4)
        H = group_from_generators(4, [Permutation.from_cycles(4, [0, 1])])
        assert not is_normal(S4, H)


class TestQuotient:
    def test_by_whole_group(self, S4):
        Q, _ = quotient(S4, S4)
        assert Q.order == 1

    def test_by_trivial(self, S4):
        Q, _ = quotient(S4, group_from_generators(4, []))
        assert Q.order == 24

    def test_s4_mod_v4(self, S4, V4):
        Q, hom = quotient(S4, V4)
        assert Q.order == 6
        rng = random.Random(3)
        for _ in range(25):
            a, b = S4.random_element(rng), S4.random_element(rng)
            assert hom(a * b) == hom(a) * hom(b)

    def test_rejects_non_normal(self, S4):
        H = group_from_generators(4, [Permutation.from_cycles(4, [0, 1])])
        with pytest.raises(GroupArgumentError):
            quotient(S4, H)


class TestCayleyTable:
    def test_identity_is_index_zero(self, S4):
        ct = S4.cayley_table()
        assert ct.identity == 0
        assert ct.elements[0].is_identity()

    def test_table_matches_products(self, S4):
        ct = S4.cayley_table()
        rng = random.Random(1)
        for _ in range(50):
            i, j = rng.randrange(ct.n), rng.randrange(ct.n)
            assert ct.elements[ct.table[i][j]] == ct.elements[i] * ct.elements[j]

    def test_inverse_array(self, S4):
        ct = S4.cayley_table()
        for i in range(ct.n):
            assert ct.table[i][ct.inv[i]] == ct.identity
