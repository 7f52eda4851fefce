import pytest

from rankgraph import (
    CapExceededError,
    Permutation,
    PermutationGroup,
    PreconditionError,
    generates,
    group_from_generators,
    is_normal,
    quotient,
)
from rankgraph.catalog import default_catalog
from rankgraph.config import Limits
from rankgraph.group_structure import (
    d_X,
    frattini,
    gaschutz_lift,
    is_simple,
    is_soluble,
    maximal_subgroups,
    min_rank,
    normal_subgroups,
    socle,
)

from oracles import (
    brute_frattini,
    brute_maximal_subgroups,
    brute_non_generators,
    brute_normal_subgroups,
)


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


class TestNormalSubgroups:
    def test_simple_group(self, A5):
        lat = normal_subgroups(A5)
        assert lat.orders() == [1, 60]
        assert [N.order for N in lat.minimal_normals] == [60]

    def test_s4_oracle(self, S4):
        # frozen from the exhaustive subgroup-normality oracle
        oracle_orders = sorted(len(H) for H in brute_normal_subgroups(S4))
        assert oracle_orders == [1, 4, 12, 24]
        lat = normal_subgroups(S4)
        assert lat.orders() == [1, 4, 12, 24]

    def test_c6_has_four(self):
        C6 = group_from_generators(6, [cyc(6, list(range(6)))])
        assert len(normal_subgroups(C6).normals) == 4

    def test_all_listed_are_normal(self, S4):
        lat = normal_subgroups(S4)
        for N in lat.normals:
            assert is_normal(S4, N)

    def test_minimal_normals_are_atoms(self, S4):
        lat = normal_subgroups(S4)
        for N in lat.minimal_normals:
            assert N.order > 1
            for M in lat.normals:
                if 1 < M.order < N.order:
                    assert not N.contains_group(M)


class TestSocle:
    def test_simple(self, A5):
        assert socle(A5).order == 60

    def test_s5(self, S5):
        assert socle(S5).order == 60

    def test_s4(self, S4):
        S = socle(S4)
        assert S.order == 4


class TestSolubility:
    def test_p_group(self, Q8):
        assert is_soluble(Q8)

    def test_a5(self, A5):
        assert not is_soluble(A5)

    def test_s4(self, S4):
        assert is_soluble(S4)


class TestFrattini:
    def test_elementary_abelian_trivial(self, V4):
        assert frattini(V4).order == 1

    def test_q8_center(self, Q8):
        # frozen from the maximal-subgroup intersection oracle
        assert len(brute_frattini(Q8)) == 2
        F = frattini(Q8)
        assert F.order == 2
        assert is_normal(Q8, F)

    def test_symmetric_trivial(self, S4, S5):
        assert frattini(S4).order == 1
        assert frattini(S5).order == 1

    def test_q8_maximals_against_oracle(self, Q8):
        oracle = brute_maximal_subgroups(Q8)
        ours = maximal_subgroups(Q8)
        assert sorted(len(M) for M in oracle) == sorted(M.order for M in ours)

    def test_s4_maximals_against_oracle(self, S4):
        oracle = brute_maximal_subgroups(S4)
        ours = maximal_subgroups(S4)
        assert sorted(len(M) for M in oracle) == sorted(M.order for M in ours)

    def test_non_generator_characterization(self, Q8):
        ct = Q8.cayley_table()
        ours = frozenset(p.images for p in frattini(Q8).elements())
        assert ours == brute_non_generators(Q8, subset_cap=2)

    def test_cap(self):
        from rankgraph.catalog import symmetric
        S6 = symmetric(6).group()
        with pytest.raises(CapExceededError):
            frattini(S6, Limits(max_maximal_order=100))

    def test_idempotence_and_rank_invariance_on_catalog(self, catalog_entries):
        # Frat(G/Frat(G)) = 1 and d(G) = d(G/Frat(G)) on small catalog groups
        for entry in catalog_entries:
            G = entry.group()
            if G.order > 200:
                continue
            F = frattini(G)
            assert is_normal(G, F)
            if F.order == 1:
                continue
            Q, _ = quotient(G, F)
            assert frattini(Q).order == 1
            assert min_rank(G).d == min_rank(Q).d


class TestMinRank:
    def test_trivial(self):
        assert min_rank(group_from_generators(3, [])).d == 0

    def test_cyclic(self):
        C6 = group_from_generators(6, [cyc(6, list(range(6)))])
        cert = min_rank(C6)
        assert cert.d == 1 and cert.check()

    def test_elementary_abelian_rank3(self):
        G = group_from_generators(6, [cyc(6, [0, 1]), cyc(6, [2, 3]),
                                      cyc(6, [4, 5])])
        cert = min_rank(G)
        assert cert.d == 3 and cert.check()

    def test_a5_two_generated(self, A5):
        cert = min_rank(A5)
        assert cert.d == 2 and cert.check()

    def test_witness_has_no_shorter_form(self, S4):
        cert = min_rank(S4)
        assert cert.d == 2
        # no single element generates S4
        for p in S4.elements():
            assert p.order() < 24

    def test_large_nonabelian_two_generator_certificate(self):
        from rankgraph.catalog import crown_power_entry, alternating
        entry = crown_power_entry(alternating(5), 2)
        G = entry.group()
        assert G.order == 3600
        assert min_rank(G, Limits(max_dense_order=256)).d == 2


class TestDX:
    def test_generating_set_gives_zero(self, A5):
        assert d_X(A5, list(A5.generators)) == 0

    def test_identity_in_a5(self, A5):
        assert d_X(A5, [A5.identity]) == 2

    def test_outside_element_rejected(self, A5):
        with pytest.raises(Exception):
            d_X(A5, [cyc(5, [0, 1])])

    def test_bounded_by_min_rank(self, S4, A5):
        import random
        rng = random.Random(5)
        for G in (S4, A5):
            d = min_rank(G).d
            assert d_X(G, []) == d
            for _ in range(10):
                X = [G.random_element(rng) for _ in range(rng.randrange(3))]
                assert d_X(G, X) <= d


class TestGaschutzLift:
    def test_trivial_m(self, S4):
        M = group_from_generators(4, [])
        g = list(min_rank(S4).witness)
        ns = gaschutz_lift(S4, M, [], g)
        assert all(n.is_identity() for n in ns)

    def test_already_generating(self, S4, V4):
        g = list(min_rank(S4).witness)
        ns = gaschutz_lift(S4, V4, [], g)
        corrected = [gi * ni for gi, ni in zip(g, ns)]
        assert generates(S4, corrected)

    def test_s4_mod_v4_lift(self, S4, V4):
        # lift a generating pair of S4/V4 (spec-derived instance)
        g = [cyc(4, [0, 1, 2]), cyc(4, [0, 1])]
        gens = g + list(V4.generators)
        assert PermutationGroup(4, gens).order == 24
        ns = gaschutz_lift(S4, V4, [], g)
        assert all(V4.contains(n) for n in ns)
        assert generates(S4, [g[0] * ns[0], g[1] * ns[1]])

    def test_precondition_violation(self, S4, V4):
        with pytest.raises(PreconditionError):
            gaschutz_lift(S4, V4, [], [cyc(4, [0, 1, 2])])  # <g, V4> != S4


class TestIsSimple:
    def test_a5(self, A5):
        assert is_simple(A5)

    def test_s4(self, S4):
        assert not is_simple(S4)
