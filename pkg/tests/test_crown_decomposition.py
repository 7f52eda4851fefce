import pytest

from rankgraph import Permutation, group_from_generators
from rankgraph.catalog import (
    alternating,
    crown_power_entry,
    direct_product,
    symmetric,
)
from rankgraph.crown_decomposition import (
    build_L_A,
    chief_series,
    crown_complement,
    crown_of,
    delta_G,
    g_equivalent,
    g_equivalent_via_maximals,
)
from rankgraph.automorphisms import isomorphism
from rankgraph.group_structure import is_soluble, socle


def cyc(n, *cycles):
    return Permutation.from_cycles(n, *cycles)


@pytest.fixture(scope="module")
def S3xS3():
    return direct_product(symmetric(3), symmetric(3)).group()


@pytest.fixture(scope="module")
def A5xA5():
    return direct_product(alternating(5), alternating(5)).group()


class TestChiefSeries:
    def test_simple_single_factor(self, A5):
        series = chief_series(A5)
        assert len(series) == 1
        assert series[0].order == 60
        assert not series[0].abelian

    def test_s4_bottom_up_orders(self, S4):
        series = chief_series(S4)
        assert [F.order for F in series] == [4, 3, 2]
        assert all(F.abelian for F in series)

    def test_orders_multiply_to_group_order(self, S4, S3xS3):
        for G in (S4, S3xS3):
            prod = 1
            for F in chief_series(G):
                prod *= F.order
            assert prod == G.order

    def test_factors_are_minimal_normal_in_quotient(self, S4):
        # no normal subgroup of G strictly between lower and upper
        from rankgraph.group_structure import normal_subgroups
        series = chief_series(S4)
        lattice = normal_subgroups(S4)
        for F in series:
            lo, hi = F.lower.order, F.upper.order
            for N in lattice.normals:
                if lo < N.order < hi:
                    assert not (F.upper.contains_group(N)
                                and N.contains_group(F.lower))

    def test_nonabelian_factors_never_frattini(self, A5xA5):
        for F in chief_series(A5xA5):
            assert not F.abelian
            assert not F.frattini


class TestGEquivalence:
    def test_reflexive(self, S4):
        series = chief_series(S4)
        for F in series:
            assert g_equivalent(S4, F, F)

    def test_klein_factors_with_different_actions(self):
        # central V4 in V4 x S3 vs the natural V4 in S4: different modules,
        # but compare inside one group: C2 x A4 has a central C2 and a V4
        # inside A4 with nontrivial action; orders differ so use two V4s.
        G = direct_product(
            direct_product(symmetric(3), symmetric(3)), symmetric(3),
            id="S3^3").group()
        series = chief_series(G)
        c3s = [F for F in series if F.order == 3]
        assert len(c3s) == 3
        for i in range(3):
            for j in range(i + 1, 3):
                assert not g_equivalent(G, c3s[i], c3s[j])

    def test_crown_power_minimal_normals_equivalent(self):
        # the minimal normal subgroups of a crown-based power are all
        # equivalent inside it
        G = crown_power_entry(symmetric(5), 2).group()
        series = chief_series(G)
        a5_factors = [F for F in series if F.order == 60]
        assert len(a5_factors) == 2
        assert g_equivalent(G, a5_factors[0], a5_factors[1])

    def test_direct_square_socle_factors_equivalent(self, A5xA5):
        series = chief_series(A5xA5)
        assert g_equivalent(A5xA5, series[0], series[1])

    def test_equivalence_relation_properties(self, S4, S3xS3):
        for G in (S4, S3xS3):
            series = chief_series(G)
            n = len(series)
            rel = [[g_equivalent(G, series[i], series[j]) for j in range(n)]
                   for i in range(n)]
            for i in range(n):
                assert rel[i][i]
                for j in range(n):
                    assert rel[i][j] == rel[j][i]
                    for k in range(n):
                        if rel[i][j] and rel[j][k]:
                            assert rel[i][k]

    def test_maximal_subgroup_criterion_agrees(self, S4, S3xS3):
        for G in (S4, S3xS3):
            series = chief_series(G)
            n = len(series)
            for i in range(n):
                for j in range(n):
                    assert g_equivalent(G, series[i], series[j]) == \
                        g_equivalent_via_maximals(G, series[i], series[j])


class TestMonolithicPrimitive:
    def test_simple_group_is_its_own(self, A5):
        series = chief_series(A5)
        L = build_L_A(A5, series[0])
        assert L.group.order == 60
        assert delta_G(A5, series[0], series) == 1

    def test_s4_klein_factor_gives_s4(self, S4):
        series = chief_series(S4)
        L = build_L_A(S4, series[0])
        assert L.group.order == 24
        assert isomorphism(L.group, S4).isomorphic is True

    def test_s4_c3_factor_gives_s3(self, S4):
        series = chief_series(S4)
        L = build_L_A(S4, series[1])
        assert L.group.order == 6

    def test_central_factor_degenerate(self):
        # abelian central factor: the action is trivial, L_A = A
        C2xA4 = direct_product(
            symmetric(3), symmetric(3), id="tmp").group()
        G = group_from_generators(8, [cyc(8, [0, 1]),
                                      cyc(8, [2, 3, 4]), cyc(8, [5, 6, 7]),
                                      cyc(8, [2, 5], [3, 6], [4, 7])])
        # G = C2 x (C3^2 : C2); its central C2 factor has L_A = C2
        series = chief_series(G)
        central = [F for F in series
                   if F.order == 2 and F.centralizer.order == G.order]
        assert central
        L = build_L_A(G, central[0])
        assert L.group.order == 2

    def test_crown_power_socle_delta_two(self):
        G = crown_power_entry(symmetric(5), 2).group()
        series = chief_series(G)
        a5 = [F for F in series if F.order == 60][0]
        assert delta_G(G, a5, series) == 2


class TestCrownOf:
    def test_monolithic_group_trivial_crown(self, S5):
        series = chief_series(S5)
        a5 = [F for F in series if F.order == 60][0]
        crown = crown_of(S5, a5, series)
        assert crown.R.order == 1
        assert crown.I.order == socle(S5).order
        assert crown.iso_checked == "explicit"

    def test_direct_square_of_simple(self, A5xA5):
        series = chief_series(A5xA5)
        crown = crown_of(A5xA5, series[0], series)
        assert crown.delta == 2
        assert crown.R.order == 1
        assert crown.I.order == 3600
        assert crown.iso_checked in ("explicit", "structural")

    def test_s4_klein_crown(self, S4):
        series = chief_series(S4)
        crown = crown_of(S4, series[0], series)
        assert crown.delta == 1
        assert crown.R.order == 1
        assert crown.I.order == 4
        assert crown.iso_checked == "explicit"

    def test_s4_c3_crown(self, S4):
        series = chief_series(S4)
        crown = crown_of(S4, series[1], series)
        assert crown.R.order == 4  # the Klein subgroup
        assert crown.I.order == 12
        assert crown.iso_checked == "explicit"

    def test_small_crown_power_explicit_iso(self):
        # L_2 of S3: order 18, fully within the dense cap
        G = crown_power_entry(symmetric(3), 2).group()
        assert G.order == 18
        series = chief_series(G)
        c3 = [F for F in series if F.order == 3]
        assert g_equivalent(G, c3[0], c3[1])
        crown = crown_of(G, c3[0], series)
        assert crown.delta == 2
        assert crown.R.order == 1
        assert crown.iso_checked == "explicit"

    def test_complement_exists_when_frattini_trivial(self, S4, A5xA5):
        from rankgraph.group_structure import frattini
        for G in (S4, A5xA5):
            series = chief_series(G)
            crown = crown_of(G, series[0], series)
            U = crown_complement(G, crown)
            assert U is not None
            assert U.order * crown.R.order == crown.I.order

    def test_s3s3_separate_crowns(self, S3xS3):
        series = chief_series(S3xS3)
        c3s = [F for F in series if F.order == 3]
        crowns = [crown_of(S3xS3, F, series) for F in c3s]
        for crown in crowns:
            assert crown.delta == 1
            assert crown.L_A.group.order == 6
            assert crown.R.order == 6  # the other S3 direct factor


class TestReductionConsistency:
    """Local connectivity of every non-abelian crown-power image implies
    connectivity of Delta_d: checked as a cross-module consistency fact."""

    def test_s5_at_d3(self, S5):
        from rankgraph.crown_powers import (MonolithicGroup,
                                            t_locally_connected)
        from rankgraph.graphs import delta_summary
        series = chief_series(S5)
        nonab = [F for F in series if not F.abelian]
        assert len(nonab) == 1
        crown = crown_of(S5, nonab[0], series)
        assert crown.delta == 1
        # the only non-abelian crown-power image is (L_A)_1 = L_A ~ S5
        ok, reports = t_locally_connected(crown.L_A, 3, 1)
        assert ok and len(reports) == 7
        assert delta_summary(S5, 3).connected

    def test_soluble_group_vacuous_hypothesis(self, S4):
        from rankgraph.graphs import delta_summary
        series = chief_series(S4)
        assert all(F.abelian for F in series)  # no non-abelian images
        assert delta_summary(S4, 3).connected
