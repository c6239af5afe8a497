"""Weight filtrations, graded views, localization, and the rank-one test.

The running example is the bound-4 window of the Weyl presentation with
weights (0, 1).  Expected dimensions are frozen from two independent
routes wherever the module itself does not already compare two routes
internally (quotient view vs presented model, graded view vs enveloping
table).
"""

from fractions import Fraction

import pytest

from ncfourier.words import NcPoly
from ncfourier.truncated import Presentation, build_truncated
from ncfourier.algebroid import (LieAlgebroidPresentation,
                                 enveloping_presentation,
                                 pbw_dimension_check)
from ncfourier.microloc import (
    FilteredAlgebra, TAdicModule, NotFiltered, ZeroSymbol, BadLift,
    HypothesisFailure, associated_graded, gr_n, graded_iso_report,
    projection_report, rees_model_check, localize_deg0, lift_comparison,
    lift_independence, filtration_ideals, shift_bimodule, shift_checks,
    limit_tower, rank_one_criterion,
)

X = NcPoly.gen(0)
D = NcPoly.gen(1)
ONE = NcPoly.one()


def weyl_filtered():
    pres = Presentation(("x", "d"), [D * X - X * D - ONE], 4,
                        weights=(0, 1), name="weyl")
    return FilteredAlgebra(build_truncated(pres))


@pytest.fixture(scope="module")
def fa():
    return weyl_filtered()


@pytest.fixture(scope="module")
def mg(fa):
    return gr_n(fa, 1)


class TestFiltration:
    def test_layer_dims(self, fa):
        assert fa.alg.dim == 15
        assert [fa.layer(i).dim for i in range(fa.top + 1)] == [5, 9, 12, 14, 15]

    def test_layers_multiply(self, fa):
        # A_i * A_j inside A_{i+j} on representatives, both orders
        assert fa.generated_in_degree_one()

    def test_negative_weight_rejected(self):
        with pytest.raises(Exception):
            FilteredAlgebra(build_truncated(
                Presentation(("a",), [], 2, weights=(-1,), name="neg")))

    def test_trivial_weights_single_layer(self):
        u, w = NcPoly.gen(0), NcPoly.gen(1)
        fc = FilteredAlgebra(build_truncated(
            Presentation(("u", "w"), [u * w - w * u], 3, name="plane")))
        assert associated_graded(fc).dims() == [10]


class TestAssociatedGraded:
    def test_dims_and_commutativity(self, fa):
        gr = associated_graded(fa)
        assert gr.dims() == [5, 4, 3, 2, 1]
        assert gr.is_commutative()

    def test_free_algebra_rejected(self):
        ff = FilteredAlgebra(build_truncated(
            Presentation(("a", "b"), [], 2, weights=(1, 1), name="free")))
        with pytest.raises(NotFiltered):
            associated_graded(ff)

    def test_enveloping_route_matches_pbw(self):
        # independent route: same graded dims from the enveloping
        # presentation of the rank-one algebroid over the line
        base = Presentation(("x",), [], 4, name="line")
        lap = LieAlgebroidPresentation(base, ("D",), [[ONE]])
        env = FilteredAlgebra(build_truncated(enveloping_presentation(lap)))
        assert associated_graded(env).dims() == [5, 4, 3, 2, 1]
        ok, table = pbw_dimension_check(lap, upto=3)
        assert ok
        assert table == {0: (5, 5), 1: (4, 4), 2: (3, 3), 3: (2, 2)}


class TestMicroGraded:
    def test_dims(self, mg):
        assert mg.dims() == [5, 9, 7, 5, 3, 1]

    def test_t_central_nilpotent(self, mg):
        rep = mg.check_t()
        assert rep == {"central": True, "power_nonzero_up_to_n": True,
                       "power_n_plus_one_zero": True}
        assert any(c for c in mg.t_power(1))
        assert not any(c for c in mg.t_power(2))

    def test_t_noncommutes_with_nothing_but_grading(self, mg):
        # gr_(1) itself is noncommutative: [xbar, dbar] = t in degree 1
        xb = mg.pieces[0].coords(mg.fa.alg.to_vec(X))
        db = mg.pieces[1].coords(mg.fa.alg.to_vec(D))
        lhs = mg.product(0, xb, 1, db)
        rhs = mg.product(1, db, 0, xb)
        comm = [a - b for a, b in zip(rhs, lhs)]
        assert comm == list(mg.t)

    def test_mod_t_matches_graded(self, mg):
        rep = graded_iso_report(mg.mod_t_view(), associated_graded(mg.fa))
        assert rep["ok"]
        assert rep["dims_match"] and rep["bijective"]
        assert rep["unit"] and rep["multiplicative"]

    def test_mod_t_matches_graded_higher_levels(self, fa):
        for n in (2, 3):
            gn = gr_n(fa, n)  # verify=True runs the mod-t comparison
            assert gn.dims() == [
                fa.layer(i).dim - fa.layer(i - n - 1).dim
                for i in range(fa.top + n + 1)]

    def test_projection_between_levels(self, fa):
        rep = projection_report(fa, 1)
        assert rep["ok"]
        assert rep["dims_high"] == [5, 9, 12, 9, 6, 3, 1]
        assert rep["dims_low"] == [5, 9, 7, 5, 3, 1]
        assert rep["kernel_dims"] == [0, 0, 5, 4, 3, 2, 1]

    def test_presented_model_agrees(self, fa):
        rep = rees_model_check(fa, 1)
        assert rep["ok"]
        assert rep["rees_dim"] == 36
        assert rep["words_compared"] == 30
        assert rep["words_beyond_window"] == 6
        assert rep["view_dims"] == [5, 9, 7, 5, 3, 1]
        assert rep["dims_match"] and rep["multiplicative"]


class TestIdealsShiftsTower:
    def test_t_power_ideals(self, mg):
        rep = filtration_ideals(mg)
        assert rep["ok"]
        assert rep["ideal_dims"] == [[5, 9, 7, 5, 3, 1],
                                     [0, 5, 4, 3, 2, 1],
                                     [0, 0, 0, 0, 0, 0]]
        assert rep["i0_is_everything"] and rep["i_top_zero"]
        assert rep["quotients_match_shifted_gr"]
        assert rep["module_structure_matches"]

    def test_shift_bimodules(self, mg):
        rep = shift_checks(mg)
        assert rep["ok"]
        assert rep["m0_is_algebra"]
        assert rep["compose_1_minus1_is_action"]
        assert rep["associative_on_triples"]
        assert rep["triples_checked"] == 1580
        assert rep["t_maps_commute"]

    def test_shift_dims(self, mg):
        # the shifted module in degree i has the algebra dimension at i+m
        m1 = shift_bimodule(mg, 1)
        assert [m1.dim(i) for i in range(-1, mg.top)] == \
            [mg.dim(i + 1) for i in range(-1, mg.top)]
        m_1 = shift_bimodule(mg, -1)
        assert [m_1.dim(i) for i in range(1, mg.top + 1)] == \
            [mg.dim(i - 1) for i in range(1, mg.top + 1)]

    def test_limit_tower(self, mg):
        rep = limit_tower(mg)
        assert rep["tower_products_consistent"]
        assert rep["composite_ranks"] == {-1: 0, 0: 5, 1: 4, 2: 3, 3: 2,
                                          4: 1, 5: 0}


class TestLocalization:
    def test_grade_dims(self, mg):
        loc = localize_deg0(mg, D)
        assert loc.alg.dim == 45
        assert loc.dim0 == 8
        assert loc.grade_dims() == {-4: 1, -3: 3, -2: 6, -1: 7, 0: 8,
                                    1: 8, 2: 6, 3: 4, 4: 2}
        # grade 0 is spanned by powers of x and their t*v corrections
        assert loc.deg0_words() == [(), (0,), (0, 0), (2, 3), (0, 0, 0),
                                    (0, 2, 3), (0, 0, 0, 0), (0, 0, 2, 3)]

    def test_level_zero_is_commutative_localization(self, fa):
        loc0 = localize_deg0(associated_graded(fa), D)
        assert loc0.alg.dim == 25
        assert loc0.dim0 == 5
        assert loc0.deg0_words() == [(), (0,), (0, 0), (0, 0, 0),
                                     (0, 0, 0, 0)]

    def test_zero_symbol_rejected(self, mg):
        with pytest.raises(ZeroSymbol):
            localize_deg0(mg, X)

    def test_bad_lift_rejected(self, mg):
        with pytest.raises(BadLift):
            localize_deg0(mg, D, lift=D + NcPoly.monomial((1, 1)))

    def test_window_ghost(self, mg):
        # 2 x^2 v^2 - 3 xvxv + vxvx vanishes in the full object (it is a
        # consequence of [v, x] = -t v^2 with a length-6 witness) but no
        # derivation fits in the bound-4 window, so the window keeps it;
        # one bound higher the same element reduces to zero.
        ghost = (NcPoly.monomial((0, 0, 3, 3), 2)
                 + NcPoly.monomial((0, 3, 0, 3), -3)
                 + NcPoly.monomial((3, 0, 3, 0), 1))
        loc4 = localize_deg0(mg, D)
        assert not loc4.alg.normal_form(ghost).is_zero()
        loc5 = localize_deg0(mg, D, bound=5)
        assert loc5.alg.dim == 65
        assert loc5.alg.normal_form(ghost).is_zero()


class TestLiftIndependence:
    def test_scalar_lift_family(self, mg):
        lifts = [D, D + ONE, D + ONE.scale(2), D - ONE,
                 D + ONE.scale(Fraction(1, 2))]
        rep = lift_independence(mg, D, lifts)
        assert rep["ok"]
        assert rep["dims"] == [45] * 5
        assert rep["deg0_dims"] == [8] * 5
        assert len(rep["pairs"]) == 10
        for pair in rep["pairs"]:
            assert pair["ok"]
            assert pair["well_defined"]
            assert pair["relations_tainted"] == 0
            assert pair["bijective"] and pair["mutually_inverse"]
            assert pair["multiplicative"] and pair["maps_grade_zero"]
            assert pair["deg0_independent"]

    def test_pair_check_counts(self, mg):
        # frozen sizes of the exactly-decidable sub-window
        la = localize_deg0(mg, D)
        lb = localize_deg0(mg, D + ONE)
        lc = localize_deg0(mg, D + ONE.scale(2))
        _, _, anchored = lift_comparison(la, lb, mg.fa, 1)
        assert anchored["words_exact"] == (32, 30)
        assert anchored["roundtrips_checked"] == (27, 27)
        assert anchored["multiplicative_pairs"] == 218
        assert anchored["grade_zero_checked"] == 8
        assert anchored["grade_zero_skipped"] == 0
        _, _, shifted = lift_comparison(lb, lc, mg.fa, 1)
        assert shifted["words_exact"] == (30, 30)
        assert shifted["multiplicative_pairs"] == 192
        assert shifted["grade_zero_checked"] == 6
        assert shifted["grade_zero_skipped"] == 2

    def test_identical_lifts_compare_trivially(self, mg):
        rep = lift_independence(mg, D, [D, D])
        assert rep["ok"]
        assert rep["pairs"][0]["identical_lifts"]

    def test_x_correction_exceeds_window(self, mg):
        # lift d + x inflates the comparison series beyond the bound-4
        # window: relation images stay undetermined and the two windows
        # are different finite slices of the localization, while the
        # grade-zero block is still exactly comparable
        la = localize_deg0(mg, D)
        lc = localize_deg0(mg, D + X)
        _, _, rep = lift_comparison(la, lc, mg.fa, 1)
        assert not rep["ok"]
        assert not rep["well_defined"]
        assert rep["relations_tainted"] == 3
        assert not rep["dims_equal"]
        assert rep["maps_grade_zero"] and rep["deg0_independent"]


class TestRankOne:
    def line(self):
        pres = Presentation(("u",), [], 4, name="line")
        return build_truncated(pres)

    def test_free_rank_one(self):
        T = self.line()
        u = NcPoly.gen(0)
        rep = rank_one_criterion(TAdicModule(T, u, [(ONE,)], name="A"))
        assert rep.verdict is True
        assert bool(rep)
        assert rep.generator is not None
        assert rep.reasons == ["M/tM free of rank one; generator lifts to "
                               "a basis of M over A"]
        assert rep.data["dim_module"] == 5
        assert rep.data["dim_module_mod_t"] == 1

    def test_rank_two_fails(self):
        T = self.line()
        u = NcPoly.gen(0)
        zero = NcPoly.zero()
        rep = rank_one_criterion(
            TAdicModule(T, u, [(ONE, zero), (zero, ONE)], name="A+A"))
        assert rep.verdict is False
        assert rep.reasons == ["M/tM has dimension 2, A/tA has 1"]

    def test_t_ideal_fails(self):
        # the submodule (t) at truncation scale: t is not regular on it
        # (t^4 * A dies onto t^5 = 0) and no class generates freely
        T = self.line()
        u = NcPoly.gen(0)
        rep = rank_one_criterion(TAdicModule(T, u, [(u,)], name="(t)"))
        assert rep.verdict is False
        assert rep.reasons == [
            "t kernel on the module exceeds the top truncation layer",
            "no class of M/tM generates M freely"]
        assert rep.data["dim_module"] == 4
        assert rep.data["dim_module_mod_t"] == 1

    def test_ambient_two_sided_span_hypothesis(self):
        F = build_truncated(Presentation(("a", "b"), [], 2, name="free2"))
        with pytest.raises(HypothesisFailure):
            rank_one_criterion(TAdicModule(F, NcPoly.gen(0), [(ONE,)]))

    def test_ambient_kernel_hypothesis(self):
        u, w = NcPoly.gen(0), NcPoly.gen(1)
        B = build_truncated(Presentation(
            ("u", "w"), [u * w - w * u, u * w], 4, name="pinched"))
        with pytest.raises(HypothesisFailure):
            rank_one_criterion(TAdicModule(B, u, [(ONE,)]))
