"""Degree-truncated quotient engine: normal forms, bases, consistency."""

from fractions import Fraction
from itertools import product

import pytest

from ncfourier.truncated import (Presentation, build_truncated,
                                 InconsistentPresentation, PresentationError,
                                 DegreeOverflow)
from ncfourier.words import NcPoly

X, Y = NcPoly.gen(0), NcPoly.gen(1)
ONE = NcPoly.one()


def weyl(bound):
    return build_truncated(
        Presentation(("x", "d"), [Y * X - X * Y - ONE], bound, name="weyl"))


def double_point(bound):
    Z, U = NcPoly.gen(0), NcPoly.gen(1)
    return build_truncated(Presentation(
        ("z", "u"),
        [Z * Z - ONE, (U * Z).scale(2) - ONE, (Z * U).scale(2) - ONE],
        bound, name="dblpt"))


class TestBuild:
    def test_free_one_generator(self):
        alg = build_truncated(Presentation(("x",), (), 3))
        assert alg.basis == [(), (0,), (0, 0), (0, 0, 0)]

    def test_commutative_two_generators(self):
        alg = build_truncated(Presentation(("x", "y"), [X * Y - Y * X], 2))
        assert alg.dim == 6
        assert alg.basis == [(), (0,), (1,), (0, 0), (0, 1), (1, 1)]

    def test_weyl_dims(self):
        assert [weyl(b).dim for b in (2, 3, 4)] == [6, 10, 15]

    def test_weyl_basis_bound_two(self):
        assert weyl(2).basis == [(), (0,), (1,), (0, 0), (0, 1), (1, 1)]

    def test_inconsistent_presentation(self):
        with pytest.raises(InconsistentPresentation):
            build_truncated(Presentation(("x",), [X - ONE, X], 2))

    def test_presentation_validation(self):
        with pytest.raises(PresentationError):
            Presentation(("x", "x"), (), 2)
        with pytest.raises(PresentationError):
            Presentation(("x",), (), 0)
        with pytest.raises(PresentationError):
            Presentation(("x",), [NcPoly.gen(1)], 2)
        with pytest.raises(PresentationError):
            Presentation(("x",), [NcPoly.monomial((0, 0, 0))], 2)


class TestNormalForm:
    def test_single_rewrite(self):
        alg = weyl(3)
        assert alg.normal_form(Y * X) == X * Y + ONE

    def test_zero(self):
        assert weyl(2).normal_form(NcPoly.zero()).is_zero()

    def test_double_point_square(self):
        alg = double_point(3)
        assert alg.normal_form(NcPoly.gen(0) ** 2) == ONE
        assert alg.normal_form(NcPoly.gen(1)) == NcPoly.gen(0).scale(
            Fraction(1, 2))

    def test_double_point_dims(self):
        assert [double_point(b).dim for b in (2, 3, 4)] == [4, 2, 2]

    def test_idempotent_on_basis_products(self):
        alg = weyl(3)
        for wa in alg.basis:
            for wb in alg.basis:
                if len(wa) + len(wb) > alg.pres.bound:
                    continue
                prod = alg.mul(NcPoly.monomial(wa), NcPoly.monomial(wb))
                assert alg.normal_form(prod) == prod

    def test_normal_form_compatible_with_product(self):
        alg = double_point(3)
        p = NcPoly.gen(0) + NcPoly.gen(1)
        q = NcPoly.gen(0) * NcPoly.gen(1)
        lhs = alg.normal_form(p * q)
        rhs = alg.mul(alg.normal_form(p), alg.normal_form(q))
        assert lhs == rhs

    def test_degree_overflow_without_truncation(self):
        alg = weyl(2)
        with pytest.raises(DegreeOverflow):
            alg.mul(X * X, X, truncate=False)


class TestStructure:
    def test_unit_is_identity(self):
        alg = weyl(3)
        for w in alg.basis:
            m = NcPoly.monomial(w)
            assert alg.mul(ONE, m) == m == alg.mul(m, ONE)

    def test_associativity_on_basis_triples(self):
        alg = double_point(3)
        for wa, wb, wc in product(alg.basis, repeat=3):
            a, b, c = (NcPoly.monomial(w) for w in (wa, wb, wc))
            assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))

    def test_weyl_associativity_within_degree(self):
        alg = weyl(3)
        for wa, wb, wc in product(alg.basis, repeat=3):
            if len(wa) + len(wb) + len(wc) > alg.pres.bound:
                continue
            a, b, c = (NcPoly.monomial(w) for w in (wa, wb, wc))
            assert alg.mul(alg.mul(a, b), c) == alg.mul(a, alg.mul(b, c))

    def test_vec_roundtrip(self):
        alg = weyl(3)
        el = alg.normal_form(Y * X + X.scale(Fraction(1, 3)))
        assert alg.from_vec(alg.to_vec(el)) == el

    def test_commutator_in_weyl(self):
        alg = weyl(3)
        assert alg.mul(Y, X) - alg.mul(X, Y) == ONE

    def test_free_two_generators_dim(self):
        free2 = build_truncated(Presentation(("x", "y"), (), 4))
        assert free2.dim == 31
