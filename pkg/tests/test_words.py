"""Word order, polynomial arithmetic, and commutators."""

from fractions import Fraction

from hypothesis import given, strategies as st

from ncfourier.words import NcPoly, all_words, commutator_poly, word_key


def small_polys(ngens=2, maxlen=3):
    words = st.lists(st.integers(0, ngens - 1), max_size=maxlen).map(tuple)
    coeffs = st.builds(Fraction, st.integers(-9, 9),
                       st.integers(1, 9))
    return st.lists(st.tuples(words, coeffs), max_size=5).map(NcPoly)


class TestWordOrder:
    def test_length_then_lex(self):
        ws = all_words(2, 2)
        assert ws == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
        assert ws == sorted(ws, key=word_key)

    def test_counts(self):
        assert len(all_words(2, 4)) == 1 + 2 + 4 + 8 + 16
        assert len(all_words(3, 2)) == 1 + 3 + 9
        assert all_words(2, 0) == [()]


class TestPolyArithmetic:
    def test_zero_and_unit(self):
        assert NcPoly.zero().is_zero()
        assert NcPoly.one() * NcPoly.gen(0) == NcPoly.gen(0)
        assert NcPoly.scalar(0).is_zero()

    def test_no_stored_zeros(self):
        p = NcPoly.gen(0) - NcPoly.gen(0)
        assert p.terms == {}

    def test_monomial_product_concatenates(self):
        p = NcPoly.monomial((0, 1)) * NcPoly.monomial((1,), 3)
        assert p == NcPoly.monomial((0, 1, 1), 3)

    def test_degree_and_truncate(self):
        p = NcPoly.monomial((0, 0, 0)) + NcPoly.one()
        assert p.degree() == 3 and p.min_degree() == 0
        assert p.truncate(2) == NcPoly.one()

    def test_pow(self):
        x = NcPoly.gen(0)
        assert x ** 3 == NcPoly.monomial((0, 0, 0))
        assert x ** 0 == NcPoly.one()

    def test_rational_scaling(self):
        p = NcPoly.gen(0).scale(Fraction(2, 3))
        assert p.terms == {(0,): Fraction(2, 3)}

    @given(small_polys(), small_polys(), small_polys())
    def test_multiplication_associative(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(small_polys(), small_polys(), small_polys())
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(small_polys(), small_polys())
    def test_commutator_antisymmetric(self, a, b):
        assert commutator_poly(a, b) == -commutator_poly(b, a)

    @given(small_polys())
    def test_commutator_with_self_zero(self, a):
        assert commutator_poly(a, a).is_zero()


class TestCommutator:
    def test_free_generators(self):
        x, y = NcPoly.gen(0), NcPoly.gen(1)
        assert commutator_poly(x, y) == NcPoly.monomial((0, 1)) - \
            NcPoly.monomial((1, 0))
