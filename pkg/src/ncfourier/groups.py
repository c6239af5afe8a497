"""Finite abelian groups and their exact character pairing.

A group is a product of cyclic factors; its dual is abstractly the same
group, paired through chi(x) = zeta_e^(sum_j chi_j x_j e/n_j) in the
cyclotomic field of the exponent e.  Element order is lexicographic and
cached, so every matrix built downstream is deterministic.
"""

import math
from itertools import product as _iproduct

from .cyclotomic import CyclotomicField


class FiniteAbGroup:
    """Product of Z/n_1 x ... x Z/n_k with componentwise arithmetic."""

    def __init__(self, moduli):
        moduli = tuple(int(n) for n in moduli)
        if any(n < 1 for n in moduli):
            raise ValueError("cyclic factors must have positive modulus")
        self.moduli = moduli
        self.order = math.prod(moduli) if moduli else 1
        self.exponent = math.lcm(*moduli) if moduli else 1
        self._elements = None
        self._index = None
        self._field = None

    # -- structure ---------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FiniteAbGroup)
                and self.moduli == other.moduli)

    def __hash__(self):
        return hash(self.moduli)

    def __repr__(self):
        if not self.moduli:
            return "FiniteAbGroup(trivial)"
        return "FiniteAbGroup(%s)" % "x".join(f"Z{n}" for n in self.moduli)

    def elements(self):
        if self._elements is None:
            self._elements = tuple(
                _iproduct(*(range(n) for n in self.moduli)))
        return self._elements

    def index(self, el):
        if self._index is None:
            self._index = {x: k for k, x in enumerate(self.elements())}
        return self._index[self.reduce(el)]

    def reduce(self, el):
        if len(el) != len(self.moduli):
            raise ValueError("element length does not match factor count")
        return tuple(int(c) % n for c, n in zip(el, self.moduli))

    @property
    def zero(self):
        return (0,) * len(self.moduli)

    def add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self.moduli))

    def neg(self, a):
        return tuple((-x) % n for x, n in zip(a, self.moduli))

    def element_order(self, a):
        a = self.reduce(a)
        k = 1
        acc = a
        while any(acc):
            acc = self.add(acc, a)
            k += 1
        return k

    # -- duality -----------------------------------------------------------

    def dual(self):
        """The character group, abstractly the same cyclic product."""
        return FiniteAbGroup(self.moduli)

    def field(self):
        if self._field is None:
            self._field = CyclotomicField(self.exponent)
        return self._field

    def char(self, chi, x):
        """chi(x) for chi in the dual group, as an exact root of unity."""
        chi = self.reduce(chi)
        x = self.reduce(x)
        e = self.exponent
        expo = sum(c * v * (e // n)
                   for c, v, n in zip(chi, x, self.moduli)) % e
        return self.field().zeta(expo)


def dual_group(group):
    return group.dual()


def character_table(group):
    """Rows indexed by characters, columns by elements."""
    els = group.elements()
    return [[group.char(chi, x) for x in els] for chi in els]


def pairing_nondegenerate(group):
    """Distinctness of all character rows (and by symmetry columns)."""
    rows = [tuple(row) for row in character_table(group)]
    return len(set(rows)) == group.order


def orthogonality_table(group):
    """All sums sum_chi chi(x) chi(x')^(-1); equals |X| on the diagonal.

    This is the brute-force oracle behind Fourier inversion: every sum
    is evaluated term by term in the cyclotomic field.
    """
    els = group.elements()
    field = group.field()
    table = []
    for x in els:
        row = []
        for y in els:
            acc = field.zero()
            for chi in els:
                acc = acc + group.char(chi, x) * group.char(chi, y).inverse()
            row.append(acc)
        table.append(row)
    return table
