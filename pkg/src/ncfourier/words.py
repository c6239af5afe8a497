"""Words and noncommutative polynomials with exact rational coefficients.

A word is a plain tuple of generator indices; the empty tuple is the
unit monomial.  Words are ordered by length, then lexicographically on
the index tuple, which is the order every normal form in the package
refers to.
"""

from fractions import Fraction


def word_key(w):
    return (len(w), w)


def all_words(ngens, bound):
    """All words of length <= bound in ascending length-lex order."""
    out = [()]
    layer = [()]
    for _ in range(bound):
        layer = [w + (i,) for w in layer for i in range(ngens)]
        out.extend(layer)
    return out


def _as_fraction(c):
    return c if isinstance(c, Fraction) else Fraction(c)


class NcPoly:
    """Finite formal sum of words with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items() if isinstance(terms, dict) else terms:
                c = _as_fraction(c)
                if c:
                    acc = self.terms.get(w)
                    acc = c if acc is None else acc + c
                    if acc:
                        self.terms[w] = acc
                    else:
                        del self.terms[w]

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({(): Fraction(1)})

    @classmethod
    def gen(cls, i):
        return cls({(i,): Fraction(1)})

    @classmethod
    def monomial(cls, word, coeff=1):
        return cls({tuple(word): _as_fraction(coeff)})

    @classmethod
    def scalar(cls, c):
        c = _as_fraction(c)
        return cls({(): c}) if c else cls()

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def degree(self):
        """Max word length, or -1 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=-1)

    def min_degree(self):
        return min((len(w) for w in self.terms), default=-1)

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w, 0) + c
            if acc:
                out[w] = acc
            else:
                out.pop(w, None)
        p = NcPoly.__new__(NcPoly)
        p.terms = out
        return p

    def __neg__(self):
        p = NcPoly.__new__(NcPoly)
        p.terms = {w: -c for w, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _as_fraction(c)
        p = NcPoly.__new__(NcPoly)
        p.terms = {} if not c else {w: c * v for w, v in self.terms.items()}
        return p

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                acc = out.get(w, 0) + c1 * c2
                if acc:
                    out[w] = acc
                else:
                    out.pop(w, None)
        p = NcPoly.__new__(NcPoly)
        p.terms = out
        return p

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = NcPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def truncate(self, bound):
        p = NcPoly.__new__(NcPoly)
        p.terms = {w: c for w, c in self.terms.items() if len(w) <= bound}
        return p

    def max_gen_index(self):
        return max((max(w) for w in self.terms if w), default=-1)

    def reindex(self, offset):
        """Shift every generator index by offset (for presentation merges)."""
        p = NcPoly.__new__(NcPoly)
        p.terms = {tuple(i + offset for i in w): c for w, c in self.terms.items()}
        return p

    def __repr__(self):
        if not self.terms:
            return "NcPoly(0)"
        bits = []
        for w, c in self.items_sorted():
            word = "*".join(f"g{i}" for i in w) if w else "1"
            bits.append(f"{c}*{word}")
        return "NcPoly(" + " + ".join(bits) + ")"


def commutator_poly(a, b):
    return a * b - b * a
