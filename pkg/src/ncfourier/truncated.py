"""Degree-truncated quotients of free associative algebras over Q.

A presentation fixes generators (with filtration weights), relation
polynomials and a degree bound D.  The truncated algebra is the free
algebra modulo the two-sided ideal spanned by the relations together
with all words longer than D.  Normal forms come from row-reducing the
span of every left/right relation multiple that survives truncation;
no completion procedure is involved, confluence at degree <= D is
forced linearly.
"""

from fractions import Fraction

from .linalg import Subspace, qrref
from .words import NcPoly, all_words, word_key


class AlgebraError(Exception):
    pass


class PresentationError(AlgebraError):
    pass


class InconsistentPresentation(AlgebraError):
    """The relations force 1 = 0 at the given degree bound."""


class DegreeOverflow(AlgebraError):
    """A product left the degree window while truncation was disabled."""


class Presentation:
    """Generators with weights, relations and a degree bound.

    Weights are the filtration degrees used by the microlocal layer;
    they default to zero and must be nonnegative unless the caller
    explicitly opts into signed grading (used internally for inverted
    generators).
    """

    __slots__ = ("name", "gens", "weights", "relations", "bound")

    def __init__(self, gens, relations=(), bound=2, weights=None, name=None,
                 allow_signed_weights=False):
        gens = tuple(gens)
        if len(set(gens)) != len(gens):
            raise PresentationError("duplicate generator names")
        for g in gens:
            if not g.isidentifier():
                raise PresentationError(f"bad generator name {g!r}")
        if weights is None:
            weights = (0,) * len(gens)
        weights = tuple(int(w) for w in weights)
        if len(weights) != len(gens):
            raise PresentationError("one weight per generator required")
        if not allow_signed_weights and any(w < 0 for w in weights):
            raise PresentationError("negative weights not allowed here")
        if not isinstance(bound, int) or bound < 1:
            raise PresentationError("degree bound must be a positive integer")
        relations = tuple(r for r in relations if not r.is_zero())
        for r in relations:
            if not isinstance(r, NcPoly):
                raise PresentationError("relations must be NcPoly")
            if r.max_gen_index() >= len(gens):
                raise PresentationError("relation uses an undeclared generator")
            if r.degree() > bound:
                raise PresentationError(
                    f"relation degree {r.degree()} exceeds bound {bound}")
        self.name = name
        self.gens = gens
        self.weights = weights
        self.relations = relations
        self.bound = bound

    def gen_index(self, name):
        return self.gens.index(name)

    def word_weight(self, w):
        return sum(self.weights[i] for i in w)

    def with_extra_relations(self, extra, name=None):
        return Presentation(self.gens, self.relations + tuple(extra),
                            self.bound, self.weights,
                            name or self.name,
                            allow_signed_weights=True)

    def __repr__(self):
        nm = self.name or "?"
        return (f"Presentation({nm}: {len(self.gens)} gens, "
                f"{len(self.relations)} rels, bound={self.bound})")


class TruncatedAlgebra:
    """Finite-dimensional working model of a presented algebra.

    Basis elements are the words of length <= D not occurring as the
    leading word of any reduced relation row; multiplication is
    concatenate, truncate, reduce.  Products are cached per word pair.
    """

    __slots__ = ("pres", "words_asc", "cols", "colindex", "rewrite",
                 "basis", "basis_index", "dim", "_mul_cache", "_table_done",
                 "_nc_filtration_memo")

    def __init__(self, pres):
        self.pres = pres
        ngens = len(pres.gens)
        D = pres.bound
        self.words_asc = all_words(ngens, D)
        # pivot on the largest word first, so normal words are the small ones
        self.cols = list(reversed(self.words_asc))
        self.colindex = {w: j for j, w in enumerate(self.cols)}
        ncols = len(self.cols)

        # span of all multiples u*rel*v that fit inside the degree window
        # whole; truncating longer multiples would force spurious collapse
        # for relations of mixed degree
        span = []
        for rel in pres.relations:
            room = D - rel.degree()
            for u in self.words_asc:
                if len(u) > room:
                    break
                for v in self.words_asc:
                    if len(u) + len(v) > room:
                        break
                    row = [Fraction(0)] * ncols
                    for w, c in rel.terms.items():
                        row[self.colindex[u + w + v]] += c
                    span.append(row)
        rows, pivots = qrref(span, ncols)

        # Close the span under one-letter products.  A row whose leading
        # word is shorter than the bound is an exact ideal element (all
        # its words are at most that long), so multiplying by a generator
        # stays inside the window; combinations with cancellation produce
        # such short rows even when every presented multiple is long, and
        # without this pass a word could stay normal while a subword of
        # it reduces.
        while True:
            fresh = []
            for row, p in zip(rows, pivots):
                lead = self.cols[p]
                if len(lead) >= D:
                    continue
                support = [(j, c) for j, c in enumerate(row) if c]
                for g in range(ngens):
                    for left in (True, False):
                        vec = [0] * ncols
                        for j, c in support:
                            w = self.cols[j]
                            nw = (g,) + w if left else w + (g,)
                            vec[self.colindex[nw]] = c
                        fresh.append(vec)
            if not fresh:
                break
            grown, gpivots = qrref([list(r) for r in rows] + fresh, ncols)
            if len(grown) == len(rows):
                break
            rows, pivots = grown, gpivots

        self.rewrite = {}
        pivot_words = set()
        for row, p in zip(rows, pivots):
            pivot_words.add(self.cols[p])
        if () in pivot_words:
            raise InconsistentPresentation(
                f"relations collapse 1 to 0 at bound {D}")
        for row, p in zip(rows, pivots):
            lead = self.cols[p]
            repl = []
            for j in range(p + 1, ncols):
                if row[j]:
                    w = self.cols[j]
                    repl.append((w, Fraction(-row[j], row[p])))
            self.rewrite[lead] = repl
        self.basis = [w for w in self.words_asc if w not in pivot_words]
        self.basis_index = {w: k for k, w in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._mul_cache = {}
        self._table_done = False
        self._nc_filtration_memo = None

    # -- elements ------------------------------------------------------

    def unit(self):
        return NcPoly.one()

    def gen_el(self, i):
        if isinstance(i, str):
            i = self.pres.gen_index(i)
        return self.normal_form(NcPoly.gen(i))

    def normal_form(self, poly, truncate=True):
        """Canonical representative: combination of basis words only."""
        out = {}
        D = self.pres.bound
        for w, c in poly.terms.items():
            if len(w) > D:
                if truncate:
                    continue
                raise DegreeOverflow(f"word of length {len(w)} at bound {D}")
            repl = self.rewrite.get(w)
            if repl is None:
                acc = out.get(w, 0) + c
                if acc:
                    out[w] = acc
                else:
                    out.pop(w, None)
            else:
                for bw, bc in repl:
                    acc = out.get(bw, 0) + c * bc
                    if acc:
                        out[bw] = acc
                    else:
                        out.pop(bw, None)
        p = NcPoly.__new__(NcPoly)
        p.terms = out
        return p

    def is_normal(self, poly):
        return all(w in self.basis_index for w in poly.terms)

    def _word_mul(self, w1, w2, truncate):
        key = (w1, w2)
        hit = self._mul_cache.get(key)
        if hit is None:
            if len(w1) + len(w2) > self.pres.bound and not truncate:
                raise DegreeOverflow(
                    f"product length {len(w1) + len(w2)} at bound {self.pres.bound}")
            hit = self.normal_form(NcPoly.monomial(w1 + w2))
            self._mul_cache[key] = hit
        elif not truncate and len(w1) + len(w2) > self.pres.bound:
            raise DegreeOverflow(
                f"product length {len(w1) + len(w2)} at bound {self.pres.bound}")
        return hit

    def mul(self, a, b, truncate=True):
        if not self.is_normal(a):
            a = self.normal_form(a, truncate)
        if not self.is_normal(b):
            b = self.normal_form(b, truncate)
        out = {}
        for w1, c1 in a.terms.items():
            for w2, c2 in b.terms.items():
                c = c1 * c2
                for bw, bc in self._word_mul(w1, w2, truncate).terms.items():
                    acc = out.get(bw, 0) + c * bc
                    if acc:
                        out[bw] = acc
                    else:
                        out.pop(bw, None)
        p = NcPoly.__new__(NcPoly)
        p.terms = out
        return p

    def commutator(self, a, b):
        return self.mul(a, b) - self.mul(b, a)

    def power(self, a, k):
        out = self.unit()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def evaluate(self, poly, images, truncate=True):
        """Value of a free polynomial at the given generator images."""
        total = NcPoly.zero()
        for w, c in poly.terms.items():
            prod = self.unit()
            for i in w:
                prod = self.mul(prod, images[i], truncate)
                if prod.is_zero():
                    break
            total = total + prod.scale(c)
        return self.normal_form(total, truncate)

    # -- coordinates ----------------------------------------------------

    def to_vec(self, el):
        if not self.is_normal(el):
            el = self.normal_form(el)
        vec = [Fraction(0)] * self.dim
        for w, c in el.terms.items():
            vec[self.basis_index[w]] = c
        return vec

    def from_vec(self, vec):
        return NcPoly({self.basis[k]: c for k, c in enumerate(vec) if c})

    def subspace(self, elements):
        return Subspace.from_vectors([self.to_vec(e) for e in elements], self.dim)

    def full_subspace(self):
        return Subspace.full(self.dim)

    def zero_subspace(self):
        return Subspace.zero(self.dim)

    def basis_elements(self):
        return [NcPoly.monomial(w) for w in self.basis]

    def basis_weight(self, k):
        return self.pres.word_weight(self.basis[k])

    def is_central(self, el):
        return all(
            self.commutator(el, self.gen_el(i)).is_zero()
            for i in range(len(self.pres.gens))
        )

    # -- whole-algebra views ---------------------------------------------

    def mult_table(self):
        """Structure constants on all basis pairs, as normal NcPolys."""
        if not self._table_done:
            for w1 in self.basis:
                for w2 in self.basis:
                    self._word_mul(w1, w2, True)
            self._table_done = True
        return {
            (w1, w2): self._mul_cache[(w1, w2)]
            for w1 in self.basis for w2 in self.basis
        }

    def same_structure(self, other):
        """Equal basis words and equal structure constants."""
        if self.basis != other.basis:
            return False
        return self.mult_table() == other.mult_table()

    def check_associativity(self):
        """Exhaustive associativity check on basis triples.

        Only triples with total degree <= D are binding; beyond that the
        two association orders may truncate differently.  Returns an
        offending in-window triple, or None.
        """
        D = self.pres.bound
        for w1 in self.basis:
            a = NcPoly.monomial(w1)
            for w2 in self.basis:
                if len(w1) + len(w2) > D:
                    continue
                b = NcPoly.monomial(w2)
                ab = self.mul(a, b)
                for w3 in self.basis:
                    if len(w1) + len(w2) + len(w3) > D:
                        continue
                    c = NcPoly.monomial(w3)
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)):
                        return (w1, w2, w3)
        return None

    def __repr__(self):
        nm = self.pres.name or "?"
        return f"TruncatedAlgebra({nm}, dim={self.dim}, bound={self.pres.bound})"


def build_truncated(pres):
    """Build the truncated algebra of a presentation."""
    return TruncatedAlgebra(pres)
