"""Lie algebroid presentations and their enveloping algebras.

A presentation consists of a commutative base, a finite free module of
bracket generators, an anchor assigning each generator a derivation of
the base, a bracket table with base coefficients, and optionally a
scalar 2-cocycle describing a central extension.  The enveloping
algebra is presented by the base relations, the commutation rule
between bracket generators and base elements through the anchor, and
the bracket relations; with cocycle data the central parameter is
identified with 1, giving the reduced enveloping algebra of the
extension.
"""

from fractions import Fraction

from .truncated import (AlgebraError, Presentation, PresentationError,
                        build_truncated)
from .words import NcPoly


class JacobiFailure(AlgebraError):
    pass


def apply_derivation(base_alg, images, poly):
    """Extend generator images by Leibniz to a polynomial derivation value.

    images[j] is the value on base generator j, an element of base_alg.
    """
    total = NcPoly.zero()
    unit = base_alg.unit()
    for w, c in poly.terms.items():
        for pos in range(len(w)):
            prod = unit
            for k, i in enumerate(w):
                factor = images[i] if k == pos else base_alg.gen_el(i)
                prod = base_alg.mul(prod, factor)
                if prod.is_zero():
                    break
            total = total + prod.scale(c)
    return base_alg.normal_form(total)


class LieAlgebroidPresentation:
    """Base presentation, module generators, anchor, bracket, cocycle.

    anchor[i][j]: value of the i-th generator's derivation on base
    generator j (NcPoly over base gens).  bracket[(i, j)] for i < j is a
    list of base coefficients, one per module generator.  cocycle[(i, j)]
    for i < j is a base polynomial (scalar part of the bracket in the
    central extension); omit for no extension.
    """

    def __init__(self, base, lgens, anchor, bracket=None, cocycle=None,
                 name=None):
        self.base = base
        self.lgens = tuple(lgens)
        self.rank = len(self.lgens)
        if any(w != 0 for w in base.weights):
            raise PresentationError("base generators must have weight 0")
        if set(self.lgens) & set(base.gens):
            raise PresentationError("module generator shadows a base generator")
        if len(anchor) != self.rank:
            raise PresentationError("one anchor derivation per module generator")
        for der in anchor:
            if len(der) != len(base.gens):
                raise PresentationError("anchor derivation must cover base gens")
        self.anchor = [list(der) for der in anchor]
        self.bracket = dict(bracket or {})
        self.cocycle = dict(cocycle or {})
        for (i, j) in list(self.bracket) + list(self.cocycle):
            if not (0 <= i < j < self.rank):
                raise PresentationError("bracket/cocycle keys must have i < j")
        for coeffs in self.bracket.values():
            if len(coeffs) != self.rank:
                raise PresentationError("bracket entry needs one coefficient per generator")
        self.name = name
        self.base_alg = build_truncated(base)
        if not self._base_commutative():
            raise PresentationError("base presentation is not commutative")

    def _base_commutative(self):
        nb = len(self.base.gens)
        for i in range(nb):
            for j in range(i + 1, nb):
                c = self.base_alg.commutator(self.base_alg.gen_el(i),
                                             self.base_alg.gen_el(j))
                if not c.is_zero():
                    return False
        return True

    # bracket/cocycle tables extended antisymmetrically, diagonal zero
    def bracket_coeffs(self, i, j):
        zero = [NcPoly.zero()] * self.rank
        if i == j:
            return zero
        if i < j:
            entry = self.bracket.get((i, j))
            return list(entry) if entry else zero
        entry = self.bracket.get((j, i))
        return [-c for c in entry] if entry else zero

    def cocycle_value(self, i, j):
        if i == j:
            return NcPoly.zero()
        if i < j:
            return self.cocycle.get((i, j), NcPoly.zero())
        return -self.cocycle.get((j, i), NcPoly.zero())

    def anchor_on(self, i, poly):
        return apply_derivation(self.base_alg, self.anchor[i], poly)

    # -- structural checks ----------------------------------------------

    def check_anchor_derivations(self):
        """Each anchor value must map base relations into the base ideal."""
        for i in range(self.rank):
            for rel in self.base.relations:
                img = self.anchor_on(i, rel)
                if not img.is_zero():
                    return (i, rel)
        return None

    def check_anchor_bracket_compat(self):
        """[sigma_i, sigma_j] must equal the anchor of [l_i, l_j]."""
        B = self.base_alg
        for i in range(self.rank):
            for j in range(i + 1, self.rank):
                coeffs = self.bracket_coeffs(i, j)
                for a in range(len(self.base.gens)):
                    xa = B.gen_el(a)
                    lhs = self.anchor_on(i, self.anchor[j][a]) \
                        - self.anchor_on(j, self.anchor[i][a])
                    rhs = NcPoly.zero()
                    for k in range(self.rank):
                        if coeffs[k]:
                            rhs = rhs + B.mul(coeffs[k], self.anchor[k][a])
                    rhs = B.normal_form(rhs)
                    if B.normal_form(lhs - rhs):
                        return (i, j, a)
        return None

    def _ext_bracket(self, u, v):
        """Bracket on the central extension.

        Elements are (s, vec): s the coefficient of the central
        parameter, vec the base-coefficient vector on module generators.
        """
        B = self.base_alg
        s, uvec = u
        t, vvec = v
        out_s = NcPoly.zero()
        out_vec = [NcPoly.zero() for _ in range(self.rank)]
        for i in range(self.rank):
            if uvec[i].is_zero():
                continue
            out_s = out_s + B.mul(uvec[i], self.anchor_on(i, t))
        for j in range(self.rank):
            if vvec[j].is_zero():
                continue
            out_s = out_s - B.mul(vvec[j], self.anchor_on(j, s))
        for i in range(self.rank):
            if uvec[i].is_zero():
                continue
            for j in range(self.rank):
                if vvec[j].is_zero():
                    continue
                fg = B.mul(uvec[i], vvec[j])
                out_s = out_s + B.mul(fg, self.cocycle_value(i, j))
                coeffs = self.bracket_coeffs(i, j)
                for k in range(self.rank):
                    if coeffs[k]:
                        out_vec[k] = out_vec[k] + B.mul(fg, coeffs[k])
        # anchor corrections: [f l_i, g l_j] also moves coefficients
        for i in range(self.rank):
            if uvec[i].is_zero():
                continue
            for k in range(self.rank):
                if vvec[k].is_zero():
                    continue
                out_vec[k] = out_vec[k] + B.mul(uvec[i], self.anchor_on(i, vvec[k]))
        for j in range(self.rank):
            if vvec[j].is_zero():
                continue
            for k in range(self.rank):
                if uvec[k].is_zero():
                    continue
                out_vec[k] = out_vec[k] - B.mul(vvec[j], self.anchor_on(j, uvec[k]))
        out_vec = [B.normal_form(c) for c in out_vec]
        return (B.normal_form(out_s), out_vec)

    def check_jacobi(self):
        """Jacobi identity on all generator triples of the extension."""
        B = self.base_alg
        zero = NcPoly.zero()
        one = B.unit()

        def gen(i):
            vec = [zero] * self.rank
            vec[i] = one
            return (zero, vec)

        for i in range(self.rank):
            for j in range(self.rank):
                for k in range(self.rank):
                    acc_s = NcPoly.zero()
                    acc_v = [NcPoly.zero() for _ in range(self.rank)]
                    for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                        s, vec = self._ext_bracket(self._ext_bracket(gen(a), gen(b)), gen(c))
                        acc_s = acc_s + s
                        acc_v = [p + q for p, q in zip(acc_v, vec)]
                    if B.normal_form(acc_s) or any(B.normal_form(c) for c in acc_v):
                        return (i, j, k)
        return None

    def validate(self):
        bad = self.check_anchor_derivations()
        if bad is not None:
            raise JacobiFailure(
                f"anchor {bad[0]} does not preserve the base ideal")
        bad = self.check_anchor_bracket_compat()
        if bad is not None:
            raise JacobiFailure(
                f"anchor incompatible with bracket at {bad}")
        bad = self.check_jacobi()
        if bad is not None:
            raise JacobiFailure(f"Jacobi identity fails on triple {bad}")


def enveloping_presentation(lap, bound=None, validate=True):
    """Presentation of the (reduced) enveloping algebra.

    Base generators keep weight 0, module generators get weight 1.
    Cocycle data, when present, enters the bracket relations with the
    central parameter already identified with 1.
    """
    if validate:
        lap.validate()
    base = lap.base
    nb = len(base.gens)
    bound = bound or base.bound
    gens = base.gens + lap.lgens
    weights = (0,) * nb + (1,) * lap.rank
    rels = [r for r in base.relations]
    for i in range(lap.rank):
        li = NcPoly.gen(nb + i)
        for a in range(nb):
            xa = NcPoly.gen(a)
            rels.append(li * xa - xa * li - lap.anchor[i][a])
    for i in range(lap.rank):
        for j in range(i + 1, lap.rank):
            li = NcPoly.gen(nb + i)
            lj = NcPoly.gen(nb + j)
            rel = li * lj - lj * li
            coeffs = lap.bracket_coeffs(i, j)
            for k in range(lap.rank):
                if coeffs[k]:
                    rel = rel - coeffs[k] * NcPoly.gen(nb + k)
            rel = rel - lap.cocycle_value(i, j)
            rels.append(rel)
    name = lap.name and f"U({lap.name})"
    return Presentation(gens, rels, bound, weights, name=name)


def count_monomials(nvars, degree):
    """Monomials of exact total degree in commuting variables."""
    if nvars == 0:
        return 1 if degree == 0 else 0
    num = 1
    den = 1
    for t in range(1, nvars):
        num *= degree + t
        den *= t
    return num // den


def pbw_dimension_check(lap, upto=None, bound=None):
    """Compare graded dimensions of the enveloping algebra with the
    symmetric-algebra prediction.

    The filtration is by module-generator count (weight); degree i of
    the associated graded should match (monomials of degree i in rank
    variables) x (dimension of the base truncated at D - i).  Returns
    (ok, table) with table[i] = (got, expected).
    """
    pres = enveloping_presentation(lap, bound=bound)
    alg = build_truncated(pres)
    D = pres.bound
    upto = D if upto is None else min(upto, D)
    level_dims = []
    for i in range(upto + 1):
        level_dims.append(sum(1 for k in range(alg.dim)
                              if alg.basis_weight(k) <= i))
    table = {}
    ok = True
    for i in range(upto + 1):
        got = level_dims[i] - (level_dims[i - 1] if i else 0)
        base_i = Presentation(lap.base.gens, lap.base.relations,
                              max(D - i, 1), lap.base.weights)
        base_dim = build_truncated(base_i).dim if D - i >= 1 else 1
        expected = count_monomials(lap.rank, i) * base_dim
        table[i] = (got, expected)
        if got != expected:
            ok = False
    return ok, table
