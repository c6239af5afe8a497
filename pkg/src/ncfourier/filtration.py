"""Commutator filtrations on truncated algebras.

F^d is the sum, over all ways of writing d as an ordered sum of
positive parts, of the ideals generated by the corresponding lower
central series terms: the span of all products interleaving algebra
elements with iterated commutators whose orders add up to d.  F^{d+1}=0
cuts out the d-th nilpotency class; quotienting by F^{d+1} lands there.

Every space is tracked in layers indexed by a degree budget: the layer
at budget l holds elements witnessed by free words of total length at
most l.  Normal forms only shorten words, so two elements may be
multiplied exactly when their budgets sum inside the window; the
product then never truncates and stays an honest ideal element.
Multiplying reduced representatives without the budget check would
drop the out-of-window half of a mixed-degree product and manufacture
vectors outside the ideal.
"""

from .linalg import Subspace
from .truncated import build_truncated
from .words import NcPoly


def _cache(alg):
    # per-algebra memo: {"lcs": {i: layers}, "ideal": ..., "filt": ...}
    c = getattr(alg, "_nc_filtration_memo", None)
    if c is None:
        c = {"lcs": {}, "ideal": {}, "filt": {}}
        alg._nc_filtration_memo = c
    return c


def _cumulate(alg, buckets):
    """Turn {budget: [vec, ...]} into cumulative layers of subspaces."""
    D = alg.pres.bound
    layers = []
    acc = []
    for l in range(D + 1):
        acc.extend(buckets.get(l, ()))
        layers.append(Subspace.from_vectors(acc, alg.dim))
    return layers


def _full_layers(alg):
    buckets = {}
    for w in alg.basis:
        vec = alg.to_vec(NcPoly.monomial(w))
        buckets.setdefault(len(w), []).append(vec)
    return _cumulate(alg, buckets)


def _layer_elements(alg, layers):
    """Pairs (budget, element) covering each layer exactly once."""
    out = []
    seen = 0
    for l, space in enumerate(layers):
        rows = space.basis_fractions()
        for row in rows[seen:]:
            out.append((l, alg.from_vec(row)))
        seen = len(rows)
    return out


def _product_layers(alg, left, right):
    """Layered span of all products with budgets summing in-window."""
    D = alg.pres.bound
    buckets = {}
    for la, a in _layer_elements(alg, left):
        for lb, b in _layer_elements(alg, right):
            if la + lb > D:
                continue
            p = alg.mul(a, b)
            if p:
                buckets.setdefault(la + lb, []).append(alg.to_vec(p))
    return _cumulate(alg, buckets)


def _lcs_layers(alg, i):
    """Lower central series, layered.  Term 0 is the whole algebra;
    term i is spanned by commutators of basis words with term i-1."""
    if i < 0:
        raise ValueError("lower central series index must be >= 0")
    memo = _cache(alg)["lcs"]
    if i in memo:
        return memo[i]
    if i == 0:
        layers = _full_layers(alg)
    else:
        D = alg.pres.bound
        prev = _lcs_layers(alg, i - 1)
        buckets = {}
        for w in alg.basis:
            lw = len(w)
            if lw == 0:
                continue
            b = NcPoly.monomial(w)
            for ls, s in _layer_elements(alg, prev):
                if lw + ls > D:
                    continue
                c = alg.commutator(b, s)
                if c:
                    buckets.setdefault(lw + ls, []).append(alg.to_vec(c))
        layers = _cumulate(alg, buckets)
    memo[i] = layers
    return layers


def _ideal_layers(alg, i):
    memo = _cache(alg)["ideal"]
    if i in memo:
        return memo[i]
    term = _lcs_layers(alg, i)
    left = _product_layers(alg, _full_layers(alg), term)
    layers = _product_layers(alg, left, _full_layers(alg))
    memo[i] = layers
    return layers


def _sum_layers(alg, parts):
    D = alg.pres.bound
    if not parts:
        return [Subspace.from_vectors([], alg.dim)] * (D + 1)
    return [Subspace.sum_of([p[l] for p in parts], alg.dim)
            for l in range(D + 1)]


def _filtration_layers(alg, d):
    if d < 0:
        raise ValueError("filtration degree must be >= 0")
    memo = _cache(alg)["filt"]
    if d in memo:
        return memo[d]
    if d == 0:
        layers = _full_layers(alg)
    else:
        parts = []
        for i in range(1, d + 1):
            j_i = _ideal_layers(alg, i)
            if j_i[-1].is_zero():
                continue
            if i == d:
                parts.append(j_i)
            else:
                parts.append(_product_layers(alg, j_i,
                                             _filtration_layers(alg, d - i)))
        layers = _sum_layers(alg, parts)
    memo[d] = layers
    return layers


def lcs_term(alg, i):
    """Span of i-fold iterated commutators (whole algebra at i = 0)."""
    return _lcs_layers(alg, i)[-1]


def commutator_ideal(alg, i):
    """Two-sided ideal generated by the i-th lower central series term."""
    return _ideal_layers(alg, i)[-1]


def nc_filtration(alg, d):
    """The degree-d piece F^d of the commutator filtration.

    F^0 is the whole algebra; F^d sums J_i * F^{d-i} over 1 <= i <= d
    where J_i is the ideal generated by the i-th lower central term.
    Unrolling the recursion gives exactly the sum over ordered
    compositions of d of interleaved products.
    """
    return _filtration_layers(alg, d)[-1]


def in_nilpotency_class(alg, d):
    """True when F^{d+1} vanishes, i.e. the algebra lies in class d."""
    return nc_filtration(alg, d + 1).is_zero()


def quotient_rd(alg, d):
    """Quotient by F^{d+1}, the universal class-d image of the algebra.

    Returns alg itself when already in class d, else rebuilds with the
    F^{d+1} basis adjoined to the relations.
    """
    f = nc_filtration(alg, d + 1)
    if f.is_zero():
        return alg
    extra = [alg.from_vec(row) for row in f.basis_fractions()]
    name = alg.pres.name
    if name:
        name = f"r{d}({name})"
    pres = alg.pres.with_extra_relations(extra, name=name)
    return build_truncated(pres)


def abelianization(alg):
    return quotient_rd(alg, 0)
