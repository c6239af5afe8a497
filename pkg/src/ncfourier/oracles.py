"""Brute-force oracle runners.

Each oracle recomputes a quantity straight from its definition, by
exhaustive enumeration, without going through the incremental machinery
of the corresponding library module.  The test suite compares library
outputs against these.  NCF_BUDGET (an operation-count cap) guards
against accidentally enormous instances.
"""

import os
import random
from itertools import product

from .words import NcPoly, all_words, commutator_poly
from .linalg import Subspace
from .groups import FiniteAbGroup, orthogonality_table
from .fmkernel import Kernel, random_kernel


class BudgetExceeded(Exception):
    """Oracle instance larger than the configured budget allows."""


def budget_limit(default=1_000_000):
    raw = os.environ.get("NCF_BUDGET", "")
    try:
        return int(raw) if raw else default
    except ValueError:
        return default


def _charge(cost):
    limit = budget_limit()
    if cost > limit:
        raise BudgetExceeded(
            f"instance cost {cost} exceeds budget {limit}")


# -- free-algebra commutator filtration, by exhaustive enumeration ----------

def filtration_oracle(ngens, bound, depth):
    """Dims of the commutator filtration on the free algebra, directly.

    Works over the plain word basis of the truncated free algebra: the
    lower central terms are spanned by left-nested commutators of
    words, ideals by all word-framed products u*c*v, and each
    filtration piece by products of ideals over ordered compositions
    of the depth.  No normal forms, no incremental layer objects.
    """
    words = all_words(ngens, bound)
    dim = len(words)
    _charge(dim ** 3)
    index = {w: k for k, w in enumerate(words)}

    def to_vec(poly):
        vec = [0] * dim
        for w, c in poly.truncate(bound).terms.items():
            vec[index[w]] = c
        return vec

    def span(polys):
        return Subspace.from_vectors([to_vec(p) for p in polys], dim)

    def span_polys(sub):
        out = []
        for row in sub.basis_fractions():
            out.append(NcPoly(
                {words[k]: c for k, c in enumerate(row) if c}))
        return out

    word_polys = [NcPoly.monomial(w) for w in words]

    # i-fold iterated commutators: L0 = everything, L(i+1) = [words, Li]
    lcs = [word_polys]
    for i in range(1, depth + 1):
        prev = span_polys(span(lcs[i - 1]))
        brackets = [commutator_poly(NcPoly.monomial(w), c).truncate(bound)
                    for w in words for c in prev]
        lcs.append(span_polys(span(brackets)))

    # two-sided ideals generated by each term
    ideals = [None]
    for i in range(1, depth + 1):
        gens = span_polys(span(lcs[i]))
        framed = [(NcPoly.monomial(u) * c * NcPoly.monomial(v))
                  .truncate(bound)
                  for c in gens for u in words for v in words]
        ideals.append(span(framed))

    def compositions(total):
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in compositions(total - first):
                yield (first,) + rest

    dims = {0: dim}
    for d in range(1, depth + 1):
        pieces = []
        for comp in compositions(d):
            factor = span_polys(ideals[comp[0]])
            for i in comp[1:]:
                nxt = span_polys(ideals[i])
                factor = span_polys(span(
                    [(a * b).truncate(bound) for a in factor for b in nxt]))
            pieces.append(span(factor))
        dims[d] = Subspace.sum_of(pieces, dim).dim
    return {
        "ngens": ngens,
        "bound": bound,
        "algebra_dim": dim,
        "dims": dims,
        "lower_central_dims": {i: span(lcs[i]).dim
                               for i in range(1, depth + 1)},
        "ideal_dims": {i: ideals[i].dim for i in range(1, depth + 1)},
    }


# -- character orthogonality, term by term -----------------------------------

def orthogonality_oracle(moduli):
    group = FiniteAbGroup(tuple(moduli))
    _charge(group.order ** 3)
    table = orthogonality_table(group)
    order = group.field().rational(group.order)
    zero = group.field().zero()
    els = group.elements()
    entries = []
    ok = True
    for i, x in enumerate(els):
        for j, xp in enumerate(els):
            value = table[i][j]
            expected = order if x == xp else zero
            good = value == expected
            ok = ok and good
            entries.append({"x": list(x), "xp": list(xp),
                            "sum": list(value.coeffs), "ok": good})
    return {"moduli": list(moduli), "sums": len(entries),
            "entries": entries, "ok": ok}


# -- kernel composition laws on seeded instances ------------------------------

def assoc_oracle(moduli, seed, count):
    group = FiniteAbGroup(tuple(moduli))
    _charge(count * group.order ** 3)
    rng = random.Random(seed)
    delta = Kernel.delta(group)
    instances = []
    ok = True
    for k in range(count):
        a = random_kernel(group, rng)
        b = random_kernel(group, rng)
        c = random_kernel(group, rng)
        assoc = a.circle(b).circle(c) == a.circle(b.circle(c))
        unit = a.circle(delta) == a and delta.circle(a) == a
        ok = ok and assoc and unit
        instances.append({"instance": k, "associative": assoc,
                          "unit_laws": unit})
    return {"moduli": list(moduli), "seed": seed, "count": count,
            "instances": instances, "ok": ok}
