"""Central extensions of truncated algebras and etale lifting.

A central extension is a surjective algebra map gamma: A' -> A whose
kernel I is central and satisfies I*I = 0.  Given a square

    R --delta--> A'
    |            |
  alpha        gamma
    |            |
    S --beta---> A

with beta surjective, a lift is an algebra map eps: S -> A' with
gamma(eps(s)) = beta(s) and eps(alpha(r)) = delta(r).  Because I is
central with zero square, the set of lifts is an affine space over
kernel-valued corrections to the generator images, so existence and
uniqueness reduce to an exact linear solve (solve_lifts).

For a standard extension -- adjoin a root z of sum(a_i z^i) together
with a two-sided inverse u of the derivative -- the unique lift also
has a closed form, implemented in lift_standard and verified
symbolically on every call.

The module ends with deterministic diagram families used by the
property harnesses: square-zero extensions with character-type or
regular-type kernels, with relation deformations and twisted maps.
"""

import itertools
from fractions import Fraction

from .words import NcPoly, commutator_poly
from .linalg import Subspace, solve_affine
from .truncated import (AlgebraError, InconsistentPresentation, Presentation,
                        PresentationError, build_truncated)
from .filtration import (abelianization, in_nilpotency_class, nc_filtration,
                         quotient_rd)


class NotCentralExtension(AlgebraError):
    """The map is not surjective with a central square-zero kernel."""


class PreimageMismatch(AlgebraError):
    """A supplied element does not project to the required value."""


class LiftInconsistent(AlgebraError):
    """A lift that should exist fails its exact verification."""


def _as_poly(v):
    if isinstance(v, NcPoly):
        return v
    return NcPoly.scalar(v)


def _same_presentation(p, q):
    return (p.gens == q.gens and p.weights == q.weights
            and p.bound == q.bound and p.relations == q.relations)


class AlgebraMorphism:
    """Algebra map between truncated algebras, given by generator images.

    The map sends generator i of the source to images[i] and extends
    multiplicatively.  Well-definedness is equivalent to every source
    relation evaluating to zero in the target, which check_relations
    reports; constructors in this module always verify it.
    """

    __slots__ = ("source", "target", "images", "name", "_matrix")

    def __init__(self, source, target, images, name=""):
        images = tuple(target.normal_form(_as_poly(im)) for im in images)
        if len(images) != len(source.pres.gens):
            raise PresentationError("one image per source generator required")
        self.source = source
        self.target = target
        self.images = images
        self.name = name
        self._matrix = None

    @classmethod
    def identity(cls, alg, name="id"):
        return cls(alg, alg, [NcPoly.gen(i) for i in range(len(alg.pres.gens))],
                   name=name)

    @classmethod
    def named_inclusion(cls, source, target, name=""):
        """Send every source generator to the target generator of the
        same name."""
        images = []
        for g in source.pres.gens:
            if g not in target.pres.gens:
                raise PresentationError(f"target lacks generator {g!r}")
            images.append(NcPoly.gen(target.pres.gen_index(g)))
        return cls(source, target, images, name=name)

    def apply(self, poly):
        return self.target.evaluate(_as_poly(poly), self.images)

    def matrix(self):
        """Images of the source basis as target coordinate vectors."""
        if self._matrix is None:
            self._matrix = [self.target.to_vec(self.apply(NcPoly.monomial(w)))
                            for w in self.source.basis]
        return self._matrix

    def check_relations(self):
        """Indices of source relations whose image is nonzero."""
        bad = []
        for k, rel in enumerate(self.source.pres.relations):
            if self.apply(rel):
                bad.append(k)
        return bad

    def image(self):
        return Subspace.from_vectors(self.matrix(), self.target.dim)

    def is_surjective(self):
        return self.image().dim == self.target.dim

    def kernel(self):
        cols = self.matrix()
        rows = [[cols[k][c] for k in range(self.source.dim)]
                for c in range(self.target.dim)]
        _, basis = solve_affine([(r, Fraction(0)) for r in rows],
                                self.source.dim)
        return Subspace.from_vectors(basis, self.source.dim)

    def preimage(self, el):
        """Some source element mapping to el, or PreimageMismatch."""
        cols = self.matrix()
        vec = self.target.to_vec(self.target.normal_form(_as_poly(el)))
        eqs = [([cols[k][c] for k in range(self.source.dim)], vec[c])
               for c in range(self.target.dim)]
        particular, _ = solve_affine(eqs, self.source.dim)
        if particular is None:
            raise PreimageMismatch("element is outside the image")
        return self.source.from_vec(particular)

    def compose(self, inner):
        """self after inner (inner.target must be self.source)."""
        if inner.target is not self.source and not _same_presentation(
                inner.target.pres, self.source.pres):
            raise PresentationError("composition targets do not match")
        imgs = [self.apply(im) for im in inner.images]
        return AlgebraMorphism(inner.source, self.target, imgs,
                               name=f"{self.name}*{inner.name}")

    def same_images(self, other):
        return self.images == other.images

    def __repr__(self):
        nm = self.name or "map"
        return (f"AlgebraMorphism({nm}: {self.source.pres.name or '?'} -> "
                f"{self.target.pres.name or '?'})")


class CentralExtension:
    """Surjective algebra map whose kernel is central with zero square."""

    __slots__ = ("gamma", "total", "quotient", "kernel")

    def __init__(self, gamma, validate=True):
        self.gamma = gamma
        self.total = gamma.source
        self.quotient = gamma.target
        self.kernel = gamma.kernel()
        if validate:
            problems = self.verify()
            if problems:
                raise NotCentralExtension("; ".join(problems))

    def kernel_elements(self):
        return [self.total.from_vec(v) for v in self.kernel.basis_fractions()]

    def kernel_combination(self, coeffs):
        """Linear combination of the kernel basis (zero padded)."""
        out = NcPoly.zero()
        for c, el in zip(coeffs, self.kernel_elements()):
            out = out + el.scale(c)
        return out

    def verify(self):
        problems = []
        if self.gamma.check_relations():
            problems.append("projection is not an algebra map")
        if not self.gamma.is_surjective():
            problems.append("projection is not surjective")
        alg = self.total
        kelts = self.kernel_elements()
        # Centrality against generators suffices: commuting with a and b
        # forces commuting with ab.
        for k in kelts:
            for i in range(len(alg.pres.gens)):
                if alg.commutator(k, alg.gen_el(i)):
                    problems.append(
                        f"kernel not central against {alg.pres.gens[i]}")
                    break
        for a in kelts:
            if any(alg.mul(a, b) for b in kelts):
                problems.append("kernel square is nonzero")
                break
        return problems

    def __repr__(self):
        return (f"CentralExtension({self.total.pres.name or '?'} -> "
                f"{self.quotient.pres.name or '?'}, kernel dim "
                f"{self.kernel.dim})")


def central_quotient(total, ideal_gens, name=None, validate=True):
    """Quotient a truncated algebra by the given elements and package the
    projection as a CentralExtension (validated unless told otherwise)."""
    polys = [total.normal_form(_as_poly(g)) for g in ideal_gens]
    pres = total.pres.with_extra_relations(polys, name=name)
    quot = build_truncated(pres)
    gamma = AlgebraMorphism(total, quot,
                            [NcPoly.gen(i) for i in range(len(pres.gens))],
                            name="gamma")
    return CentralExtension(gamma, validate=validate)


class StandardEtaleData:
    """Defining data of a standard extension: the coefficient list of the
    adjoined root's polynomial and the positions of z and u."""

    __slots__ = ("coeffs", "z_index", "u_index")

    def __init__(self, coeffs, z_index, u_index):
        self.coeffs = tuple(_as_poly(c) for c in coeffs)
        self.z_index = z_index
        self.u_index = u_index


class EtaleDiagram:
    """The lifting square: alpha: R->S, beta: S->A, delta: R->A' and a
    central extension gamma: A'->A, with gamma*delta = beta*alpha."""

    __slots__ = ("alpha", "beta", "ext", "delta", "std", "label")

    def __init__(self, alpha, beta, ext, delta, std=None, label=""):
        if alpha.target is not beta.source and not _same_presentation(
                alpha.target.pres, beta.source.pres):
            raise PresentationError("alpha.target must be beta.source")
        if delta.target is not ext.total and not _same_presentation(
                delta.target.pres, ext.total.pres):
            raise PresentationError("delta.target must be the extension total")
        if beta.target is not ext.quotient and not _same_presentation(
                beta.target.pres, ext.quotient.pres):
            raise PresentationError("beta.target must be the extension base")
        if alpha.source is not delta.source and not _same_presentation(
                alpha.source.pres, delta.source.pres):
            raise PresentationError("alpha.source must be delta.source")
        self.alpha = alpha
        self.beta = beta
        self.ext = ext
        self.delta = delta
        self.std = std
        self.label = label

    @property
    def R(self):
        return self.alpha.source

    @property
    def S(self):
        return self.alpha.target

    @property
    def A(self):
        return self.ext.quotient

    @property
    def Aprime(self):
        return self.ext.total

    def commutes(self):
        down = self.ext.gamma.compose(self.delta)
        across = self.beta.compose(self.alpha)
        return down.same_images(across)

    def verify(self):
        problems = list(self.ext.verify())
        for nm, mor in (("alpha", self.alpha), ("beta", self.beta),
                        ("delta", self.delta)):
            if mor.check_relations():
                problems.append(f"{nm} is not an algebra map")
        if not self.beta.is_surjective():
            problems.append("beta is not surjective")
        if not self.commutes():
            problems.append("square does not commute")
        return problems

    def __repr__(self):
        return f"EtaleDiagram({self.label or 'unlabeled'})"


# -- standard extensions ------------------------------------------------


def standard_etale(R, coeffs, names=("z", "u"), bound=None, name=None):
    """Extended presentation adjoining a root z of sum(a_i z^i) and a
    two-sided inverse u of the derivative sum(i a_i z^{i-1}).

    coeffs lists a_0..a_n as polynomials in the generators of R (plain
    scalars allowed); n >= 1 is required.  Inconsistency, if any,
    surfaces when the presentation is built.
    """
    a = [_as_poly(c) for c in coeffs]
    if len(a) < 2:
        raise PresentationError("need polynomial degree at least 1")
    ngens = len(R.gens)
    for c in a:
        if c.max_gen_index() >= ngens:
            raise PresentationError("coefficient uses an undeclared generator")
    for nm in names:
        if nm in R.gens:
            raise PresentationError(f"generator name {nm!r} already taken")
    z = NcPoly.gen(ngens)
    u = NcPoly.gen(ngens + 1)
    f = NcPoly.zero()
    fprime = NcPoly.zero()
    for i, ai in enumerate(a):
        f = f + ai * z ** i
        if i >= 1:
            fprime = fprime + (ai * z ** (i - 1)).scale(i)
    rels = list(R.relations)
    rels.append(f)
    rels.append(u * fprime - NcPoly.one())
    rels.append(fprime * u - NcPoly.one())
    return Presentation(R.gens + tuple(names), rels,
                        bound=bound or R.bound,
                        weights=R.weights + (0, 0),
                        name=name or f"etale({R.name or '?'})",
                        allow_signed_weights=True)


def standard_etale_data(R, coeffs):
    return StandardEtaleData(coeffs, len(R.gens), len(R.gens) + 1)


def lift_standard(diag, x, y, verify_unique=True):
    """Closed-form unique lift for a standard extension.

    x and y are preimages in A' of beta(z) and beta(u).  With
    f = sum(delta(a_i) X^i), the corrections

        p = -y f(x),     q = y (1 - f'(x+p) y)

    land in the kernel and eps(z) = x+p, eps(u) = y+q satisfies all
    three defining relations exactly; this is checked symbolically,
    as is uniqueness (via the affine lift system) unless disabled.
    Returns (p, q, eps).
    """
    if diag.std is None:
        raise PresentationError("diagram carries no standard-extension data")
    data = diag.std
    Ap = diag.Aprime
    S = diag.S
    x = Ap.normal_form(_as_poly(x))
    y = Ap.normal_form(_as_poly(y))
    gamma = diag.ext.gamma
    if gamma.apply(x) != diag.beta.apply(NcPoly.gen(data.z_index)):
        raise PreimageMismatch("gamma(x) != beta(z)")
    if gamma.apply(y) != diag.beta.apply(NcPoly.gen(data.u_index)):
        raise PreimageMismatch("gamma(y) != beta(u)")
    da = [diag.delta.apply(ai) for ai in data.coeffs]
    f_at_x = NcPoly.zero()
    xpow = Ap.unit()
    for i, ai in enumerate(da):
        f_at_x = f_at_x + Ap.mul(ai, xpow)
        xpow = Ap.mul(xpow, x)
    p = Ap.normal_form(-Ap.mul(y, f_at_x))
    xp = Ap.normal_form(x + p)
    fprime = NcPoly.zero()
    xppow = Ap.unit()
    for i in range(1, len(da)):
        fprime = fprime + Ap.mul(da[i], xppow).scale(i)
        if i < len(da) - 1:
            xppow = Ap.mul(xppow, xp)
    q = Ap.normal_form(Ap.mul(y, Ap.unit() - Ap.mul(fprime, y)))
    problems = []
    kern = diag.ext.kernel
    if not kern.contains(Ap.to_vec(p)):
        problems.append("p is outside the kernel")
    if not kern.contains(Ap.to_vec(q)):
        problems.append("q is outside the kernel")
    nR = len(diag.R.pres.gens)
    images = [None] * len(S.pres.gens)
    for j in range(nR):
        images[j] = diag.delta.images[j]
    images[data.z_index] = xp
    images[data.u_index] = Ap.normal_form(y + q)
    eps = AlgebraMorphism(S, Ap, images, name="eps")
    if eps.check_relations():
        problems.append("closed-form images violate a relation")
    if not gamma.compose(eps).same_images(diag.beta):
        problems.append("gamma*eps != beta")
    if not eps.compose(diag.alpha).same_images(diag.delta):
        problems.append("eps*alpha != delta")
    if verify_unique:
        sol = solve_lifts(diag)
        if not sol.exists:
            problems.append("affine lift system is infeasible")
        elif sol.nullspace_dim != 0:
            problems.append(
                f"lift space has dimension {sol.nullspace_dim}, expected 0")
    if problems:
        raise LiftInconsistent("; ".join(problems))
    return p, q, eps


# -- the general affine lift system --------------------------------------


class LiftSolution:
    """Outcome of solving for all lifts in a diagram."""

    __slots__ = ("exists", "unique", "nullspace_dim", "morphism",
                 "corrections", "base_images")

    def __init__(self, exists, nullspace_dim, morphism, corrections,
                 base_images):
        self.exists = exists
        self.unique = exists and nullspace_dim == 0
        self.nullspace_dim = nullspace_dim
        self.morphism = morphism
        self.corrections = corrections
        self.base_images = base_images

    def as_report(self):
        return {"exists": self.exists, "unique": self.unique,
                "lift_space_dim": self.nullspace_dim}


def _position_products(alg, word, base, j):
    """Sum over occurrences of generator j in the word of the product of
    the remaining letters (in order) at the base images.  This is the
    coefficient of a central correction to generator j, to first order."""
    total = NcPoly.zero()
    for pos, letter in enumerate(word):
        if letter != j:
            continue
        prod = alg.unit()
        for r, other in enumerate(word):
            if r != pos:
                prod = alg.mul(prod, base[other])
        total = total + prod
    return total


def solve_lifts(diag, base_images=None):
    """Solve for every algebra map eps: S -> A' with gamma*eps = beta and
    eps*alpha = delta.

    Writing eps(g_j) = x_j + c_j with gamma(x_j) = beta(g_j) and c_j in
    the kernel, centrality and zero square make every constraint
    affine-linear in the kernel coordinates of the c_j; the system is
    solved exactly.  Returns a LiftSolution.
    """
    S = diag.S
    Ap = diag.Aprime
    gamma = diag.ext.gamma
    nS = len(S.pres.gens)
    if base_images is None:
        base_images = [gamma.preimage(diag.beta.apply(NcPoly.gen(j)))
                       for j in range(nS)]
    else:
        base_images = [Ap.normal_form(_as_poly(b)) for b in base_images]
        for j, b in enumerate(base_images):
            if gamma.apply(b) != diag.beta.apply(NcPoly.gen(j)):
                raise PreimageMismatch(f"base image {j} does not lift beta")
    kelts = diag.ext.kernel_elements()
    m = len(kelts)
    nunk = nS * m
    constraints = [(rel, NcPoly.zero()) for rel in S.pres.relations]
    for i, aim in enumerate(diag.alpha.images):
        constraints.append((aim, diag.delta.images[i]))
    equations = []
    for phi, target in constraints:
        residual = Ap.to_vec(diag.Aprime.evaluate(phi, base_images)
                             - Ap.normal_form(target))
        cols = []
        for j in range(nS):
            mj = NcPoly.zero()
            for w, c in phi.terms.items():
                contrib = _position_products(Ap, w, base_images, j)
                if contrib:
                    mj = mj + contrib.scale(c)
            for el in kelts:
                cols.append(Ap.to_vec(Ap.mul(mj, el)))
        for coord in range(Ap.dim):
            row = [cols[k][coord] for k in range(nunk)]
            equations.append((row, -residual[coord]))
    particular, null_basis = solve_affine(equations, nunk)
    if particular is None:
        return LiftSolution(False, len(null_basis), None, None, base_images)
    corrections = []
    for j in range(nS):
        c = NcPoly.zero()
        for l in range(m):
            c = c + kelts[l].scale(particular[j * m + l])
        corrections.append(Ap.normal_form(c))
    images = [Ap.normal_form(base_images[j] + corrections[j])
              for j in range(nS)]
    eps = AlgebraMorphism(S, Ap, images, name="eps")
    if eps.check_relations():
        raise LiftInconsistent("solved lift violates a relation")
    if not gamma.compose(eps).same_images(diag.beta):
        raise LiftInconsistent("solved lift does not project to beta")
    if not eps.compose(diag.alpha).same_images(diag.delta):
        raise LiftInconsistent("solved lift does not restrict to delta")
    return LiftSolution(True, len(null_basis), eps, corrections, base_images)


def check_formally_etale(alpha, family):
    """Existence and uniqueness of lifts for alpha over a finite family of
    diagrams.  The verdict is explicitly 'verified over family': a
    universally quantified property cannot be decided by enumeration."""
    cases = []
    checked = 0
    ok = True
    for idx, diag in enumerate(family):
        entry = {"index": idx, "label": diag.label}
        if diag.alpha is not alpha and not (
                _same_presentation(diag.alpha.source.pres, alpha.source.pres)
                and _same_presentation(diag.alpha.target.pres,
                                       alpha.target.pres)
                and diag.alpha.same_images(alpha)):
            entry["alpha_matches"] = False
            entry["skipped"] = True
            cases.append(entry)
            continue
        if not diag.commutes():
            entry["commutes"] = False
            entry["skipped"] = True
            cases.append(entry)
            continue
        entry["commutes"] = True
        sol = solve_lifts(diag)
        entry.update(sol.as_report())
        checked += 1
        ok = ok and sol.exists and sol.unique
        cases.append(entry)
    return {"map": alpha.name or "alpha",
            "semantics": "verified over supplied family",
            "cases": cases,
            "diagrams_checked": checked,
            "diagrams_skipped": len(cases) - checked,
            "formally_etale_over_family": ok and checked > 0}


# -- derivations ----------------------------------------------------------


class CentralBimoduleData:
    """Finite module over a commutative image: a carrier algebra, the
    action map from S, and the submodule actually used (defaults to the
    whole carrier; pass a zero subspace for the zero module)."""

    __slots__ = ("carrier", "action", "submodule")

    def __init__(self, carrier, action, submodule=None):
        self.carrier = carrier
        self.action = action
        self.submodule = submodule if submodule is not None \
            else carrier.full_subspace()

    @classmethod
    def abelianized(cls, alg, cut=None):
        """Abelianization of alg acting on itself, optionally restricted
        to the words of length at most cut.  Pass the visibility cut
        bound - (max relation degree - 1) to keep every Leibniz
        constraint of a derivation system inside the window; module
        values above it have constraints the window cannot express."""
        quot = abelianization(alg)
        act = AlgebraMorphism(alg, quot,
                              [NcPoly.gen(i)
                               for i in range(len(alg.pres.gens))],
                              name="ab")
        sub = None
        if cut is not None:
            vecs = [quot.to_vec(NcPoly.monomial(w))
                    for w in quot.basis if len(w) <= cut]
            sub = Subspace.from_vectors(vecs, quot.dim)
        return cls(quot, act, sub)

    @classmethod
    def abelianized_visible(cls, alg):
        maxdeg = max((r.degree() for r in alg.pres.relations), default=1)
        return cls.abelianized(alg, max(alg.pres.bound - maxdeg + 1, 0))

    def zero_like(self):
        return CentralBimoduleData(self.carrier, self.action,
                                   self.carrier.zero_subspace())


def _derivation_rows(alg_target, action_images, relations, ngens, basis_elts):
    """Linear constraints on candidate derivation values (one element of
    the module per generator) coming from the Leibniz rule applied to
    each relation."""
    T = alg_target
    m = len(basis_elts)
    rows = []
    for rel in relations:
        cols = []
        for j in range(ngens):
            mj = NcPoly.zero()
            for w, c in rel.terms.items():
                for pos, letter in enumerate(w):
                    if letter != j:
                        continue
                    pre = T.unit()
                    for r in range(pos):
                        pre = T.mul(pre, action_images[w[r]])
                    post = T.unit()
                    for r in range(pos + 1, len(w)):
                        post = T.mul(post, action_images[w[r]])
                    mj = mj + T.mul(pre, post).scale(c)
            for el in basis_elts:
                cols.append(T.to_vec(T.mul(mj, el)))
        for coord in range(T.dim):
            rows.append([cols[k][coord] for k in range(ngens * m)])
    return rows


def derivation_transfer_check(alpha, module):
    """Compare derivation spaces Der(S, M) and Der(R, M) along alpha and
    report whether restriction is a bijection."""
    R = alpha.source
    S = alpha.target
    T = module.carrier
    basis_elts = [T.from_vec(v)
                  for v in module.submodule.basis_fractions()]
    m = len(basis_elts)
    nS = len(S.pres.gens)
    nR = len(R.pres.gens)
    act_S = list(module.action.images)
    act_R = [module.action.apply(im) for im in alpha.images]
    rows_S = _derivation_rows(T, act_S, S.pres.relations, nS, basis_elts)
    rows_R = _derivation_rows(T, act_R, R.pres.relations, nR, basis_elts)
    _, der_S = solve_affine([(r, Fraction(0)) for r in rows_S], nS * m)
    _, der_R = solve_affine([(r, Fraction(0)) for r in rows_R], nR * m)
    space_R = Subspace.from_vectors(der_R, nR * m)
    # Restriction d -> d*alpha, expressed on the candidate coordinates:
    # the value on an R-generator is the Leibniz expansion of its
    # alpha-image.
    restricted = []
    for d in der_S:
        values = []
        for i in range(nR):
            val = NcPoly.zero()
            for w, c in alpha.images[i].terms.items():
                for pos, letter in enumerate(w):
                    pre = T.unit()
                    for r in range(pos):
                        pre = T.mul(pre, act_S[w[r]])
                    post = T.unit()
                    for r in range(pos + 1, len(w)):
                        post = T.mul(post, act_S[w[r]])
                    dj = NcPoly.zero()
                    for l in range(m):
                        dj = dj + basis_elts[l].scale(d[letter * m + l])
                    val = val + T.mul(T.mul(pre, dj), post).scale(c)
            values.append(T.normal_form(val))
        vec = []
        for val in values:
            coords = module.submodule.coords(T.to_vec(val))
            if coords is None:
                raise LiftInconsistent(
                    "restricted derivation leaves the module")
            vec.extend(coords)
        restricted.append(vec)
    image = Subspace.from_vectors(restricted, nR * m)
    injective = image.dim == len(der_S)
    surjective = image == space_R
    return {"dim_der_S": len(der_S),
            "dim_der_R": len(der_R),
            "restriction_injective": injective,
            "restriction_surjective": surjective,
            "bijective": injective and surjective
            and len(der_S) == len(der_R)}


# -- class-d closure and invariance harnesses -----------------------------


def nd_closure_check(diag, d):
    """Verify the diagram hypotheses and test the predicted vanishing of
    the (d+1)-st filtration term of the extension total."""
    problems = diag.verify()
    Ap = diag.Aprime
    dims = [nc_filtration(Ap, k).dim for k in range(d + 2)]
    return {"d": d,
            "label": diag.label,
            "hypotheses_ok": not problems,
            "problems": problems,
            "total_dim": Ap.dim,
            "kernel_dim": diag.ext.kernel.dim,
            "filtration_dims": dims,
            "f_top_dim": dims[d + 1],
            "vanishes": dims[d + 1] == 0}


def topological_invariance_harness(X_pres, coeffs, d=None):
    """Lift a commutative standard extension of the abelianization to a
    standard extension of X and check the lift stays in class d with the
    expected abelianization.

    coeffs are the defining coefficients, given as polynomials in the
    generators of X (their classes present the commutative datum).
    """
    X = build_truncated(X_pres)
    if d is None:
        d = 0
        while not in_nilpotency_class(X, d):
            d += 1
            if d > X_pres.bound:
                raise AlgebraError("input algebra has no finite class")
    elif not in_nilpotency_class(X, d):
        raise AlgebraError(f"input algebra is not in class {d}")
    try:
        presented = build_truncated(standard_etale(X_pres, coeffs))
    except InconsistentPresentation as exc:
        raise LiftInconsistent(f"lifted presentation collapses: {exc}")
    # the extension of a class-d ring is taken in the class-d category
    lifted = quotient_rd(presented, d)
    in_nd = in_nilpotency_class(lifted, d)
    # tower stability: building the same extension one class higher and
    # reducing back must land on the class-d extension
    upstairs = quotient_rd(presented, d + 1)
    tower = quotient_rd(upstairs, d)
    Xab = abelianization(X)
    commutative_side = abelianization(
        build_truncated(standard_etale(Xab.pres, coeffs)))
    lift_ab = abelianization(lifted)
    matches = lift_ab.same_structure(commutative_side)
    return {"d": d,
            "base_dim": X.dim,
            "lift_dim": lifted.dim,
            "in_nd": in_nd,
            "upstairs_dim": upstairs.dim,
            "tower_stable": tower.dim == lifted.dim,
            "commutative_dim": commutative_side.dim,
            "abelianization_matches": matches,
            "ok": in_nd and matches and tower.dim == lifted.dim}


# -- deterministic diagram families ---------------------------------------


def rational_base(bound=4, name="Q"):
    """Presentation of the scalars: no generators."""
    return Presentation((), (), bound=bound, name=name)


def class_one_free_base(bound=3):
    """The free algebra on x, y reduced to class 1."""
    free = Presentation(("x", "y"), (), bound=bound, name="free2")
    return quotient_rd(build_truncated(free), 1).pres


def _character_relations(S_pres, char_values, eps_names):
    """Relations pinning each added generator e to a one-dimensional
    central line: e*g = g*e = char(g)*e, and all pairwise products of
    added generators vanish."""
    ngens = len(S_pres.gens)
    neps = len(eps_names)
    rels = []
    for t in range(neps):
        e = NcPoly.gen(ngens + t)
        for a in range(ngens):
            g = NcPoly.gen(a)
            lam = Fraction(char_values[a])
            rels.append(e * g - e.scale(lam))
            rels.append(g * e - e.scale(lam))
    for t in range(neps):
        for s in range(neps):
            rels.append(NcPoly.gen(ngens + t) * NcPoly.gen(ngens + s))
    return rels


def _regular_relations(S_pres, eps_name_index):
    """Relations making the added generator span a copy of the
    abelianized base below the top degree: e central, e squared zero,
    e times every generator commutator zero, and e times every word of
    the next-to-top length zero.  The cutoff keeps each uniqueness
    constraint on a lift correction inside the degree window; without
    it the top-degree corrections would be unconstrained artifacts."""
    ngens = len(S_pres.gens)
    e = NcPoly.gen(eps_name_index)
    rels = [e * e]
    for a in range(ngens):
        g = NcPoly.gen(a)
        rels.append(e * g - g * e)
    for a in range(ngens):
        for b in range(a + 1, ngens):
            rels.append(e * commutator_poly(NcPoly.gen(a), NcPoly.gen(b)))
    cut = S_pres.bound - 1
    if cut >= 1:
        for w in itertools.product(range(ngens), repeat=cut):
            mono = NcPoly({tuple(w): Fraction(1)})
            rels.append(e * mono)
            rels.append(mono * e)
    return rels


def square_zero_diagram(R_alg, S_alg, alpha, *, shape="char", char=None,
                        neps=1, deforms=(), extra_relations=(),
                        delta_twists=None, quotient_extras=(), std=None,
                        label=""):
    """Build one lifting diagram deterministically.

    The base of the extension is A = S / quotient_extras (defaults to S
    itself, with beta the identity).  The total A' replays A's
    presentation with added central generators e_t and the listed
    relation deformations; deforms is a list of (relation_index,
    kernel_poly) pairs where kernel_poly is written in the generators
    of A', and extra_relations appends whole new relations (anything
    whose image under the projection vanishes, e.g. a commutator minus
    a kernel element).  delta_twists optionally adds a kernel-valued
    twist to each generator image of delta.
    """
    S_pres = S_alg.pres
    if quotient_extras:
        A_pres = S_pres.with_extra_relations(
            [_as_poly(q) for q in quotient_extras],
            name=f"{S_pres.name or 'S'}/q")
        A = build_truncated(A_pres)
    else:
        A_pres = S_pres
        A = S_alg
    eps_names = tuple(f"e{t}" for t in range(neps))
    total_gens = A_pres.gens + eps_names
    rels = [NcPoly(dict(r.terms)) for r in A_pres.relations]
    for idx, extra in deforms:
        rels[idx] = rels[idx] + _as_poly(extra)
    rels.extend(_as_poly(r) for r in extra_relations)
    if shape == "char":
        if char is None:
            raise PresentationError("character kernel needs char values")
        rels.extend(_character_relations(A_pres, char, eps_names))
    elif shape == "regular":
        if neps != 1:
            raise PresentationError("regular kernel uses one added generator")
        rels.extend(_regular_relations(A_pres, len(A_pres.gens)))
    else:
        raise PresentationError(f"unknown kernel shape {shape!r}")
    total_pres = Presentation(total_gens, rels, bound=A_pres.bound,
                              weights=A_pres.weights + (0,) * neps,
                              name=f"{A_pres.name or 'A'}+I",
                              allow_signed_weights=True)
    total = build_truncated(total_pres)
    gamma = AlgebraMorphism(
        total, A,
        [NcPoly.gen(i) for i in range(len(A_pres.gens))]
        + [NcPoly.zero()] * neps,
        name="gamma")
    ext = CentralExtension(gamma)
    beta = AlgebraMorphism(S_alg, A,
                           [NcPoly.gen(i) for i in range(len(S_pres.gens))],
                           name="beta")
    nR = len(R_alg.pres.gens)
    delta_imgs = []
    for i in range(nR):
        img = NcPoly.gen(i)
        if delta_twists:
            img = img + _as_poly(delta_twists[i])
        delta_imgs.append(img)
    delta = AlgebraMorphism(R_alg, total, delta_imgs, name="delta")
    if delta.check_relations():
        raise PresentationError("delta twists violate base relations")
    for i in range(nR):
        probe = delta_imgs[i] - NcPoly.gen(i)
        if probe and not ext.kernel.contains(total.to_vec(
                total.normal_form(probe))):
            raise PresentationError("delta twist leaves the kernel")
    diag = EtaleDiagram(alpha, beta, ext, delta, std=std, label=label)
    if not diag.commutes():
        raise PresentationError("constructed square does not commute")
    return diag


def lift_test_family(bound_small=3, bound_large=4):
    """Deterministic diagrams for the standard double-point extension
    z^2 = 1 over the scalars and over the class-1 free base; used by
    the lifting property harness."""
    out = []
    dp = (-1, 0, 1)

    # scalars base
    Rq = build_truncated(rational_base(bound_large))
    Sq_pres = standard_etale(Rq.pres, dp, name="dblpt")
    Sq = build_truncated(Sq_pres)
    aq = AlgebraMorphism(Rq, Sq, [], name="alpha")
    sq = standard_etale_data(Rq.pres, dp)
    z, u = NcPoly.gen(0), NcPoly.gen(1)
    half = Fraction(1, 2)
    plus = [1, half]
    minus = [-1, -half]

    def qdiag(**kw):
        out.append(square_zero_diagram(Rq, Sq, aq, std=sq, **kw))

    qdiag(shape="char", char=plus, label="Q trivial kernel")
    qdiag(shape="char", char=plus, deforms=[(0, NcPoly.gen(2))],
          label="Q deform root relation")
    qdiag(shape="char", char=minus, deforms=[(1, NcPoly.gen(2).scale(-2))],
          label="Q deform left inverse relation")
    qdiag(shape="char", char=plus, deforms=[(2, NcPoly.gen(2))],
          label="Q deform right inverse relation")
    qdiag(shape="char", char=minus, neps=2,
          deforms=[(0, NcPoly.gen(2) - NcPoly.gen(3)), (1, NcPoly.gen(3))],
          label="Q two-line kernel")
    qdiag(shape="regular", label="Q regular kernel")
    qdiag(shape="regular",
          deforms=[(0, NcPoly.gen(2) * z), (2, NcPoly.gen(2).scale(half))],
          label="Q regular kernel deformed")
    qdiag(shape="char", char=plus, quotient_extras=[z - NcPoly.one()],
          label="Q quotient to one branch")
    qdiag(shape="char", char=plus, neps=3,
          deforms=[(0, NcPoly.gen(2) + NcPoly.gen(4))],
          label="Q three-line kernel")
    qdiag(shape="regular", deforms=[(1, NcPoly.gen(2) * u)],
          label="Q regular kernel inverse deform")

    # class-1 free base at the small bound
    Rf_pres = class_one_free_base(bound_small)
    Rf = build_truncated(Rf_pres)
    Sf_pres = standard_etale(Rf_pres, dp, name="dblpt_r1")
    Sf = build_truncated(Sf_pres)
    af = AlgebraMorphism.named_inclusion(Rf, Sf, name="alpha")
    sf = standard_etale_data(Rf_pres, dp)
    x, yg = NcPoly.gen(0), NcPoly.gen(1)
    zf, uf = NcPoly.gen(2), NcPoly.gen(3)
    cf = [0, 0, 1, half]
    cfm = [0, 0, -1, -half]
    e4 = NcPoly.gen(4)

    def fdiag(**kw):
        out.append(square_zero_diagram(Rf, Sf, af, std=sf, **kw))

    nrel = len(Rf_pres.relations)
    fdiag(shape="char", char=cf, label="r1 trivial kernel")
    fdiag(shape="char", char=cf, deforms=[(nrel, e4)],
          label="r1 deform root relation")
    fdiag(shape="char", char=cfm, deforms=[(nrel + 1, e4.scale(2))],
          label="r1 deform left inverse relation")
    fdiag(shape="char", char=cf, deforms=[(nrel + 2, e4.scale(half))],
          label="r1 deform right inverse relation")
    fdiag(shape="char", char=cf, delta_twists=[e4, e4.scale(-2)],
          label="r1 twisted delta")
    fdiag(shape="char", char=cfm, neps=2,
          deforms=[(nrel, e4 - NcPoly.gen(5)), (nrel + 2, NcPoly.gen(5))],
          delta_twists=[NcPoly.gen(5), NcPoly.zero()],
          label="r1 two-line kernel twisted")
    # no deforms with a regular kernel at this bound: a deformed root
    # relation turns x*(z - 2u) into a kernel direction whose centrality
    # witness e*[x,y]*u sits in degree 4, outside the window
    fdiag(shape="regular", label="r1 regular kernel")
    fdiag(shape="char", char=cf, deforms=[(nrel, e4.scale(3))],
          delta_twists=[NcPoly.zero(), e4],
          label="r1 deformed twisted other leg")
    fdiag(shape="char", char=cf, quotient_extras=[zf - NcPoly.one()],
          label="r1 quotient to one branch")

    # variable coefficient: root of z^2 = 1 - xy over the class-1 base
    var = [NcPoly.gen(0) * NcPoly.gen(1) - NcPoly.one(), NcPoly.zero(),
           NcPoly.one()]
    Sv_pres = standard_etale(Rf_pres, var, name="varpt_r1")
    Sv = build_truncated(Sv_pres)
    av = AlgebraMorphism.named_inclusion(Rf, Sv, name="alpha")
    sv = standard_etale_data(Rf_pres, var)
    out.append(square_zero_diagram(
        Rf, Sv, av, std=sv, shape="char", char=cf,
        label="r1 variable coefficient trivial"))
    out.append(square_zero_diagram(
        Rf, Sv, av, std=sv, shape="char", char=cf, deforms=[(nrel, e4)],
        label="r1 variable coefficient deformed"))

    # class-1 free base at the large bound
    Rb_pres = class_one_free_base(bound_large)
    Rb = build_truncated(Rb_pres)
    Sb_pres = standard_etale(Rb_pres, dp, name="dblpt_r1b")
    Sb = build_truncated(Sb_pres)
    ab = AlgebraMorphism.named_inclusion(Rb, Sb, name="alpha")
    sb = standard_etale_data(Rb_pres, dp)
    nrelb = len(Rb_pres.relations)
    out.append(square_zero_diagram(
        Rb, Sb, ab, std=sb, shape="char", char=cf,
        label="r1 large bound trivial"))
    out.append(square_zero_diagram(
        Rb, Sb, ab, std=sb, shape="char", char=cf,
        deforms=[(nrelb, e4)], delta_twists=[e4, NcPoly.zero()],
        label="r1 large bound deformed twisted"))
    # the degree-4 window has room for the centrality witnesses of a
    # deformed regular kernel, so these live at the large bound
    out.append(square_zero_diagram(
        Rb, Sb, ab, std=sb, shape="regular", deforms=[(nrelb, e4)],
        label="r1 large bound regular deformed"))
    out.append(square_zero_diagram(
        Rb, Sb, ab, std=sb, shape="regular",
        deforms=[(nrelb + 1, e4.scale(2))],
        delta_twists=[e4, NcPoly.zero()],
        label="r1 large bound regular deformed twisted"))
    return out


def closure_family(d):
    """Deterministic diagrams satisfying the class-d closure hypotheses:
    the extension under test is a class-d standard extension, beta is
    surjective and gamma is a central extension in plain rings, with
    the total deliberately presented with class-violating deformations
    whenever the kernel allows them."""
    dp = (-1, 0, 1)
    out = []
    if d == 0:
        R = build_truncated(rational_base(3))
        S = build_truncated(standard_etale(R.pres, dp, name="dblpt"))
        alpha = AlgebraMorphism(R, S, [], name="alpha")
        std = standard_etale_data(R.pres, dp)
        z = NcPoly.gen(0)
        u = NcPoly.gen(1)
        e = NcPoly.gen(2)
        plus = [1, Fraction(1, 2)]
        out.append(square_zero_diagram(
            R, S, alpha, std=std, shape="char", char=plus,
            label="d0 trivial"))
        out.append(square_zero_diagram(
            R, S, alpha, std=std, shape="char", char=plus,
            deforms=[(0, e)], label="d0 deform root relation"))
        out.append(square_zero_diagram(
            R, S, alpha, std=std, shape="char", char=plus,
            extra_relations=[commutator_poly(z, u) - e],
            label="d0 commutator forced into kernel"))
        out.append(square_zero_diagram(
            R, S, alpha, std=std, shape="regular",
            extra_relations=[commutator_poly(z, u) - e * z],
            deforms=[(0, e)],
            label="d0 regular commutator forced into kernel"))
        # Equivalent presentation carrying the commutator explicitly, so
        # it can be deformed rather than adjoined.
        alt_pres = Presentation(
            ("z", "u"),
            [z * z - NcPoly.one(),
             (u * z).scale(2) - NcPoly.one(),
             commutator_poly(z, u)],
            bound=3, name="dblpt_alt")
        Salt = build_truncated(alt_pres)
        alpha_alt = AlgebraMorphism(R, Salt, [], name="alpha")
        out.append(square_zero_diagram(
            R, Salt, alpha_alt, std=std, shape="char", char=plus,
            deforms=[(2, e)], label="d0 deform commutator relation"))
    elif d == 1:
        Rp = class_one_free_base(3)
        R = build_truncated(Rp)
        Sraw = build_truncated(standard_etale(Rp, dp, name="dblpt_r1"))
        S = quotient_rd(Sraw, 1)
        alpha = AlgebraMorphism.named_inclusion(R, S, name="alpha")
        std = standard_etale_data(Rp, dp)
        e = NcPoly.gen(4)
        cf = [0, 0, 1, Fraction(1, 2)]
        nbase = len(Rp.relations)
        extra = list(range(len(Sraw.pres.relations), len(S.pres.relations)))
        if not extra:
            raise AlgebraError("expected class-forcing relations at d=1")
        out.append(square_zero_diagram(
            R, S, alpha, std=std, shape="char", char=cf,
            label="d1 trivial"))
        out.append(square_zero_diagram(
            R, S, alpha, std=std, shape="char", char=cf,
            deforms=[(nbase, e)], label="d1 deform root relation"))
        # deforming a class relation is only forced back to zero by
        # identities one degree above the relation, so those two
        # diagrams get a window with room for the forcing
        Rpw = class_one_free_base(4)
        Rw = build_truncated(Rpw)
        Sww = build_truncated(standard_etale(Rpw, dp, name="dblpt_r1w"))
        Sw = quotient_rd(Sww, 1)
        alphaw = AlgebraMorphism.named_inclusion(Rw, Sw, name="alpha")
        stdw = standard_etale_data(Rpw, dp)
        extraw = list(range(len(Sww.pres.relations), len(Sw.pres.relations)))
        for k, idx in enumerate(extraw[:2]):
            out.append(square_zero_diagram(
                Rw, Sw, alphaw, std=stdw, shape="char", char=cf,
                deforms=[(idx, e)],
                label=f"d1 deform class relation {k}"))
        out.append(square_zero_diagram(
            R, S, alpha, std=std, shape="regular",
            deforms=[(extra[0], e * NcPoly.gen(0))],
            delta_twists=[e, NcPoly.zero()],
            label="d1 regular deform class relation twisted"))
        out.append(square_zero_diagram(
            R, S, alpha, std=std, shape="char", char=cf,
            quotient_extras=[NcPoly.gen(2) - NcPoly.one()],
            deforms=[(nbase + 1, e)],
            label="d1 quotient branch deformed"))
    elif d == 2:
        free = Presentation(("x", "y"), (), bound=4, name="free2")
        Rq = quotient_rd(build_truncated(free), 2)
        Rp = Rq.pres
        R = Rq
        Sraw = build_truncated(standard_etale(Rp, dp, name="dblpt_r2"))
        S = quotient_rd(Sraw, 2)
        alpha = AlgebraMorphism.named_inclusion(R, S, name="alpha")
        std = standard_etale_data(Rp, dp)
        e = NcPoly.gen(4)
        cf = [0, 0, 1, Fraction(1, 2)]
        nbase = len(Rp.relations)
        extra = list(range(len(Sraw.pres.relations), len(S.pres.relations)))
        out.append(square_zero_diagram(
            R, S, alpha, std=std, shape="char", char=cf,
            label="d2 trivial"))
        out.append(square_zero_diagram(
            R, S, alpha, std=std, shape="char", char=cf,
            deforms=[(nbase, e)], label="d2 deform root relation"))
        if extra:
            out.append(square_zero_diagram(
                R, S, alpha, std=std, shape="char", char=cf,
                deforms=[(extra[0], e)],
                label="d2 deform class relation"))
    else:
        raise AlgebraError("closure family covers d in {0, 1, 2}")
    return out
