"""Exact linear algebra over Q, built on the integer rref kernel.

Vectors are lists of Fraction (or int); internally every row is scaled
to a primitive integer vector, so subspaces get a canonical echelon
basis and equality of spans is equality of matrices.
"""

from fractions import Fraction
from math import gcd

from ._accel import rref


def _int_row(vec):
    den = 1
    for x in vec:
        d = x.denominator if isinstance(x, Fraction) else 1
        den = den // gcd(den, d) * d
    return [int(x * den) for x in vec]


def int_rows(vectors):
    return [_int_row(v) for v in vectors]


def qrref(vectors, ncols):
    """Canonical integer echelon basis of the span of rational vectors."""
    return rref(int_rows(vectors), ncols)


class Subspace:
    """Subspace of Q^n held as a canonical primitive-integer RREF basis.

    Equal subspaces compare equal as objects; dim, membership,
    coordinates and sums are exact.
    """

    __slots__ = ("ambient", "rows", "pivots")

    def __init__(self, ambient, rows, pivots):
        self.ambient = ambient
        self.rows = rows
        self.pivots = pivots

    @classmethod
    def from_vectors(cls, vectors, ambient):
        rows, pivots = qrref(vectors, ambient)
        return cls(ambient, rows, pivots)

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, [], [])

    @classmethod
    def full(cls, ambient):
        rows = [[0] * ambient for _ in range(ambient)]
        for i in range(ambient):
            rows[i][i] = 1
        return cls(ambient, rows, list(range(ambient)))

    @property
    def dim(self):
        return len(self.rows)

    def is_zero(self):
        return not self.rows

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ambient, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def reduce(self, vec):
        """Residual of vec after eliminating all pivot coordinates."""
        res = [Fraction(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            c = res[p]
            if c:
                c = c / row[p]
                for j in range(self.ambient):
                    if row[j]:
                        res[j] -= c * row[j]
        return res

    def contains(self, vec):
        return not any(self.reduce(vec))

    def coords(self, vec):
        """Coefficients of vec on self.rows, or None if not contained."""
        res = [Fraction(x) for x in vec]
        cs = []
        for row, p in zip(self.rows, self.pivots):
            c = res[p] / row[p]
            cs.append(c)
            if c:
                for j in range(self.ambient):
                    if row[j]:
                        res[j] -= c * row[j]
        if any(res):
            return None
        return cs

    def contains_subspace(self, other):
        return all(self.contains(r) for r in other.rows)

    def plus(self, other):
        rows, pivots = rref([list(r) for r in self.rows + other.rows], self.ambient)
        return Subspace(self.ambient, rows, pivots)

    @staticmethod
    def sum_of(subspaces, ambient):
        rows = [list(r) for s in subspaces for r in s.rows]
        red, pivots = rref(rows, ambient)
        return Subspace(ambient, red, pivots)

    def basis_fractions(self):
        return [[Fraction(x) for x in row] for row in self.rows]


def solve_affine(equations, nunknowns):
    """Solve a rational linear system given as (coeff_row, rhs) pairs.

    Returns (particular, nullspace_basis) with Fraction entries, where
    particular is None when the system is inconsistent.  The nullspace
    basis always refers to the homogeneous system.
    """
    aug = []
    for coeffs, rhs in equations:
        aug.append(list(coeffs) + [rhs])
    rows, pivots = qrref(aug, nunknowns + 1)
    consistent = all(p < nunknowns for p in pivots)
    particular = None
    if consistent:
        particular = [Fraction(0)] * nunknowns
        for row, p in zip(rows, pivots):
            particular[p] = Fraction(row[nunknowns], row[p])
    piv_set = set(p for p in pivots if p < nunknowns)
    free_cols = [j for j in range(nunknowns) if j not in piv_set]
    null_basis = []
    for f in free_cols:
        vec = [Fraction(0)] * nunknowns
        vec[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            if p < nunknowns and row[f]:
                vec[p] = Fraction(-row[f], row[p])
        null_basis.append(vec)
    return particular, null_basis


def nullspace(rows_of_a, nunknowns):
    _, basis = solve_affine([(r, Fraction(0)) for r in rows_of_a], nunknowns)
    return basis


def solve_matrix(a_columns, b_columns):
    """Solve A X = B columnwise; A given by independent columns.

    Returns X as a list of rows (k x r), or None when some column of B
    falls outside the column span of A.  A must have full column rank,
    which makes every A-column a pivot column of [A | B].
    """
    k = len(a_columns)
    r = len(b_columns)
    m = len(a_columns[0]) if a_columns else len(b_columns[0])
    rows = []
    for i in range(m):
        rows.append([col[i] for col in a_columns] + [col[i] for col in b_columns])
    red, pivots = qrref(rows, k + r)
    if any(p >= k for p in pivots):
        return None
    if len(pivots) != k:
        raise ValueError("solve_matrix needs full column rank")
    x = [[Fraction(0)] * r for _ in range(k)]
    for row, p in zip(red, pivots):
        for s in range(r):
            x[p][s] = Fraction(row[k + s], row[p])
    return x


def rank(vectors, ncols):
    return len(qrref(vectors, ncols)[0])
