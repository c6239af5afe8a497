"""Exact arithmetic in cyclotomic fields.

Elements of Q(zeta_e) are residues modulo the e-th cyclotomic
polynomial, stored as Fraction coefficient vectors of length phi(e).
Everything downstream (characters, kernels, transforms) works over
these, so identity checks are exact equalities rather than tolerances.
"""

from fractions import Fraction
from functools import lru_cache


# -- dense rational polynomials, ascending coefficients ------------------

def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def _poly_divmod(a, b):
    """Division with remainder over the rationals; b must be nonzero."""
    a = _trim([Fraction(c) for c in a])
    b = _trim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    inv = Fraction(1) / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv
        if c:
            q[k] = c
            for j, cb in enumerate(b):
                a[k + j] -= c * cb
    return _trim(q), _trim(a[:len(b) - 1])


def _poly_xgcd(a, b):
    """(g, s, t) with s*a + t*b = g, g monic, over the rationals."""
    r0, r1 = [Fraction(c) for c in a], [Fraction(c) for c in b]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while _trim(list(r1)):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _trim([x - y for x, y in _zip_pad(s0, _poly_mul(q, s1))])
        t0, t1 = t1, _trim([x - y for x, y in _zip_pad(t0, _poly_mul(q, t1))])
    if not r0:
        return [], s0, t0
    lead = r0[-1]
    return ([c / lead for c in r0], [c / lead for c in s0],
            [c / lead for c in t0])


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e):
    """Integer coefficients of the e-th cyclotomic polynomial, ascending."""
    if e < 1:
        raise ValueError("order must be positive")
    num = [Fraction(-1)] + [Fraction(0)] * (e - 1) + [Fraction(1)]
    for d in range(1, e):
        if e % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            if rem:
                raise ArithmeticError("cyclotomic division left a remainder")
    if any(c.denominator != 1 for c in num):
        raise ArithmeticError("cyclotomic polynomial not integral")
    return tuple(int(c) for c in num)


class CyclotomicField:
    """Q(zeta_e) as Q[x] modulo the e-th cyclotomic polynomial."""

    _cache = {}

    def __new__(cls, e):
        e = int(e)
        if e in cls._cache:
            return cls._cache[e]
        self = super().__new__(cls)
        self.e = e
        self.modulus = cyclotomic_polynomial(e)
        self.degree = len(self.modulus) - 1
        self._zeta_powers = None
        cls._cache[e] = self
        return self

    def __repr__(self):
        return f"CyclotomicField({self.e})"

    def _reduce(self, coeffs):
        _, rem = _poly_divmod(list(coeffs), list(self.modulus))
        rem = rem + [Fraction(0)] * (self.degree - len(rem))
        return tuple(rem)

    def element(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) >= self.degree + 1:
            return Cyclotomic(self, self._reduce(coeffs))
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        return Cyclotomic(self, tuple(coeffs))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def rational(self, q):
        return self.element([Fraction(q)])

    def zeta(self, k=1):
        """The k-th power of the chosen primitive e-th root of unity."""
        k %= self.e
        if self._zeta_powers is None:
            powers = []
            acc = self.one()
            gen = self.element([0, 1]) if self.degree > 1 else \
                self.element([self.modulus_root()])
            for _ in range(self.e):
                powers.append(acc)
                acc = acc * gen
            self._zeta_powers = powers
        return self._zeta_powers[k]

    def modulus_root(self):
        # degree-1 modulus x - r: the root r itself (e = 1 gives 1,
        # e = 2 gives -1)
        return -Fraction(self.modulus[0], self.modulus[1])


class Cyclotomic:
    """An element of a CyclotomicField; immutable, exact."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic values are immutable")

    # -- helpers ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.field is not self.field:
                raise ValueError("cyclotomic orders differ")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def is_zero(self):
        return not any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not a rational value")
        return self.coeffs[0]

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.field,
                          [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prod = _poly_mul(list(self.coeffs), list(other.coeffs))
        return self.field.element(prod)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        g, s, _ = _poly_xgcd(list(self.coeffs), list(self.field.modulus))
        if len(g) != 1:
            raise ArithmeticError("modulus not coprime to element")
        inv = [c / g[0] for c in s]
        return self.field.element(inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.field.rational(other) / self

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.e, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_zero():
            return "Cyc(0)"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*z")
            else:
                parts.append(f"{c}*z^{k}")
        return "Cyc(" + " + ".join(parts) + f"; e={self.field.e})"
