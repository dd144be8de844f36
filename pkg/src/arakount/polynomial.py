"""Sparse homogeneous polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from math import gcd, lcm
from typing import Iterable, Mapping

from .errors import InvalidPolynomial, NonHomogeneous

LETTERS = "xyzw"


def variable_names(nvars):
    if nvars <= len(LETTERS):
        return list(LETTERS[:nvars])
    return [f"x{i}" for i in range(nvars)]


def _as_number(c):
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def monomials(nvars, degree):
    """Exponent vectors of total degree ``degree`` in graded-lex order.

    The order is descending lexicographic on exponent tuples, so for three
    variables and degree 2 it reads x^2, xy, xz, y^2, yz, z^2.
    """
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class HomogeneousPolynomial:
    """Immutable map from exponent tuples to nonzero exact coefficients.

    The zero polynomial is allowed as an arithmetic value; its ``degree`` is
    ``None``. Any nonzero instance is checked for homogeneity.
    """

    __slots__ = ("_terms", "nvars", "degree", "_hash")

    def __init__(self, terms: Mapping[tuple, object], nvars: int | None = None):
        clean = {}
        for e, c in terms.items():
            e = tuple(int(k) for k in e)
            c = _as_number(c)
            if c == 0:
                continue
            if any(k < 0 for k in e):
                raise InvalidPolynomial(f"negative exponent in {e}")
            clean[e] = clean.get(e, 0) + c
            if clean[e] == 0:
                del clean[e]
        if nvars is None:
            if not clean:
                raise InvalidPolynomial("cannot infer the number of variables of 0")
            nvars = len(next(iter(clean)))
        for e in clean:
            if len(e) != nvars:
                raise InvalidPolynomial(f"exponent {e} does not have {nvars} entries")
        degree = None
        for e in clean:
            d = sum(e)
            if degree is None:
                degree = d
            elif d != degree:
                raise NonHomogeneous(degree, d)
        self._terms = clean
        self.nvars = nvars
        self.degree = degree
        self._hash = None

    @classmethod
    def zero(cls, nvars):
        return cls({}, nvars)

    @classmethod
    def variable(cls, i, nvars):
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars)

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def n(self):
        """Ambient projective dimension."""
        return self.nvars - 1

    def is_zero(self):
        return not self._terms

    def items(self):
        return self._terms.items()

    def coefficient(self, e):
        return self._terms.get(tuple(e), 0)

    def sorted_terms(self):
        return sorted(self._terms.items(), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise InvalidPolynomial("zero polynomial has no leading term")
        e = max(self._terms)
        return e, self._terms[e]

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other):
        if self.nvars != other.nvars:
            raise InvalidPolynomial("variable counts differ")

    def __add__(self, other):
        self._check(other)
        t = dict(self._terms)
        for e, c in other._terms.items():
            t[e] = t.get(e, 0) + c
        return HomogeneousPolynomial(t, self.nvars)

    def __neg__(self):
        return HomogeneousPolynomial({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _as_number(c)
        return HomogeneousPolynomial({e: v * c for e, v in self._terms.items()}, self.nvars)

    def __mul__(self, other):
        if not isinstance(other, HomogeneousPolynomial):
            return self.scale(other)
        self._check(other)
        t = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return HomogeneousPolynomial(t, self.nvars)

    __rmul__ = scale

    def __pow__(self, k):
        out = HomogeneousPolynomial({(0,) * self.nvars: 1}, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, point: Iterable):
        return self.evaluate(point)

    def evaluate(self, point):
        pt = list(point)
        if len(pt) != self.nvars:
            raise InvalidPolynomial(f"expected {self.nvars} coordinates, got {len(pt)}")
        total = 0
        for e, c in self._terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def content(self):
        """Positive rational c with self / c integral and primitive."""
        if not self._terms:
            raise InvalidPolynomial("zero polynomial has no content")
        nums = [Fraction(c).numerator for c in self._terms.values()]
        dens = [Fraction(c).denominator for c in self._terms.values()]
        return Fraction(reduce(gcd, nums), reduce(lcm, dens))

    def primitive(self):
        """Content-1 integer representative with positive leading coefficient."""
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return HomogeneousPolynomial({e: Fraction(v) / c for e, v in self._terms.items()}, self.nvars)

    def is_integral(self):
        return all(isinstance(c, int) for c in self._terms.values())

    def reduce_mod(self, p):
        """Coefficients of the primitive representative reduced mod p."""
        prim = self.primitive()
        out = {}
        for e, c in prim._terms.items():
            r = c % p
            if r:
                out[e] = r
        return out

    def derivative(self, i):
        t = {}
        for e, c in self._terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return HomogeneousPolynomial(t, self.nvars)

    def divmod(self, divisor):
        """Division by one polynomial with graded-lex leading terms.

        Returns (quotient, remainder) with self = quotient * divisor + remainder
        and no term of the remainder divisible by the leading monomial of the
        divisor. For a principal ideal this is the normal form, so the
        remainder vanishes exactly when divisor divides self.
        """
        self._check(divisor)
        lead_e, lead_c = divisor.leading_term()
        rest = {e: Fraction(c) for e, c in divisor._terms.items() if e != lead_e}
        work = {e: Fraction(c) for e, c in self._terms.items()}
        quo, rem = {}, {}
        while work:
            e = max(work)
            c = work.pop(e)
            if all(a >= b for a, b in zip(e, lead_e)):
                qe = tuple(a - b for a, b in zip(e, lead_e))
                qc = c / lead_c
                quo[qe] = quo.get(qe, 0) + qc
                for re_, rc in rest.items():
                    k = tuple(a + b for a, b in zip(qe, re_))
                    v = work.get(k, 0) - qc * rc
                    if v:
                        work[k] = v
                    else:
                        work.pop(k, None)
            else:
                rem[e] = c
        return (HomogeneousPolynomial(quo, self.nvars), HomogeneousPolynomial(rem, self.nvars))

    def to_text(self, names=None):
        """Render in the grammar accepted by :func:`arakount.parser.parse_polynomial`."""
        names = names or variable_names(self.nvars)
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if a != 1 or not factors:
                coeff = str(a) if isinstance(a, int) else f"{a.numerator}/{a.denominator}"
                factors.insert(0, coeff)
            pieces.append((sign, "*".join(factors)))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"HomogeneousPolynomial({self.to_text()!r}, nvars={self.nvars})"
