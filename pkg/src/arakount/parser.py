"""Text front end for homogeneous polynomials.

Grammar (whitespace is ignored)::

    expr   := sign? term (('+' | '-') term)*
    term   := coeff ('*' factor)* | factor ('*' factor)*
    factor := var ('^' uint)?
    coeff  := int | int '/' uint
    var    := x | y | z | w | x0 .. x9

The optional leading sign is a convenience beyond the bare grammar so that
rendered polynomials with a negative leading coefficient parse back.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ExprSyntaxError, NonHomogeneous, UnknownVariable
from .polynomial import HomogeneousPolynomial

MAX_INPUT = 64 * 1024

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^]))")
_LETTER_INDEX = {"x": 0, "y": 1, "z": 2, "w": 3}
_INDEXED = re.compile(r"x([0-9])$")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0
        self.style = None

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind, value=None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ExprSyntaxError(f"expected {want}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def variable(self, tok):
        name = tok[1]
        if name in _LETTER_INDEX:
            style, idx = "letters", _LETTER_INDEX[name]
        else:
            m = _INDEXED.match(name)
            if not m:
                raise UnknownVariable(f"unknown variable {name!r} at position {tok[2]}")
            style, idx = "indexed", int(m.group(1))
        if self.style is None:
            self.style = style
        elif self.style != style:
            raise UnknownVariable(
                f"variable {name!r} at position {tok[2]} mixes x,y,z,w with x0..x9"
            )
        return idx

    def factor(self):
        tok = self.take("name")
        idx = self.variable(tok)
        power = 1
        if self.peek()[:2] == ("op", "^"):
            self.i += 1
            power = int(self.take("num")[1])
        return idx, power

    def term(self):
        coeff = Fraction(1)
        powers = {}
        tok = self.peek()
        if tok[0] == "num":
            self.i += 1
            coeff = Fraction(int(tok[1]))
            if self.peek()[:2] == ("op", "/"):
                slash = self.peek()
                self.i += 1
                den = int(self.take("num")[1])
                if den == 0:
                    raise ExprSyntaxError("zero denominator", slash[2])
                coeff /= den
            if self.peek()[:2] != ("op", "*"):
                return coeff, powers
            self.i += 1
        while True:
            idx, k = self.factor()
            powers[idx] = powers.get(idx, 0) + k
            if self.peek()[:2] != ("op", "*"):
                return coeff, powers
            self.i += 1

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.i += 1
            sign = -1 if tok[1] == "-" else 1
        out = []
        while True:
            c, powers = self.term()
            out.append((sign * c, powers))
            tok = self.peek()
            if tok[0] == "end":
                return out
            if tok[0] == "op" and tok[1] in "+-":
                self.i += 1
                sign = -1 if tok[1] == "-" else 1
                continue
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2])


def parse_polynomial(text: str, nvars: int | None = None) -> HomogeneousPolynomial:
    """Parse ``text`` into a :class:`HomogeneousPolynomial`.

    The number of variables defaults to the largest index used plus one,
    with a floor of three so that ``"x"`` is a line in the plane. Raw
    coefficients are kept; no content normalization happens here.
    """
    if len(text.encode()) > MAX_INPUT:
        raise ExprSyntaxError("input longer than 64 KiB", MAX_INPUT)
    p = _Parser(text)
    terms = p.expr()
    used = max((i for _, powers in terms for i in powers), default=-1)
    if nvars is None:
        nvars = max(3, used + 1)
    elif used >= nvars:
        raise UnknownVariable(f"variable index {used} exceeds {nvars} variables")
    coeffs = {}
    degree = None
    for c, powers in terms:
        e = [0] * nvars
        for i, k in powers.items():
            e[i] = k
        d = sum(e)
        if degree is None:
            degree = d
        elif d != degree:
            raise NonHomogeneous(degree, d)
        e = tuple(e)
        coeffs[e] = coeffs.get(e, 0) + c
    return HomogeneousPolynomial(coeffs, nvars)
