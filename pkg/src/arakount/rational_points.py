"""Rational points of bounded height on plane curves over Q."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, InvalidParams, Unsupported
from .finite_field_geometry import (
    MAX_INTEGRALITY_DEGREE,
    MAX_P,
    FqHypersurface,
    canonical_fq,
    is_geometrically_integral_fq,
)
from .heights import ProjectivePoint
from .polynomial import HomogeneousPolynomial
from .prime_distribution import primes_up_to

DEFAULT_MAX_B = 10 ** 4
GENERAL_PAIR_BUDGET = 4 * 10 ** 6
SLAB = 1 << 20
INT64_SAFE = 1 << 62


@dataclass
class PointSet:
    curve: HomogeneousPolynomial
    bound: Fraction
    points: list

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def count(self):
        return len(self.points)

    def coordinates(self):
        return [p.coords for p in self.points]

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y", "z"])
        for p in self.points:
            w.writerow(p.coords)
        return buf.getvalue()

    def to_dict(self):
        return {
            "curve": self.curve.to_text(),
            "bound": self.bound,
            "count": self.count,
            "points": [list(p.coords) for p in self.points],
        }


def _coefficients_in(f, v):
    """Map k -> list of (exponents of the other two variables, coefficient) for f = sum c_k v^k."""
    others = [i for i in range(3) if i != v]
    out = {}
    for e, c in f.items():
        out.setdefault(e[v], []).append(((e[others[0]], e[others[1]]), int(c)))
    return out, others


def _pick_variable(f):
    degs = [max(e[i] for e, _ in f.items()) for i in range(3)]
    candidates = [(d, i) for i, d in enumerate(degs) if d > 0]
    return min(candidates)[1], degs


def _eval_coeff(terms, U, W):
    acc = np.zeros(U.shape, dtype=object if U.dtype == object else np.int64)
    for (a, b), c in terms:
        acc = acc + c * U ** a * W ** b
    return acc


def _magnitude(terms, B):
    return sum(abs(c) * B ** (a + b) for (a, b), c in terms)


def _accept(found, triple, f):
    if not any(triple):
        return
    g = math.gcd(math.gcd(triple[0], triple[1]), triple[2])
    if g != 1:
        return
    first = next(c for c in triple if c)
    if first < 0:
        return
    if f.evaluate(triple) == 0:
        found.add(triple)


def _place(v_index, others, u, w, v):
    t = [0, 0, 0]
    t[v_index] = v
    t[others[0]] = u
    t[others[1]] = w
    return tuple(t)


def _pairs(B):
    side = 2 * B + 1
    total = side * side
    for start in range(0, total, SLAB):
        idx = np.arange(start, min(total, start + SLAB), dtype=np.int64)
        yield idx // side - B, idx % side - B


def _isqrt_array(D):
    r = np.floor(np.sqrt(D.astype(np.float64))).astype(np.int64)
    for _ in range(3):
        r = np.where(r * r > D, r - 1, r)
        r = np.where((r + 1) * (r + 1) <= D, r + 1, r)
    return r


def enumerate_S(f: HomogeneousPolynomial, B, budget=DEFAULT_MAX_B) -> PointSet:
    """All [x:y:z] on f = 0 with coprime integer coordinates and max |.| <= B.

    The variable of smallest positive degree is solved for exactly over every
    pair of values of the other two coordinates: linear and quadratic cases are
    vectorized, higher degrees use numeric root candidates confirmed exactly.
    """
    if f.nvars != 3:
        raise Unsupported("enumeration is implemented for plane curves only")
    if f.is_zero():
        raise InvalidParams("zero polynomial")
    B = Fraction(B)
    if B < 1:
        raise InvalidParams("B must be at least 1")
    Bi = math.floor(B)
    if Bi > budget:
        raise BudgetExceeded(f"B = {Bi} exceeds the enumeration budget {budget}")
    f = f.primitive()
    v, degs = _pick_variable(f)
    coeffs, others = _coefficients_in(f, v)
    dv = degs[v]
    found = set()
    if dv <= 2:
        _solve_low_degree(f, coeffs, others, v, dv, Bi, found)
    else:
        _solve_general(f, coeffs, others, v, dv, Bi, found)
    pts = sorted(ProjectivePoint(t) for t in found)
    return PointSet(f, B, pts)


def _solve_low_degree(f, coeffs, others, v, dv, B, found):
    c = {k: coeffs.get(k, []) for k in range(dv + 1)}
    big = max(_magnitude(t, B) for t in c.values())
    exact = (4 * big * big if dv == 2 else big) >= INT64_SAFE
    for U, W in _pairs(B):
        if exact:
            U, W = U.astype(object), W.astype(object)
        cs = [_eval_coeff(c[k], U, W) for k in range(dv + 1)]
        lead = cs[dv]
        zero_lead = lead == 0
        # pairs where the equation in v degenerates are handled one by one
        for i in np.nonzero(zero_lead)[0]:
            u, w = int(U[i]), int(W[i])
            _degenerate(f, coeffs, others, v, u, w, B, found)
        ok = ~zero_lead
        if dv == 1:
            num, den = -cs[0][ok], lead[ok]
            hit = num % den == 0
            vals = num[hit] // den[hit]
            uu, ww = U[ok][hit], W[ok][hit]
            keep = np.abs(vals) <= B
            for u, w, x in zip(uu[keep], ww[keep], vals[keep]):
                _accept(found, _place(v, others, int(u), int(w), int(x)), f)
        else:
            a, b, c0 = lead[ok], cs[1][ok], cs[0][ok]
            disc = b * b - 4 * a * c0
            pos = disc >= 0
            a, b, disc = a[pos], b[pos], disc[pos]
            uu, ww = U[ok][pos], W[ok][pos]
            if exact:
                r = np.array([math.isqrt(int(d)) for d in disc], dtype=object)
            else:
                r = _isqrt_array(disc)
            square = r * r == disc
            a, b, r, uu, ww = a[square], b[square], r[square], uu[square], ww[square]
            for sgn in (1, -1):
                num = -b + sgn * r
                den = 2 * a
                hit = num % den == 0
                vals = num[hit] // den[hit]
                keep = np.abs(vals) <= B
                for u, w, x in zip(uu[hit][keep], ww[hit][keep], vals[keep]):
                    _accept(found, _place(v, others, int(u), int(w), int(x)), f)


def _degenerate(f, coeffs, others, v, u, w, B, found):
    """Pair (u, w) where the leading coefficient in v vanishes."""
    poly = [sum(c * u ** a * w ** b for (a, b), c in coeffs.get(k, [])) for k in range(max(coeffs) + 1)]
    while poly and poly[-1] == 0:
        poly.pop()
    if not poly:
        for x in range(-B, B + 1):
            _accept(found, _place(v, others, u, w, x), f)
        return
    for x in _integer_roots(poly, B):
        _accept(found, _place(v, others, u, w, x), f)


def _integer_roots(poly, B):
    """Integer roots in [-B, B] of an integer polynomial (low degree first)."""
    while poly and poly[-1] == 0:
        poly.pop()
    if len(poly) <= 1:
        return []
    shift = 0
    while poly[shift] == 0:
        shift += 1
    roots = {0} if shift else set()
    core = poly[shift:]
    if len(core) == 1:
        return sorted(roots)
    if len(core) == 2:
        a, b = core[1], core[0]
        if b % a == 0 and abs(b // a) <= B:
            roots.add(-b // a)
        return sorted(roots)
    approx = np.roots([float(c) for c in reversed(core)])
    cands = set()
    for z in approx:
        if abs(z.imag) <= 1.0 + 1e-6 * abs(z) and abs(z.real) <= B + 1:
            k = int(round(z.real))
            cands.update((k - 1, k, k + 1))
    for k in cands:
        if k and abs(k) <= B and sum(c * k ** i for i, c in enumerate(core)) == 0:
            roots.add(k)
    return sorted(roots)


def _solve_general(f, coeffs, others, v, dv, B, found):
    if (2 * B + 1) ** 2 > GENERAL_PAIR_BUDGET:
        raise BudgetExceeded(f"degree {dv} solve over {(2 * B + 1) ** 2} pairs exceeds {GENERAL_PAIR_BUDGET}")
    for u in range(-B, B + 1):
        for w in range(-B, B + 1):
            poly = [sum(c * u ** a * w ** b for (a, b), c in coeffs.get(k, [])) for k in range(dv + 1)]
            if not any(poly):
                for x in range(-B, B + 1):
                    _accept(found, _place(v, others, u, w, x), f)
                continue
            for x in _integer_roots(poly, B):
                _accept(found, _place(v, others, u, w, x), f)


def reduction_classes(points, p) -> dict:
    """Group points by their reduction in P^2(F_p), keyed by canonical F_p coordinates."""
    classes = {}
    for P in points:
        coords = P.coords if isinstance(P, ProjectivePoint) else tuple(P)
        key = canonical_fq(coords, p)
        classes.setdefault(key, []).append(P)
    return dict(sorted(classes.items()))


def good_prime_scan(f: HomogeneousPolynomial, p_max: int) -> list[tuple[int, bool]]:
    """(p, good) for every prime p <= p_max; good means geometrically integral reduction of degree delta."""
    if f.nvars != 3:
        raise Unsupported("prime scan is implemented for plane curves only")
    if f.degree > MAX_INTEGRALITY_DEGREE or p_max > MAX_P:
        raise Unsupported(f"need delta <= {MAX_INTEGRALITY_DEGREE} and p_max <= {MAX_P}")
    out = []
    for p in primes_up_to(p_max):
        p = int(p)
        coeffs = f.reduce_mod(p)
        if not coeffs:
            out.append((p, False))
            continue
        if f.degree == 1:
            out.append((p, True))
            continue
        surface = FqHypersurface(p, coeffs, 3, f.degree)
        out.append((p, is_geometrically_integral_fq(surface)))
    return out


def bad_primes(f, p_max):
    return [p for p, good in good_prime_scan(f, p_max) if not good]
