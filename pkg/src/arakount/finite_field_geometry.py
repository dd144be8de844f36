"""Hypersurfaces over prime fields: points, multiplicities, weighted counts,
and absolute irreducibility of plane curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

import numpy as np

from . import gf
from .errors import BudgetExceeded, InvalidFieldData, InvalidParams, NotOnVariety, Unsupported
from .polynomial import HomogeneousPolynomial

ENUM_BUDGET = 10 ** 8
CHUNK = 1 << 20
MAX_P = 1 << 14
MAX_INTEGRALITY_DEGREE = 12


def is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class FqHypersurface:
    """Zero set of a form over F_p; ``coeffs`` maps exponent tuples to [1, p)."""

    p: int
    coeffs: dict
    nvars: int
    delta: int

    @property
    def q(self):
        return self.p

    @property
    def n(self):
        return self.nvars - 1

    @classmethod
    def from_polynomial(cls, f: HomogeneousPolynomial, p: int):
        if not is_prime(p):
            raise InvalidFieldData(f"{p} is not prime")
        if f.is_zero():
            raise InvalidParams("zero polynomial")
        coeffs = f.reduce_mod(p)
        if not coeffs:
            raise InvalidParams(f"form vanishes identically mod {p}")
        return cls(p, coeffs, f.nvars, f.degree)

    def evaluate(self, point):
        total = 0
        for e, c in self.coeffs.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * pow(x, k, self.p) % self.p
            total += v
        return total % self.p

    def derivative(self, i):
        out = {}
        for e, c in self.coeffs.items():
            if e[i] and (c * e[i]) % self.p:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i] % self.p
        return out


# --- enumeration ------------------------------------------------------------


def _eval_terms(terms, cols, p, powtab):
    """Evaluate a coefficient dict on a (k, nvars) int64 array of residues."""
    acc = np.zeros(cols.shape[0], dtype=np.int64)
    for e, c in terms.items():
        v = np.full(cols.shape[0], c, dtype=np.int64)
        for i, k in enumerate(e):
            if k:
                v = v * powtab[cols[:, i], k] % p
        acc = (acc + v) % p
    return acc


def _power_table(p, delta):
    base = np.arange(p, dtype=np.int64)
    tab = np.ones((p, delta + 1), dtype=np.int64)
    for k in range(1, delta + 1):
        tab[:, k] = tab[:, k - 1] * base % p
    return tab


def _slabs(nvars, p):
    """Yield (lead, block) with block the canonical points whose first nonzero coordinate is ``lead``."""
    for lead in range(nvars):
        free = nvars - lead - 1
        total = p ** free
        for start in range(0, total, CHUNK):
            idx = np.arange(start, min(total, start + CHUNK), dtype=np.int64)
            block = np.zeros((idx.size, nvars), dtype=np.int64)
            block[:, lead] = 1
            rest = idx
            for col in range(nvars - 1, lead, -1):
                block[:, col] = rest % p
                rest = rest // p
            yield lead, block


def _check_budget(surface):
    if surface.p ** surface.n > ENUM_BUDGET:
        raise BudgetExceeded(f"q^n = {surface.p}^{surface.n} exceeds {ENUM_BUDGET}")


def enumerate_points_fq(surface: FqHypersurface) -> list[tuple]:
    """All F_p-points, canonical with first nonzero coordinate 1, in slab order."""
    _check_budget(surface)
    powtab = _power_table(surface.p, surface.delta)
    out = []
    for _, block in _slabs(surface.nvars, surface.p):
        vals = _eval_terms(surface.coeffs, block, surface.p, powtab)
        out.extend(tuple(int(v) for v in row) for row in block[vals == 0])
    return out


def canonical_fq(point, p):
    pt = [c % p for c in point]
    lead = next((c for c in pt if c), None)
    if lead is None:
        raise InvalidParams("all coordinates vanish mod p")
    inv = pow(lead, -1, p)
    return tuple(c * inv % p for c in pt)


def local_expansion(surface: FqHypersurface, point):
    """Coefficients of f(a + u) in the affine chart of the first nonzero coordinate."""
    p = surface.p
    a = canonical_fq(point, p)
    j = next(i for i, c in enumerate(a) if c)
    local = {}
    for e, c in surface.coeffs.items():
        # product over i != j of (a_i + u_i)^{e_i}
        terms = {(): c}
        for i in range(surface.nvars):
            if i == j:
                continue
            k = e[i]
            new = {}
            for key, v in terms.items():
                for s in range(k + 1):
                    coef = comb(k, s) * pow(a[i], k - s, p) % p
                    if coef:
                        nk = key + (s,)
                        new[nk] = (new.get(nk, 0) + v * coef) % p
            terms = new
        for key, v in terms.items():
            local[key] = (local.get(key, 0) + v) % p
    return {k: v for k, v in local.items() if v}


def multiplicity_at(surface: FqHypersurface, point) -> int:
    """Degree of the lowest nonzero homogeneous part of the local expansion."""
    local = local_expansion(surface, point)
    if not local:
        raise InvalidParams("form vanishes identically in the chart")
    mu = min(sum(k) for k in local)
    if mu == 0:
        raise NotOnVariety(f"{tuple(point)} is not on the hypersurface mod {surface.p}")
    return mu


@dataclass
class PointCount:
    count: int
    weighted: int
    per_point: dict
    checks: dict = dc_field(default_factory=dict)

    @property
    def singular(self):
        return {pt: mu for pt, mu in self.per_point.items() if mu > 1}


def in_count_range(q, delta):
    return q <= delta * delta or q >= 27 * delta ** 4


def weighted_count(surface: FqHypersurface, geometrically_integral=None) -> PointCount:
    """Points, multiplicities and the three finite-field inequalities.

    Smoothness is detected in bulk from the chart gradient; the full jet is
    expanded only at singular points. ``geometrically_integral`` may be
    supplied by the caller; otherwise it is computed for plane curves and
    left unknown for higher n.
    """
    _check_budget(surface)
    p, n, delta = surface.p, surface.n, surface.delta
    powtab = _power_table(p, delta)
    partials = [surface.derivative(i) for i in range(surface.nvars)]
    per_point = {}
    for lead, block in _slabs(surface.nvars, p):
        vals = _eval_terms(surface.coeffs, block, p, powtab)
        pts = block[vals == 0]
        if not pts.size:
            continue
        smooth = np.zeros(pts.shape[0], dtype=bool)
        for i in range(surface.nvars):
            if i == lead or not partials[i]:
                continue
            smooth |= _eval_terms(partials[i], pts, p, powtab) != 0
        for row, ok in zip(pts, smooth):
            pt = tuple(int(v) for v in row)
            per_point[pt] = 1 if ok else multiplicity_at(surface, pt)
    count = len(per_point)
    weighted = sum(per_point.values())
    if geometrically_integral is None and n == 2 and delta <= MAX_INTEGRALITY_DEGREE:
        geometrically_integral = is_geometrically_integral_fq(surface)
    result = PointCount(count, weighted, per_point)
    result.checks = inequality_checks(p, n, delta, count, weighted, per_point, geometrically_integral)
    return result


def inequality_checks(q, n, delta, count, weighted, per_point, geometrically_integral):
    in_range = in_count_range(q, delta)
    dev = count - q ** (n - 1)
    rhs_a = n * delta ** 2 * q ** (n - 1.5)
    count_ok = bool(in_range and geometrically_integral)
    mass = sum(mu * (mu - 1) // 2 for mu in per_point.values())
    rhs_b = (n - 1) ** 2 / 2 * delta * (delta - 1) * max(delta - 1, q) ** (n - 2)
    rhs_w = q ** (n - 1) + n * n * delta * delta * max(q, delta - 1) ** (n - 1.5)
    lhs_c = weighted ** (-1.0 / (n - 1)) if weighted else math.inf
    rhs_c = 1.0 / q - n * n * delta * delta / max(q, delta - 1) ** 1.5
    return {
        "count": {
            "applicable": count_ok,
            "in_range": in_range,
            "geometrically_integral": geometrically_integral,
            "deviation": dev,
            "bound": rhs_a,
            "holds": abs(dev) <= rhs_a if count_ok else None,
            "holds_one_sided": dev <= rhs_a if count_ok else None,
        },
        "multiplicity": {"lhs": mass, "bound": rhs_b, "holds": mass <= rhs_b},
        "weighted": {
            "applicable": count_ok,
            "lhs": weighted,
            "bound": rhs_w,
            "holds": weighted <= rhs_w if count_ok else None,
        },
        "reciprocal": {
            "applicable": count_ok,
            "in_range": in_range,
            "lhs": lhs_c,
            "bound": rhs_c,
            "holds": lhs_c >= rhs_c,
        },
    }


# --- absolute irreducibility of plane curves --------------------------------


def _radical(k):
    r, d = 1, 2
    while d * d <= k:
        if k % d == 0:
            r *= d
            while k % d == 0:
                k //= d
        d += 1
    return r * (k if k > 1 else 1)


def integrality_field(p, delta):
    """F_{p^m} with rad(delta) | m and p^m > 4 delta^2.

    A curve irreducible over F_p but not absolutely irreducible splits into a
    Galois orbit of s > 1 conjugates with s | delta; any extension degree
    sharing a prime factor with s breaks the orbit, so irreducibility over
    this field is equivalent to absolute irreducibility.
    """
    base = _radical(delta)
    m = base
    while p ** m <= 4 * delta * delta:
        m += base
    return gf.field(p, m)


def _embed(F, c):
    return F.from_int(c)


def _dense_bivariate(F, terms, ydeg, xlen):
    out = [[F.zero] * xlen for _ in range(ydeg + 1)]
    for (i, j), c in terms.items():
        out[j][i] = F.add(out[j][i], c)
    return out


def _transformed(F, surface, a, b, x0):
    """Coefficients of F(x + x0 + a y, y, 1 + b y) as {(i, j): c}."""
    out = {}
    p = F.p
    for (ex, ey, ez), c in surface.coeffs.items():
        cc = _embed(F, c)
        # (x + x0 + a y)^ex = sum C(ex,s) C(s, v) x^v x0^(s-v) (a y)^(ex-s)
        for s in range(ex + 1):
            c1 = F.mul(cc, F.mul(F.from_int(comb(ex, s) % p), F.power(a, ex - s)))
            if F.is_zero(c1):
                continue
            for v in range(s + 1):
                c2 = F.mul(c1, F.mul(F.from_int(comb(s, v) % p), F.power(x0, s - v)))
                if F.is_zero(c2):
                    continue
                for u in range(ez + 1):
                    c3 = F.mul(c2, F.mul(F.from_int(comb(ez, u) % p), F.power(b, u)))
                    if F.is_zero(c3):
                        continue
                    key = (v, ex - s + ey + u)
                    out[key] = F.add(out.get(key, F.zero), c3)
    return {k: v for k, v in out.items() if not F.is_zero(v)}


def _value_at_center(F, surface, a, b):
    total = F.zero
    for (ex, ey, ez), c in surface.coeffs.items():
        total = F.add(total, F.mul(_embed(F, c), F.mul(F.power(a, ex), F.power(b, ez))))
    return total


def _conic_restriction_nonzero(F, surface, c):
    """Whether t -> F(t, 1, t^2 + c) is a nonzero polynomial."""
    poly = []
    for (ex, ey, ez), coef in surface.coeffs.items():
        term = [_embed(F, coef)]
        term = gf.pmul(F, term, [F.zero] * ex + [F.one])
        zpow = [F.one]
        for _ in range(ez):
            zpow = gf.pmul(F, zpow, [c, F.zero, F.one])
        poly = gf.padd(F, poly, gf.pmul(F, term, zpow))
    return bool(poly)


def _centers(F, surface, delta, limit):
    """Up to ``limit`` points [a:1:b] on a conic avoiding the curve."""
    c = F.zero
    for ci in range(F.order):
        c = F.element(ci)
        if _conic_restriction_nonzero(F, surface, c):
            break
    out = []
    for ti in range(min(F.order, limit)):
        a = F.element(ti)
        b = F.add(F.mul(a, a), c)
        lead = _value_at_center(F, surface, a, b)
        if not F.is_zero(lead):
            out.append((a, b, lead))
    return out


def _separable_chart(F, surface, delta, limit):
    """Monic-in-y chart with a squarefree fiber at x = 0, or None.

    Returns dense coefficients f[j][i] of x^i y^j after the change of
    coordinates and the shift moving a good fiber to x = 0.
    """
    ntries = delta * (delta - 1) + 1
    for a, b, lead in _centers(F, surface, delta, limit):
        inv = F.inv(lead)
        base = _transformed(F, surface, a, b, F.zero)
        fiber_terms = {}
        for xi in range(min(F.order, ntries)):
            x0 = F.element(xi)
            fiber = [F.zero] * (delta + 1)
            for (i, j), c in base.items():
                fiber[j] = F.add(fiber[j], F.mul(c, F.power(x0, i)))
            fiber = gf.trim(F, fiber)
            if len(fiber) == delta + 1 and gf.is_squarefree(F, fiber):
                fiber_terms = _transformed(F, surface, a, b, x0)
                dense = _dense_bivariate(F, fiber_terms, delta, delta + 1)
                return [[F.mul(v, inv) for v in row] for row in dense]
    return None


def _series_mul(F, A, B, N):
    """Product of polynomials in y with coefficients truncated mod x^N."""
    out = [[F.zero] * N for _ in range(len(A) + len(B) - 1)]
    for j1, ra in enumerate(A):
        for j2, rb in enumerate(B):
            row = out[j1 + j2]
            for i1, ca in enumerate(ra):
                if F.is_zero(ca):
                    continue
                for i2 in range(N - i1):
                    cb = rb[i2]
                    if not F.is_zero(cb):
                        row[i1 + i2] = F.add(row[i1 + i2], F.mul(ca, cb))
    return out


def hensel_lift(F, f, factors, N):
    """Lift monic y-factors of f(0, y) to factors of f modulo x^N."""
    r = len(factors)
    inverses = []
    for i, g in enumerate(factors):
        others = [F.one]
        for k, h in enumerate(factors):
            if k != i:
                others = gf.pmul(F, others, h)
        inverses.append(gf.pinvmod(F, others, g))
    lifted = []
    for g in factors:
        lifted.append([[c] + [F.zero] * (N - 1) for c in g])
    for k in range(1, N):
        prod = lifted[0]
        for G in lifted[1:]:
            prod = _series_mul(F, prod, G, N)
        e = gf.trim(F, [F.sub(f[j][k], prod[j][k]) for j in range(len(f))])
        if not e:
            continue
        for i in range(r):
            d = gf.prem(F, gf.pmul(F, e, inverses[i]), factors[i])
            for j, c in enumerate(d):
                lifted[i][j][k] = c
    return lifted


def _as_xpoly_rows(F, A):
    return [gf.trim(F, list(row)) for row in A]


def _divides(F, f, G):
    """Whether monic-in-y G divides f in F[x][y]; both given as rows of x-polys."""
    rem = [list(r) for r in f]
    dg = len(G) - 1
    for k in range(len(rem) - 1, dg - 1, -1):
        c = rem[k]
        if not c:
            continue
        for j in range(dg + 1):
            rem[k - dg + j] = gf.psub(F, rem[k - dg + j], gf.pmul(F, c, G[j]))
    return not any(rem[:dg])


def _is_irreducible_bivariate(F, f, delta, seed=0):
    fiber = gf.trim(F, [row[0] for row in f])
    factors = gf.factor_squarefree(F, fiber, seed)
    r = len(factors)
    if r == 1:
        return True
    N = delta + 1
    lifted = hensel_lift(F, f, factors, N)
    frows = _as_xpoly_rows(F, f)
    for size in range(1, r // 2 + 1):
        for S in combinations(range(r), size):
            if 2 * size == r and 0 not in S:
                continue
            prod = lifted[S[0]]
            for i in S[1:]:
                prod = _series_mul(F, prod, lifted[i], N)
            d = len(prod) - 1
            rows = _as_xpoly_rows(F, prod)
            if any(len(row) - 1 > d - j for j, row in enumerate(rows) if row):
                continue
            if _divides(F, frows, rows):
                return False
    return True


def _check_integrality_size(surface):
    if surface.n != 2:
        raise Unsupported("absolute irreducibility is implemented for plane curves only")
    if surface.delta > MAX_INTEGRALITY_DEGREE or surface.p > MAX_P:
        raise Unsupported(f"need delta <= {MAX_INTEGRALITY_DEGREE} and p <= {MAX_P}")


def is_geometrically_integral_fq(surface: FqHypersurface, cross_check=False) -> bool:
    """Absolute irreducibility (and reducedness) of a plane curve over F_p.

    Works over an extension F_{p^m} chosen by :func:`integrality_field`:
    a random-free change of coordinates makes the curve monic in y with a
    squarefree fiber, the fiber is factored by Cantor-Zassenhaus, factors are
    Hensel-lifted x-adically and recombined. With ``cross_check`` and p large
    enough the answer is compared against :func:`gao_absolute_factor_count`.
    """
    _check_integrality_size(surface)
    delta = surface.delta
    if delta == 1:
        return True
    F = integrality_field(surface.p, delta)
    f = _separable_chart(F, surface, delta, 4 * delta + 1)
    answer = False if f is None else _is_irreducible_bivariate(F, f, delta)
    if cross_check and surface.p > (2 * delta - 1) * delta:
        gao = gao_absolute_factor_count(surface)
        if (gao == 1) != answer:
            raise AssertionError(f"integrality cross-check disagrees: factorization={answer}, gao count={gao}")
    return answer


# --- Gao's partial differential equation criterion -------------------------


def _rank_mod_p(rows, ncols, p):
    rows = [list(r) for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        prow = [v * inv % p for v in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                c = rows[i][col]
                rows[i] = [(v - c * w) % p for v, w in zip(rows[i], prow)]
        rank += 1
    return rank


def _bmul(a, b, p):
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = (out.get(k, 0) + c1 * c2) % p
    return out


def _bdiff(a, var, p):
    out = {}
    for (i, j), c in a.items():
        e = (i, j)[var]
        if e and c * e % p:
            k = (i - 1, j) if var == 0 else (i, j - 1)
            out[k] = c * e % p
    return out


def gao_absolute_factor_count(surface: FqHypersurface) -> int:
    """Number of absolutely irreducible factors via Gao's linear system.

    Valid for squarefree curves when p > (2 delta - 1) delta. Returns 0 when
    no chart with a squarefree fiber exists (the form is not reduced).
    """
    _check_integrality_size(surface)
    p, delta = surface.p, surface.delta
    if p <= (2 * delta - 1) * delta:
        raise Unsupported(f"Gao criterion needs p > {(2 * delta - 1) * delta}")
    F = gf.field(p)
    f = _separable_chart(F, surface, delta, 4 * delta + 1)
    if f is None:
        return 0
    # swap roles so that gcd(f, df/dx) = 1 holds for the system below
    poly = {(j, i): c for j, row in enumerate(f) for i, c in enumerate(row) if c}
    m = max(i for i, _ in poly)
    n = max(j for _, j in poly)
    fx, fy = _bdiff(poly, 0, p), _bdiff(poly, 1, p)
    columns = []
    for i in range(m):
        for j in range(n + 1):
            g = {(i, j): 1}
            col = _bmul(poly, _bdiff(g, 1, p), p)
            for k, v in _bmul(g, fy, p).items():
                col[k] = (col.get(k, 0) - v) % p
            columns.append(col)
    for i in range(m + 1):
        for j in range(n):
            h = {(i, j): 1}
            col = {k: -v % p for k, v in _bmul(poly, _bdiff(h, 0, p), p).items()}
            for k, v in _bmul(h, fx, p).items():
                col[k] = (col.get(k, 0) + v) % p
            columns.append(col)
    keys = sorted({k for col in columns for k, v in col.items() if v})
    index = {k: r for r, k in enumerate(keys)}
    rows = [[0] * len(columns) for _ in keys]
    for c, col in enumerate(columns):
        for k, v in col.items():
            if v:
                rows[index[k]][c] = v
    return len(columns) - _rank_mod_p(rows, len(columns), p)
