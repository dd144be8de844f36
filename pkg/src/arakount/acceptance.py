"""The acceptance suite: ten numbered criteria, each returning a CriterionResult.

Used by ``arakount verify`` and by ``tests/test_acceptance.py``. Every
randomized corpus is drawn from ``random.Random(seed)``.
"""

from __future__ import annotations

import math
import random
import time
from itertools import combinations
from typing import NamedTuple

from .auxiliary import (
    block_diagonal_valuation,
    determinant_experiment,
    minimal_auxiliary,
    padic_det_valuation,
)
from .bounds import constant_c1, nongeom_mass
from .finite_field_geometry import (
    FqHypersurface,
    in_count_range,
    is_geometrically_integral_fq,
    weighted_count,
)
from .gf import ExtensionField
from .heights import ProjectivePoint, arakelov_height, canonicalize, naive_poly_height, weil_height
from .hilbert_samuel import (
    INCLUSIVE,
    STRICT,
    HilbertProfile,
    QSeries,
    appendix_bound_value,
    checkpoint_closed_form,
    hs_value,
    prefix_u,
)
from .oracles import oracle_geometrically_integral
from .parser import parse_polynomial
from .polynomial import monomials
from .prime_distribution import chebyshev_sums, divisor_mertens_bound, grh_envelopes
from .rational_points import bad_primes, enumerate_S, reduction_classes

CONIC = "x*z - y^2"


class CriterionResult(NamedTuple):
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _timed(number, name, limit=None):
    def wrap(fn):
        def run(seed=0):
            t0 = time.perf_counter()
            passed, detail = fn(seed)
            dt = time.perf_counter() - t0
            if limit is not None and dt > limit:
                passed = False
                detail += f"; runtime {dt:.1f}s over the {limit}s limit"
            return CriterionResult(number, name, bool(passed), detail, dt)

        run.number = number
        run.criterion_name = name
        run.body = fn
        return run

    return wrap


# --- 1 ----------------------------------------------------------------------


def hilbert_identity_table(n_max=4, delta_max=6, k_max=20):
    """Per (n, mu, k): prefix sum, U(k), strict and inclusive Q(U(k)), closed form."""
    rows = []
    for n in range(2, n_max + 1):
        for mu in range(1, delta_max + 1):
            prof = HilbertProfile(n, mu)
            series = QSeries(prof)
            for k in range(k_max + 1):
                prefix = sum(hs_value(prof, s) for s in range(k + 1))
                u = prefix_u(prof, k)
                closed = checkpoint_closed_form(n, mu, k)
                rows.append((n, mu, k, prefix, u, series.Q(u, STRICT), series.Q(u, INCLUSIVE), closed))
    return rows


@_timed(1, "Hilbert-Samuel identities", limit=5)
def criterion_1(seed=0):
    # mu <= delta <= 6: the identities depend on mu only, so every mu in 1..6 is covered
    rows = hilbert_identity_table()
    prefix_bad = sum(1 for r in rows if r[3] != r[4])
    incl_ok = sum(1 for r in rows if r[6] == r[7])
    strict_ok = sum(1 for r in rows if r[5] == r[7])
    shifted_ok = sum(1 for r in rows if r[6] == r[7] + r[2] + 1)
    total = len(rows)
    detail = (
        f"prefix sums == U(k): {total - prefix_bad}/{total}; "
        f"inclusive Q(U(k)) == closed form: {incl_ok}/{total}; "
        f"strict Q(U(k)) == closed form: {strict_ok}/{total}; "
        f"inclusive == closed form + k + 1: {shifted_ok}/{total}"
    )
    return prefix_bad == 0 and incl_ok == total, detail


# --- 2 ----------------------------------------------------------------------


@_timed(2, "Lower bound on Q", limit=30)
def criterion_2(seed=0):
    checked = violations = 0
    worst = math.inf
    for n in range(2, 6):
        for mu in range(1, 9):
            series = QSeries(HilbertProfile(n, mu))
            for r in range(1, 501):
                b = appendix_bound_value(n, mu, r)
                Q = series.Q(r, INCLUSIVE)
                # identical for every delta in mu..8
                mult = 8 - mu + 1
                checked += mult
                if not Q > b:
                    violations += mult
                worst = min(worst, Q - b)
    return violations == 0, f"{checked} (n, mu, delta, r) cases, {violations} violations, min margin {worst:.4g}"


# --- 3 ----------------------------------------------------------------------


def _random_form(rng, p, delta, density=0.7):
    mons = monomials(3, delta)
    while True:
        coeffs = {e: rng.randrange(1, p) for e in mons if rng.random() < density}
        if coeffs:
            return coeffs


def finite_field_corpus(seed=0, size=100):
    """(p, coeffs, delta) for geometrically integral curves with q in the counting range."""
    rng = random.Random(seed)
    plan = []
    small = {2: [2, 3], 3: [2, 3, 5, 7], 4: [2, 3, 5, 7, 11, 13]}
    large = {2: [433, 439, 443], 3: [2203]}
    for delta, ps in large.items():
        for p in ps:
            plan.append((p, delta))
    while len(plan) < size:
        delta = rng.choice([2, 3, 3, 4, 4])
        plan.append((rng.choice(small[delta]), delta))
    out = []
    for p, delta in plan:
        while True:
            coeffs = _random_form(rng, p, delta)
            surface = FqHypersurface(p, coeffs, 3, delta)
            if is_geometrically_integral_fq(surface):
                out.append(surface)
                break
    return out


@_timed(3, "Finite-field counts", limit=60)
def criterion_3(seed=0):
    conic = parse_polynomial(CONIC)
    conic_bad = []
    for q in (3, 5, 7, 11, 13):
        c = weighted_count(FqHypersurface.from_polynomial(conic, q)).count
        if c != q + 1:
            conic_bad.append((q, c))
    corpus = finite_field_corpus(seed)
    count_bad = mult_bad = one_sided_bad = 0
    for s in corpus:
        assert in_count_range(s.p, s.delta)
        res = weighted_count(s, geometrically_integral=True)
        count_bad += not res.checks["count"]["holds"]
        one_sided_bad += not res.checks["count"]["holds_one_sided"]
        mult_bad += not res.checks["multiplicity"]["holds"]
    detail = (
        f"conic counts q+1 for q in 3..13: {'yes' if not conic_bad else conic_bad}; "
        f"{len(corpus)} curves: count inequality violations {count_bad} "
        f"(one-sided {one_sided_bad}), multiplicity violations {mult_bad}"
    )
    return not conic_bad and count_bad == 0 and mult_bad == 0, detail


# --- 4 ----------------------------------------------------------------------


@_timed(4, "Mertens/Chebyshev sums and GRH envelopes", limit=60)
def criterion_4(seed=0):
    s = chebyshev_sums("Q", 10)
    psi_ok = abs(s.psi - 1.3127) <= 1e-3
    theta_ok = abs(s.theta - math.log(210)) <= 1e-9
    failures = []
    integral_failures = []
    xs = [3] + [10 ** k for k in range(1, 7)]
    for label in ("Q", "Qi", "Qsqrt:5"):
        for x in xs:
            env = grh_envelopes(label, x)
            for name in ("theta", "psi", "phi"):
                chk = env.checks[name]
                if not chk["holds"]:
                    failures.append((label, x, name, round(chk["deviation"], 4), round(chk["envelope"], 4)))
            if not env.checks["phi_integral_form"]["holds"]:
                integral_failures.append((label, x))
    detail = (
        f"psi_Q(10) = {s.psi:.6f}, theta_Q(10) - log 210 = {s.theta - math.log(210):.2e}; "
        f"envelope failures (label, x, sum, deviation, envelope) at x in {{3, 10..10^6}}: {failures or 'none'}; "
        f"phi against the integral-form envelope: {integral_failures or 'no failures'}"
    )
    return psi_ok and theta_ok and not failures, detail


# --- 5 ----------------------------------------------------------------------


def _factor(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _sqrt_minus_one(p):
    for a in range(2, p):
        r = pow(a, (p - 1) // 4, p)
        if r * r % p == p - 1:
            return r
    raise AssertionError("p must be 1 mod 4")


def random_gaussian_ideal(rng, max_norm):
    """A random nonzero ideal (a + b i) of Z[i]: (norm, distinct prime records)."""
    while True:
        a = rng.randint(-1000, 1000)
        b = rng.randint(-1000, 1000)
        N = a * a + b * b
        if 2 <= N <= max_norm:
            break
    records = []
    for p in _factor(N):
        if p == 2:
            records.append((2, 1, 2))
        elif p % 4 == 3:
            records.append((p, 2, p * p))
        else:
            r = _sqrt_minus_one(p)
            # (p, i - r) contains a + b i iff a + b r = 0 mod p; likewise for -r
            for root in (r, p - r):
                if (a + b * root) % p == 0:
                    records.append((p, 1, p))
    return N, records


@_timed(5, "Divisor Mertens bound", limit=60)
def criterion_5(seed=0, count=1000, max_norm=10 ** 6):
    rng = random.Random(seed)
    violations = 0
    worst = -math.inf
    for _ in range(count):
        N = rng.randint(2, max_norm)
        lhs, rhs, ok = divisor_mertens_bound("Q", N, _factor(N))
        violations += not ok
        worst = max(worst, lhs - rhs)
    for _ in range(count):
        N, recs = random_gaussian_ideal(rng, max_norm)
        lhs, rhs, ok = divisor_mertens_bound("Qi", N, recs)
        violations += not ok
        worst = max(worst, lhs - rhs)
    return violations == 0, f"{2 * count} ideals over Q and Q(i), {violations} violations, max lhs - rhs {worst:.4f}"


# --- 6 ----------------------------------------------------------------------


def determinant_cases(seed=0, B=60):
    """(p, r, points, D) for r points of the conic in one reduction class."""
    rng = random.Random(seed)
    S = enumerate_S(parse_polynomial(CONIC), B).points
    cases = []
    for p in (5, 7, 11):
        classes = reduction_classes(S, p)
        for r in (2, 3, 4):
            for pts in classes.values():
                if len(pts) < r:
                    continue
                picks = [pts[:r]] + [rng.sample(pts, r) for _ in range(2)]
                for sel in picks:
                    for D in (1, 2, 3):
                        if r <= (D + 1) * (D + 2) // 2:
                            cases.append((p, r, tuple(sel), D))
    return cases


@_timed(6, "Determinant divisibility (strict convention)", limit=60)
def criterion_6(seed=0):
    vander = padic_det_valuation([(0, 0, 1), (49, 7, 1), (196, 14, 1)], [(0, 0, 2), (0, 1, 1), (0, 2, 0)], 7)
    minors = strict_bad = incl_bad = 0
    for p, r, pts, D in determinant_cases(seed):
        for _, v in determinant_experiment(pts, p, D):
            minors += 1
            strict_bad += v < r * (r - 1) // 2
            incl_bad += v < r * (r + 1) // 2
    # block-diagonal minors over two classes add valuations
    S = enumerate_S(parse_polynomial(CONIC), 30).points
    classes = [c for c in reduction_classes(S, 7).values() if len(c) >= 3]
    monos = [(0, 0, 2), (0, 1, 1), (0, 2, 0)]
    mult_bad = 0
    blocks = 0
    for c1, c2 in combinations(classes[:4], 2):
        try:
            v, a, b = block_diagonal_valuation((c1[:3], monos), (c2[:3], monos), 7)
        except Exception:
            continue
        blocks += 1
        mult_bad += v != a + b
    detail = (
        f"Vandermonde s=0,7,14 at p=7: v = {vander}; {minors} nonsingular minors, "
        f"strict r(r-1)/2 violations {strict_bad}; inclusive r(r+1)/2 violations {incl_bad} (recorded only); "
        f"block multiplicativity {blocks - mult_bad}/{blocks}"
    )
    return vander == 3 and strict_bad == 0 and minors > 0 and mult_bad == 0, detail


# --- 7 ----------------------------------------------------------------------


def brute_force_points(f, B):
    """Every canonical primitive [x:y:z] with max |coord| <= B on f = 0, by exhaustive search."""
    out = set()
    rng = range(-B, B + 1)
    for x in rng:
        for y in rng:
            for z in rng:
                if (x, y, z) == (0, 0, 0) or math.gcd(math.gcd(x, y), z) != 1:
                    continue
                if f.evaluate((x, y, z)) == 0:
                    out.add(canonicalize((x, y, z)))
    return sorted(ProjectivePoint(t) for t in out)


@_timed(7, "Auxiliary construction", limit=30)
def criterion_7(seed=0):
    f = parse_polynomial(CONIC)
    S4 = enumerate_S(f, 4)
    S10 = enumerate_S(f, 10)
    bf4 = brute_force_points(f, 4)
    bf10 = brute_force_points(f, 10)
    aux = minimal_auxiliary(f, S4.points)
    cert = aux.verify(f) and len(aux.evaluations) == 8 and all(v == 0 for v in aux.evaluations)
    ok = (
        len(S4) == 8 and len(S10) == 16
        and S4.points == bf4 and S10.points == bf10
        and aux.D == 4 and cert
    )
    detail = (
        f"#S(4) = {len(S4)} (brute force {len(bf4)}), #S(10) = {len(S10)} (brute force {len(bf10)}); "
        f"D_min = {aux.D}, g = {aux.g.to_text()}, certificate {'valid' if cert else 'INVALID'}"
    )
    return ok, detail


# --- 8 ----------------------------------------------------------------------


@_timed(8, "Heights and C1", limit=60)
def criterion_8(seed=0, count=1000):
    rng = random.Random(seed)
    bad = 0
    worst = 0.0
    limit = 0.5 * math.log(3)
    for _ in range(count):
        while True:
            c = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(3)]
            if any(c):
                break
        P = ProjectivePoint(c)
        gap = abs(weil_height(P).h - arakelov_height(P))
        worst = max(worst, gap)
        bad += gap > limit
    c2, c3 = constant_c1(2), constant_c1(3)
    ok = bad == 0 and abs(c2 + 90.63) <= 0.01 and abs(c3 + 730.54) <= 0.05
    return ok, f"{count} points, max |h - h_Ar| = {worst:.6f} <= {limit:.6f}: {bad} violations; C1(2) = {c2:.4f}, C1(3) = {c3:.4f}"


# --- 9 ----------------------------------------------------------------------


def _poly_mul(F, a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = F.add(out.get(e, F.zero), F.mul(ca, cb))
    return {e: c for e, c in out.items() if c != F.zero}


def _frobenius_norm(rng, p, k, d):
    """Norm from F_{p^k} to F_p of a random degree-d form: degree k*d over F_p."""
    F = ExtensionField(p, k)
    mons = monomials(3, d)
    while True:
        g = {e: F.element(rng.randrange(F.order)) for e in mons}
        g = {e: c for e, c in g.items() if c != F.zero}
        if g and any(any(c[1:]) for c in g.values()):
            break
    out = g
    conj = g
    for _ in range(k - 1):
        conj = {e: F.power(c, p) for e, c in conj.items()}
        out = _poly_mul(F, out, conj)
    assert all(not any(c[1:]) for c in out.values())
    return {e: c[0] for e, c in out.items() if c[0]}


def _fp_mul(a, b, p):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = (out.get(e, 0) + ca * cb) % p
    return {e: c for e, c in out.items() if c}


def integrality_corpus(seed=0, size=200):
    """(kind, p, delta, coeffs) plane curves over F_p, p <= 13, delta <= 4."""
    rng = random.Random(seed)
    primes = [2, 3, 5, 7, 11, 13]
    out = [("x^2+y^2 over F_3", 3, 2, {(2, 0, 0): 1, (0, 2, 0): 1})]
    kinds = ["random", "random", "product", "norm", "square"]
    while len(out) < size:
        kind = kinds[len(out) % len(kinds)]
        p = rng.choice(primes)
        if kind == "random":
            delta = rng.choice([2, 3, 4])
            coeffs = _random_form(rng, p, delta, density=rng.choice([0.4, 0.7, 1.0]))
        elif kind == "product":
            d1 = rng.choice([1, 2])
            d2 = rng.choice([1, 2]) if d1 == 2 else rng.choice([1, 2, 3])
            delta = d1 + d2
            coeffs = _fp_mul(_random_form(rng, p, d1), _random_form(rng, p, d2), p)
        elif kind == "norm":
            k, d = rng.choice([(2, 1), (3, 1), (2, 2)])
            delta = k * d
            coeffs = _frobenius_norm(rng, p, k, d)
        else:
            d = rng.choice([1, 2])
            delta = 2 * d
            g = _random_form(rng, p, d)
            coeffs = _fp_mul(g, g, p)
        if not coeffs:
            continue
        out.append((kind, p, delta, coeffs))
    return out


@_timed(9, "Geometric integrality vs oracle", limit=180)
def criterion_9(seed=0):
    corpus = integrality_corpus(seed)
    disagree = []
    integral = 0
    disc = None
    for kind, p, delta, coeffs in corpus:
        fast = is_geometrically_integral_fq(FqHypersurface(p, coeffs, 3, delta))
        slow = oracle_geometrically_integral(coeffs, p, delta)
        integral += fast
        if fast != slow:
            disagree.append((kind, p, delta))
        if kind.startswith("x^2+y^2"):
            disc = (fast, slow)
    ok = not disagree and disc == (False, False)
    detail = (
        f"{len(corpus)} curves ({integral} geometrically integral), disagreements {disagree or 'none'}; "
        f"x^2+y^2 over F_3 (irreducible over F_3, splits over F_9): fast={disc[0]}, oracle={disc[1]}"
    )
    return ok, detail


# --- 10 ---------------------------------------------------------------------


def bad_prime_corpus():
    """20 curves over Q with planted primes of bad reduction."""
    texts = []
    for P in (2, 3, 5, 7, 11, 13, 6, 15, 35, 143):
        texts.append(f"x*z - {P}*y^2")
    for P in (2, 3, 5, 7, 30):
        texts.append(f"x^2*z - {P}*y^3 - {P}*y*z^2")
    for P in (3, 5, 7, 2, 105):
        texts.append(f"x^4 - {P}*y^4 - {P}*y*z^3 - {P}*z^4")
    return [parse_polynomial(t) for t in texts]


@_timed(10, "Bad-prime mass", limit=120)
def criterion_10(seed=0, p_max=50):
    violations = []
    planted_missed = []
    rows = 0
    for f in bad_prime_corpus():
        bad = bad_primes(f, p_max)
        h = naive_poly_height(f).h
        mass = math.fsum(math.log(p) for p in bad)
        bound = nongeom_mass(2, f.degree, h).mass_bound
        rows += 1
        if mass > bound:
            violations.append(f.to_text())
        P = max(abs(c) for _, c in f.items() if abs(c) != 1)
        missed = [q for q in _factor(int(P)) if q not in bad]
        if missed:
            planted_missed.append((f.to_text(), missed))
    ok = not violations and not planted_missed
    return ok, f"{rows} curves, p <= {p_max}: mass violations {violations or 'none'}; planted primes missed {planted_missed or 'none'}"


CRITERIA = [
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
]


def run_all(seed=0, only=None):
    results = []
    for crit in CRITERIA:
        if only and crit.number not in only:
            continue
        results.append(crit(seed))
    return results


def format_line(res: CriterionResult) -> str:
    status = "PASS" if res.passed else "FAIL"
    return f"{status} criterion {res.number} ({res.name}, {res.seconds:.2f}s): {res.detail}"
