"""Explicit constants and bounds of the global determinant method, in log scale.

Every bound is returned as a :class:`BoundReport` whose ``subterms`` add up
to ``log_value``. Constants like e^{C_2} are far beyond float range, so no
code path exponentiates them.

Without GRH the remainder terms eps_1, eps_2, eps_3 are only known to exist;
bounds then come back as symbolic reports listing the unknown constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import HypothesisViolated, InvalidParams, SymbolicOnly
from .heights import HeightInterval, harmonic
from .hilbert_samuel import rank_r1
from .prime_distribution import eps2, kappa_bounds, number_field

LOG3 = math.log(3)


def constant_c1(n: int) -> float:
    """-(2n)^n/(n-1)! (log 2 + 5 log(n+1) - H_n/2) - (3/2) log(n+1) - 2^(n-1)."""
    if n < 2:
        raise InvalidParams("n must be at least 2")
    lead = (2 * n) ** n / math.factorial(n - 1)
    return -lead * (math.log(2) + 5 * math.log(n + 1) - 0.5 * harmonic(n)) - 1.5 * math.log(n + 1) - 2 ** (n - 1)


def a_n(n, delta):
    return n / ((n - 1) * delta ** (1.0 / (n - 1)))


def c_ndelta(n, delta):
    """C(n, delta) = (delta^2 - 1)(3 log delta + delta log 3 + log C(n+delta, delta))."""
    return (delta * delta - 1) * (3 * math.log(delta) + delta * LOG3 + math.log(math.comb(n + delta, delta)))


def height_exponent(n, delta):
    """n! / ((n-1)(2n)^n) * delta^(-1 - 1/(n-1)), the power of H_K(X) in the degree bound."""
    return math.factorial(n) / ((n - 1) * (2 * n) ** n) * delta ** (-1 - 1.0 / (n - 1))


def _grh_shift(K):
    """2 eps_2(K) - 3 log 3 + [K:Q]."""
    K = number_field(K)
    return 2 * eps2(K) - 3 * LOG3 + K.degree


@dataclass(frozen=True)
class BoundConstants:
    n: int
    delta: int | None
    c1: float
    log_c2: float
    log_c3: float
    log_c3prime: float
    a_n: float | None
    c_ndelta: float | None
    kappa1: float
    kappa2: float
    muhat_lower: float | None = None


_UNKNOWN_EPS = ("eps1(K,x)", "eps2(K)", "eps3(K,x)")


def constants_c2_c3(n, K="Q", kappa1=None, kappa2=None, delta=None, grh=True, h_lo=None) -> BoundConstants:
    """C_2(n,K), log C_3(n,K) and log C_3'(n,K).

    C_2 = n C_1 [K:Q] / ((n-1) 2^(1/(n-1))) + kappa_2 + log((n-1)!)/(n-1) + 3
          + (n^3+2n^2+n-4) / (2(n^2-1) ((n-1)!)^(1/(n-1))) (1 + n/4)(1 + kappa_1)
    log C_3  = C_2 + log((n+6)(n-1)(2n)^n / n!)     + 2 eps_2 - 3 log 3 + [K:Q]
    log C_3' = C_2 + log(-C_1 (n+6)(2n)^n / (n-1)!) + 2 eps_2 - 3 log 3 + [K:Q]
    """
    K = number_field(K)
    if n < 2:
        raise InvalidParams("n must be at least 2")
    if not grh:
        raise SymbolicOnly(
            "C_2 and C_3 need explicit kappa constants (GRH)",
            "C_2 = n C_1 [K:Q]/((n-1) 2^(1/(n-1))) + kappa2 + ... + (1 + kappa1)",
            ("kappa1(K)", "kappa2(K,n)") + _UNKNOWN_EPS,
        )
    if kappa1 is None or kappa2 is None:
        k = kappa_bounds(K, n)
        kappa1 = k.kappa1 if kappa1 is None else kappa1
        kappa2 = k.kappa2 if kappa2 is None else kappa2
    c1 = constant_c1(n)
    fact = math.factorial(n - 1)
    c2 = (
        n * c1 * K.degree / ((n - 1) * 2 ** (1.0 / (n - 1)))
        + kappa2
        + math.log(fact) / (n - 1)
        + 3
        + (n ** 3 + 2 * n * n + n - 4) / (2 * (n * n - 1) * fact ** (1.0 / (n - 1))) * (1 + n / 4) * (1 + kappa1)
    )
    shift = _grh_shift(K)
    log_c3 = c2 + math.log((n + 6) * (n - 1) * (2 * n) ** n / math.factorial(n)) + shift
    log_c3p = c2 + math.log(-c1 * (n + 6) * (2 * n) ** n / fact) + shift
    muhat = None if h_lo is None or delta is None else muhat_lower(n, delta, h_lo)
    return BoundConstants(
        n,
        delta,
        c1,
        c2,
        log_c3,
        log_c3p,
        a_n(n, delta) if delta else None,
        c_ndelta(n, delta) if delta else None,
        kappa1,
        kappa2,
        muhat,
    )


@dataclass
class BoundReport:
    kind: str
    log_value: float
    applicable: bool
    subterms: dict = field(default_factory=dict)
    symbolic: str | None = None
    unknowns: tuple = ()
    notes: tuple = ()

    @classmethod
    def assemble(cls, kind, subterms, applicable=True, notes=()):
        return cls(kind, math.fsum(subterms.values()), applicable, dict(subterms), notes=tuple(notes))

    @classmethod
    def symbolic_only(cls, kind, expression, unknowns, notes=()):
        return cls(kind, math.nan, False, {}, expression, tuple(unknowns), tuple(notes))

    def recomposition_error(self):
        return abs(math.fsum(self.subterms.values()) - self.log_value)


def siegel_threshold(n, delta, h_X, K="Q"):
    """(threshold, degree_cap) for the small-height regime.

    If log B / [K:Q] < threshold, all of S(X;B) lies on a hypersurface of
    degree < degree_cap = 2 delta + n - 1 not containing X.
    """
    if n < 2 or delta < 1:
        raise InvalidParams("need n >= 2 and delta >= 1")
    if h_X < 0:
        raise InvalidParams("h_X must be nonnegative")
    t = math.factorial(n - 1) / (delta * (2 * n) ** n) * h_X + constant_c1(n)
    return t, 2 * delta + n - 1


class Regime(NamedTuple):
    name: str
    threshold: float
    log_b_over_degree: float
    degree_cap: int


def regime(n, delta, h_X, B, K="Q"):
    """Which branch applies: ``siegel`` below the threshold, ``determinant`` otherwise."""
    K = number_field(K)
    t, cap = siegel_threshold(n, delta, h_X, K)
    x = math.log(B) / K.degree
    return Regime("siegel" if x < t else "determinant", t, x, cap)


def muhat_lower(n, delta, h_lo):
    """(n-1)!/(delta (2n)^n) h_lo - log(n+1) - 2^(n-1), lower bound of mu-hat(F_D)/D."""
    return math.factorial(n - 1) / (delta * (2 * n) ** n) * h_lo - math.log(n + 1) - 2 ** (n - 1)


def prime_contribution(n, D, r1, weighted, norm):
    """Summand of one prime in the determinant inequality (before the 1/[K:Q] factor)."""
    lead = math.factorial(n - 1) ** (1.0 / (n - 1)) * (n - 1) * r1 ** (1.0 / (n - 1))
    lead /= n * D * weighted ** (1.0 / (n - 1))
    tail = (n ** 3 + 2 * n * n + n - 4) / (2 * D * n * (n + 1))
    return (lead - tail) * math.log(norm)


def determinant_rhs(n, delta, D, h_X_interval, primes=(), K="Q") -> BoundReport:
    """Height threshold below which a degree-D auxiliary hypersurface exists.

    The unknown mu-hat(F_D)/D is replaced by its lower bound evaluated at the
    low end of the Arakelov height interval, so the threshold is conservative.
    ``primes`` is a sequence of (N(p), n(X_p)) pairs.
    """
    K = number_field(K)
    need = 2 * (delta - 1) + n + 1
    if D < need:
        raise HypothesisViolated(f"need D >= 2(delta-1)+n+1 = {need}, got {D}")
    lo = h_X_interval.lo if isinstance(h_X_interval, HeightInterval) else h_X_interval[0]
    r1 = rank_r1(n, D, delta)
    sub = {
        "muhat_lower": muhat_lower(n, delta, lo),
        "rank_term": -math.log(r1) / (2 * D),
    }
    for k, (norm, weighted) in enumerate(primes):
        if weighted <= 0:
            raise InvalidParams("n(X_p) must be positive")
        sub[f"prime[{k}]:N={norm}"] = prime_contribution(n, D, r1, weighted, norm) / K.degree
    return BoundReport.assemble(
        "determinant_rhs", sub, notes=("mu-hat replaced by its lower bound at the low height endpoint",)
    )


class NongeomMass(NamedTuple):
    mass_bound: float
    c_ndelta: float
    bprime_log_bound: float | None


def bprime_log_bound(n, delta, h_X, K="Q", grh=True):
    """Upper bound for log b'(X): 2 eps_2 - 3 log 3 + [K:Q] + log((delta^-2 - delta^-4)(h + ...))."""
    if delta == 1:
        return -math.inf
    if not grh:
        return None
    inner = h_X + 3 * math.log(delta) + delta * LOG3 + math.log(math.comb(n + delta, delta))
    return _grh_shift(K) + math.log((delta ** -2 - delta ** -4) * inner)


def nongeom_mass(n, delta, h_X, K="Q", grh=True) -> NongeomMass:
    """Bound on (1/[K:Q]) sum of log N(p) over primes of non-geometrically-integral reduction."""
    if n < 2 or delta < 1:
        raise InvalidParams("need n >= 2 and delta >= 1")
    c = c_ndelta(n, delta)
    return NongeomMass((delta * delta - 1) * h_X + c, c, bprime_log_bound(n, delta, h_X, K, grh))


def nongeom_report(n, delta, h_X, K="Q"):
    m = nongeom_mass(n, delta, h_X, K)
    sub = {"height_term": (delta * delta - 1) * h_X, "c_ndelta": m.c_ndelta}
    return BoundReport.assemble("nongeom_mass", sub)


def _symbolic_degree(kind, variant):
    exprs = {
        "theorem": "C_2 + a_n log B + (4 - 1/(n-1)) log delta + log b' - e_H log H_X",
        "cor1": "log C_3 + 3 log delta + a_n log B",
        "cor2": "log C_3' + (3 - 1/(n-1)) log delta + a_n log B + log max(log B/[K:Q], 1) - e_H log H_X",
        "t61": "log C_3(2,K) + 4 log delta + (2/delta) log B",
        "t62": "log C_3'(2,K) + 3 log delta + (2/delta) log B + log max(log B/[K:Q], 1)",
    }
    return BoundReport.symbolic_only(kind, exprs[variant], ("kappa1(K)", "kappa2(K,n)") + _UNKNOWN_EPS)


def aux_degree_bound(n, delta, B, H_X, K="Q", variant="theorem", grh=True, log_bprime=None, constants=None):
    """Log of the degree bound for an auxiliary hypersurface covering S(X;B)."""
    K = number_field(K)
    if variant not in ("theorem", "cor1", "cor2"):
        raise InvalidParams(f"unknown variant {variant!r}")
    if n < 2 or delta < 2:
        raise InvalidParams("need n >= 2 and delta >= 2")
    if B < 1 or H_X < 1:
        raise InvalidParams("need B >= 1 and H_X >= 1")
    if not grh:
        return _symbolic_degree("aux_degree", variant)
    c = constants or constants_c2_c3(n, K)
    logB = math.log(B)
    logH = math.log(H_X)
    an = a_n(n, delta)
    eh = height_exponent(n, delta)
    if variant == "theorem":
        if log_bprime is None:
            log_bprime = bprime_log_bound(n, delta, logH, K)
        sub = {
            "C2": c.log_c2,
            "a_n*log B": an * logB,
            "delta_power": (4 - 1.0 / (n - 1)) * math.log(delta),
            "log b'": log_bprime,
            "height_term": -eh * logH,
        }
    elif variant == "cor1":
        sub = {"log C3": c.log_c3, "delta_power": 3 * math.log(delta), "a_n*log B": an * logB}
    else:
        sub = {
            "log C3'": c.log_c3prime,
            "delta_power": (3 - 1.0 / (n - 1)) * math.log(delta),
            "a_n*log B": an * logB,
            "log_max": math.log(max(logB / K.degree, 1.0)),
            "height_term": -eh * logH,
        }
    return BoundReport.assemble("aux_degree", sub)


def curve_count_bound(delta, B, K="Q", variant="t61", grh=True, constants=None):
    """Log of the bound on #S(X;B) for a geometrically integral plane curve."""
    K = number_field(K)
    if variant not in ("t61", "t62"):
        raise InvalidParams(f"unknown variant {variant!r}")
    if delta < 2 or B < 1:
        raise InvalidParams("need delta >= 2 and B >= 1")
    if not grh:
        return _symbolic_degree("curve_count", variant)
    c = constants or constants_c2_c3(2, K)
    logB = math.log(B)
    if variant == "t61":
        sub = {"log C3": c.log_c3, "delta_power": 4 * math.log(delta), "B_power": 2 / delta * logB}
    else:
        sub = {
            "log C3'": c.log_c3prime,
            "delta_power": 3 * math.log(delta),
            "B_power": 2 / delta * logB,
            "log_max": math.log(max(logB / K.degree, 1.0)),
        }
    return BoundReport.assemble("curve_count", sub)


def siegel_report(n, delta, h_X, B, K="Q"):
    """Siegel-regime report: log of the degree cap, applicable when log B/[K:Q] is below the threshold."""
    r = regime(n, delta, h_X, B, K)
    sub = {"log_degree_cap": math.log(r.degree_cap)}
    rep = BoundReport.assemble("siegel", sub, applicable=r.name == "siegel")
    rep.notes = (f"threshold={r.threshold!r}", f"log B/[K:Q]={r.log_b_over_degree!r}")
    return rep
