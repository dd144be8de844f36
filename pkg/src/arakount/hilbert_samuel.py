"""Hilbert-Samuel combinatorics of a point on a hypersurface.

For a point of multiplicity mu on a hypersurface in P^n the local
Hilbert-Samuel function is H(s) = C(n+s-1, s) - C(n+s-mu-1, s-mu).
The series q lists each s exactly H(s) times in increasing order and Q is
its running sum. Two summation conventions are exposed:

* ``inclusive``: Q(m) = q(0) + ... + q(m)
* ``strict``:    Q(m) = q(0) + ... + q(m-1), the sum of the first m entries

The checkpoint formula for Q(U(k)) and the piecewise-linear interpolation
between checkpoints hold in the strict convention; see ``checkpoint_closed_form``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import HypothesisViolated, InvalidParams

INCLUSIVE = "inclusive"
STRICT = "strict"


def binom(a, b):
    """C(a, b), zero whenever b < 0 or a < b."""
    if b < 0 or a < b or a < 0:
        return 0
    return math.comb(a, b)


def rank_r(n, D):
    if n < 1 or D < 1:
        raise InvalidParams("need n >= 1 and D >= 1")
    return binom(n + D, D)


def rank_r1(n, D, delta=None):
    """Rank of degree-D forms restricted to a degree-delta hypersurface."""
    if n < 1 or D < 1:
        raise InvalidParams("need n >= 1 and D >= 1")
    if delta is None:
        return binom(n + D, n)
    if delta < 1:
        raise InvalidParams("delta must be positive")
    return binom(n + D, n) - binom(n + D - delta, n)


@dataclass(frozen=True)
class HilbertProfile:
    n: int
    mu: int
    delta: int | None = None

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParams("ambient dimension must be at least 2")
        if self.mu < 1:
            raise InvalidParams("multiplicity must be at least 1")
        if self.delta is not None and self.delta < self.mu:
            raise InvalidParams("multiplicity cannot exceed the degree")


def _profile(profile_or_n, mu=None):
    if isinstance(profile_or_n, HilbertProfile):
        return profile_or_n
    return HilbertProfile(profile_or_n, mu)


def hs_value(profile: HilbertProfile, s: int) -> int:
    if s < 0:
        raise InvalidParams("s must be nonnegative")
    n, mu = profile.n, profile.mu
    return binom(n + s - 1, s) - binom(n + s - mu - 1, s - mu)


def prefix_u(profile: HilbertProfile, k: int) -> int:
    """U(k) = H(0) + ... + H(k) in closed form."""
    if k < 0:
        return 0
    n, mu = profile.n, profile.mu
    return binom(n + k, n) - binom(n + k - mu, n)


def checkpoint_closed_form(n, mu, k):
    """n C(k+n, n+1) - n C(k-mu+n, n+1) - mu C(n+k-mu, n).

    Equals sum_{j<=k} j H(j), that is the sum of the first U(k) entries of q
    (the strict Q at U(k)).
    """
    return n * binom(k + n, n + 1) - n * binom(k - mu + n, n + 1) - mu * binom(n + k - mu, n)


def interpolation_form(n, mu, k, r):
    """k r + C(n+k-mu, n+1) - C(n+k, n+1), valid for U(k-1) < r <= U(k) (strict Q)."""
    return k * r + binom(n + k - mu, n + 1) - binom(n + k, n + 1)


class QSeries:
    """Incremental view of q and Q for one profile.

    Block s of q holds H(s) copies of s. Blocks are generated lazily by
    summing H directly, independent of the closed forms above.
    """

    def __init__(self, profile: HilbertProfile):
        self.profile = profile
        self._ends = []  # _ends[s] = number of entries in blocks 0..s
        self._wsum = []  # _wsum[s] = sum of entries in blocks 0..s

    def _extend_to(self, m):
        while not self._ends or self._ends[-1] <= m:
            s = len(self._ends)
            h = hs_value(self.profile, s)
            end = (self._ends[-1] if s else 0) + h
            w = (self._wsum[-1] if s else 0) + s * h
            self._ends.append(end)
            self._wsum.append(w)

    def block_of(self, m):
        self._extend_to(m)
        lo, hi = 0, len(self._ends) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self._ends[mid] > m:
                hi = mid
            else:
                lo = mid + 1
        return lo

    def q(self, m):
        if m < 0:
            raise InvalidParams("m must be nonnegative")
        return self.block_of(m)

    def first_terms_sum(self, count):
        """Sum of the first ``count`` entries of q."""
        if count <= 0:
            return 0
        last = count - 1
        k = self.block_of(last)
        before = self._ends[k - 1] if k else 0
        wbefore = self._wsum[k - 1] if k else 0
        return wbefore + k * (count - before)

    def Q(self, m, convention=INCLUSIVE):
        if m < 0:
            raise InvalidParams("m must be nonnegative")
        if convention == INCLUSIVE:
            return self.first_terms_sum(m + 1)
        if convention == STRICT:
            return self.first_terms_sum(m)
        raise InvalidParams(f"unknown convention {convention!r}")


def q_and_Q(profile: HilbertProfile, m: int, convention: str = INCLUSIVE):
    s = QSeries(profile)
    return s.q(m), s.Q(m, convention)


class AppendixBound(NamedTuple):
    bound: float
    Q: int
    holds: bool


def appendix_bound_value(n, mu, r):
    """((n-1)!/mu)^(1/(n-1)) ((n-1)/n) r^(n/(n-1)) - (n^3+2n^2+n-4)/(2n(n+1)) r."""
    lead = (math.factorial(n - 1) / mu) ** (1.0 / (n - 1)) * ((n - 1) / n) * r ** (n / (n - 1))
    return lead - (n ** 3 + 2 * n * n + n - 4) / (2 * n * (n + 1)) * r


def appendix_lower_bound(n, mu, r, convention=INCLUSIVE, series=None):
    if n < 2 or mu < 1:
        raise InvalidParams("need n >= 2 and mu >= 1")
    if r < 1:
        raise InvalidParams("r must be at least 1; the strict bound is degenerate at r = 0")
    series = series or QSeries(HilbertProfile(n, mu))
    b = appendix_bound_value(n, mu, r)
    Q = series.Q(r, convention)
    return AppendixBound(b, Q, Q > b)


def r1_root_bounds(n, delta, D):
    """Bracket for r1(n, D)^(1/(n-1)) valid when D >= delta + 1."""
    if n < 2 or delta < 1:
        raise InvalidParams("need n >= 2 and delta >= 1")
    if D <= delta:
        raise HypothesisViolated(f"need D > delta, got D={D}, delta={delta}")
    c = (delta / math.factorial(n - 1)) ** (1.0 / (n - 1))
    return c * (D - (delta - 2)), c * (D + n / 2)
