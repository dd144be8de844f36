"""Prime ideals of Q and quadratic fields, Chebyshev-type sums, GRH envelopes.

Quadratic fields are described by their fundamental discriminant d and a
rational prime p splits, stays inert or ramifies according to the Kronecker
symbol (d|p) = +1, -1, 0.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BudgetExceeded, HypothesisViolated, InvalidFieldData, InvalidParams, Unsupported

LIMIT_Q = 10 ** 8
LIMIT_QUADRATIC = 10 ** 7
CACHE_MAGIC = b"ARAKPRIM"

# GRH-conditional constants of the explicit remainder terms
C_THETA = 528.0
C_PSI = 9550.0
C_PHI = 2516.0


@dataclass(frozen=True)
class NumberFieldData:
    label: str
    degree: int
    abs_disc: int
    quad_disc: int | None = None

    @property
    def log_factor(self):
        """log |disc| + [K:Q], the common factor of every GRH envelope."""
        return math.log(self.abs_disc) + self.degree


def _squarefree(D):
    D = abs(D)
    k = 2
    while k * k <= D:
        if D % (k * k) == 0:
            return False
        k += 1
    return True


def quadratic_field(D):
    """Q(sqrt D) for a squarefree integer D not in {0, 1}."""
    D = int(D)
    if D in (0, 1) or not _squarefree(D):
        raise InvalidFieldData(f"Q(sqrt {D}) needs a squarefree D other than 0 and 1")
    disc = D if D % 4 == 1 else 4 * D
    label = "Q(i)" if D == -1 else f"Q(sqrt {D})"
    return NumberFieldData(label, 2, abs(disc), disc)


RATIONALS = NumberFieldData("Q", 1, 1, None)

_SQRT_LABEL = re.compile(r"^(?:Qsqrt:|Q\(sqrt\s*\(?)\s*(-?\d+)\s*\)?\)?$")


def number_field(label) -> NumberFieldData:
    """Parse ``Q``, ``Qi``/``Q(i)`` or ``Qsqrt:D``/``Q(sqrt D)``."""
    if isinstance(label, NumberFieldData):
        return label
    s = str(label).strip()
    if s in ("Q", "QQ"):
        return RATIONALS
    if s in ("Qi", "Q(i)"):
        return quadratic_field(-1)
    m = _SQRT_LABEL.match(s)
    if m:
        return quadratic_field(int(m.group(1)))
    raise InvalidFieldData(f"unknown field {label!r}; use Q, Qi or Qsqrt:D")


# --- sieve -----------------------------------------------------------------


def _sieve(limit):
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    # odd-only sieve: index i stands for 2i+1
    size = (limit - 1) // 2 + 1
    odd = np.ones(size, dtype=bool)
    odd[0] = False
    for i in range(1, (math.isqrt(limit) - 1) // 2 + 1):
        if odd[i]:
            p = 2 * i + 1
            odd[p * p // 2 :: p] = False
    primes = 2 * np.nonzero(odd)[0].astype(np.int64) + 1
    return np.concatenate([np.array([2], dtype=np.int64), primes])


def _read_cache(path):
    try:
        with open(path, "rb") as fh:
            head = fh.read(8)
            if head != CACHE_MAGIC:
                return None
            data = np.frombuffer(fh.read(), dtype="<u8").astype(np.int64)
    except OSError:
        return None
    return data


def _write_cache(path, primes):
    try:
        tmp = f"{path}.tmp{os.getpid()}"
        with open(tmp, "wb") as fh:
            fh.write(CACHE_MAGIC)
            fh.write(primes.astype("<u8").tobytes())
        os.replace(tmp, path)
    except OSError:
        pass


_memo = {"limit": 0, "primes": np.zeros(0, dtype=np.int64)}


def primes_up_to(x) -> np.ndarray:
    """All rational primes <= x as an int64 array.

    When ARAKOUNT_CACHE names a file it is used as a persistent cache. A cached
    list answers any query up to its largest prime.
    """
    limit = int(math.floor(x))
    if limit > LIMIT_Q:
        raise BudgetExceeded(f"prime sieve limit {limit} exceeds {LIMIT_Q}")
    if limit <= _memo["limit"]:
        pr = _memo["primes"]
        return pr[: np.searchsorted(pr, limit, side="right")]
    path = os.environ.get("ARAKOUNT_CACHE")
    primes = None
    if path:
        cached = _read_cache(path)
        if cached is not None and cached.size and cached[-1] >= limit:
            primes, valid = cached, int(cached[-1])
    if primes is None:
        valid = max(limit, 1000)
        primes = _sieve(valid)
        if path:
            _write_cache(path, primes)
    _memo["limit"] = valid
    _memo["primes"] = primes
    return primes[: np.searchsorted(primes, limit, side="right")]


# --- splitting --------------------------------------------------------------


def kronecker(d, p):
    """Kronecker symbol (d|p) for a rational prime p."""
    if p == 2:
        if d % 2 == 0:
            return 0
        return 1 if d % 8 in (1, 7) else -1
    r = d % p
    if r == 0:
        return 0
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def _powmod(base, exp, mod):
    result = np.ones_like(base)
    base = base % mod
    exp = exp.copy()
    while np.any(exp > 0):
        odd = (exp & 1).astype(bool)
        result = np.where(odd, (result * base) % mod, result)
        base = (base * base) % mod
        exp >>= 1
    return result


def kronecker_array(d, primes: np.ndarray) -> np.ndarray:
    """Vectorized (d|p) over an array of primes below 2^31."""
    out = np.empty(primes.shape, dtype=np.int64)
    two = primes == 2
    if two.any():
        out[two] = kronecker(d, 2)
    odd = ~two
    p = primes[odd]
    r = np.mod(d, p)
    e = _powmod(r, (p - 1) // 2, p)
    vals = np.where(r == 0, 0, np.where(e == 1, 1, -1))
    out[odd] = vals
    return out


class PrimeIdealRecord(NamedTuple):
    p: int
    residue_degree: int
    norm: int


def _check_limit(K, x):
    cap = LIMIT_Q if K.degree == 1 else LIMIT_QUADRATIC
    if x > cap:
        raise BudgetExceeded(f"prime ideal enumeration up to {x} exceeds {cap} for {K.label}")


def _ideal_arrays(K, x):
    """Parallel arrays (p, f, norm) of prime ideals with norm <= x, sorted."""
    K = number_field(K)
    _check_limit(K, x)
    primes = primes_up_to(x)
    if K.degree == 1:
        return primes, np.ones_like(primes), primes
    chi = kronecker_array(K.quad_disc, primes)
    split = primes[chi == 1]
    ram = primes[chi == 0]
    inert = primes[chi == -1]
    inert = inert[inert * inert <= x]
    p = np.concatenate([split, split, ram, inert])
    f = np.concatenate([np.ones(2 * split.size + ram.size, dtype=np.int64), np.full(inert.size, 2, dtype=np.int64)])
    norm = p ** f
    order = np.lexsort((p, norm))
    return p[order], f[order], norm[order]


def prime_ideals_up_to(K, x) -> list[PrimeIdealRecord]:
    p, f, norm = _ideal_arrays(K, x)
    return [PrimeIdealRecord(int(a), int(b), int(c)) for a, b, c in zip(p, f, norm)]


def prime_ideals_above(K, p) -> list[PrimeIdealRecord]:
    K = number_field(K)
    if K.degree == 1:
        return [PrimeIdealRecord(p, 1, p)]
    chi = kronecker(K.quad_disc, p)
    if chi == 1:
        return [PrimeIdealRecord(p, 1, p)] * 2
    if chi == 0:
        return [PrimeIdealRecord(p, 1, p)]
    return [PrimeIdealRecord(p, 2, p * p)]


# --- sums -------------------------------------------------------------------


class ChebyshevSums(NamedTuple):
    theta: float
    psi: float
    phi: float
    x: float


def chebyshev_sums(K, x) -> ChebyshevSums:
    """theta = sum log N, psi = sum log N / N, phi = sum log N / N^(3/2) over N <= x."""
    if x < 2:
        return ChebyshevSums(0.0, 0.0, 0.0, x)
    _, _, norm = _ideal_arrays(K, x)
    nf = norm.astype(np.float64)
    logs = np.log(nf)
    return ChebyshevSums(
        math.fsum(logs),
        math.fsum(logs / nf),
        math.fsum(logs / nf ** 1.5),
        x,
    )


def divisor_mertens_bound(K, ideal_norm, prime_divisors):
    """(lhs, rhs, holds) for sum over primes containing an ideal of log N / N.

    lhs = (1/[K:Q]) sum log N(p)/N(p) over the distinct primes given,
    rhs = log log N(a) + 2.
    """
    K = number_field(K)
    if ideal_norm < 2:
        raise InvalidParams("ideal norm must be at least 2")
    seen = set()
    terms = []
    for rec in prime_divisors:
        key = tuple(rec) if not isinstance(rec, int) else (rec, 1, rec)
        if key in seen and K.degree == 1:
            continue
        seen.add(key)
        N = key[2]
        terms.append(math.log(N) / N)
    lhs = math.fsum(terms) / K.degree
    rhs = math.log(math.log(ideal_norm)) + 2
    return lhs, rhs, lhs <= rhs


# --- GRH envelopes ----------------------------------------------------------


def eps1(K, x):
    K = number_field(K)
    return C_THETA * math.sqrt(x) * math.log(x) ** 2 * K.log_factor


def eps2(K):
    return C_PSI * number_field(K).log_factor


def eps3(K, x):
    return C_PHI * math.log(x) ** 2 / x * number_field(K).log_factor


def eps3_integral(K, x):
    """eps_1(x)/x^(3/2) + (3/2) int_2^x eps_1(t)/t^(5/2) dt, evaluated in closed form.

    Unlike :func:`eps3` this keeps the constant coming from the lower limit of
    the integral, so it does not tend to 0 as x grows.
    """
    L = number_field(K).log_factor
    lx = math.log(x)
    l2 = math.log(2)
    integral = (l2 * l2 + 2 * l2 + 2) / 2 - (lx * lx + 2 * lx + 2) / x
    return C_THETA * L * (lx * lx / x + 1.5 * integral)


class GRHEnvelopes(NamedTuple):
    eps1: float
    eps2: float
    eps3: float
    checks: dict


def grh_envelopes(K, x, sums: ChebyshevSums | None = None) -> GRHEnvelopes:
    """Envelope values at x and whether the computed sums sit inside them.

    The phi envelope is only claimed for x >= 3 here: at x = 1 the sum is
    empty and |0 - 3 sqrt(2)/2 + 2| > 0 = eps3(1).
    """
    K = number_field(K)
    if x < 3:
        raise HypothesisViolated(f"explicit envelopes need x >= 3, got {x}")
    s = sums or chebyshev_sums(K, x)
    e1, e2, e3 = eps1(K, x), eps2(K), eps3(K, x)
    dev_theta = abs(s.theta - x)
    dev_psi = abs(s.psi - math.log(x))
    dev_phi = abs(s.phi - 1.5 * math.sqrt(2) + 2 / math.sqrt(x))
    checks = {
        "theta": {"deviation": dev_theta, "envelope": e1, "holds": dev_theta <= e1},
        "psi": {"deviation": dev_psi, "envelope": e2, "holds": dev_psi <= e2},
        "phi": {"deviation": dev_phi, "envelope": e3, "holds": dev_phi <= e3},
    }
    e3i = eps3_integral(K, x)
    checks["phi_integral_form"] = {"deviation": dev_phi, "envelope": e3i, "holds": dev_phi <= e3i}
    return GRHEnvelopes(e1, e2, e3, checks)


class Kappas(NamedTuple):
    kappa1: float
    kappa2: float
    x_star: float
    delta_star: int


KAPPA2_DELTA_GRID = 10 ** 4


def kappa2_term(K, n, delta):
    x = 27 * delta ** 4
    return -3 * math.log(3) + 2 * n * n / (3 * math.sqrt(3)) + 2 * n * n * delta * delta * eps3(K, x) + 2 * eps2(K)


def kappa_bounds(K, n, grh=True) -> Kappas:
    """kappa1 = sup_{x>=3} eps1(x)/x and kappa2 = sup_{delta>=1} of its defining term.

    eps1(x)/x is a multiple of log(x)^2/sqrt(x), whose only stationary point
    on x > 1 is log x = 4, giving 16/e^2. For kappa2 the delta-dependent part
    is proportional to log(27 delta^4)^2 / delta^2, which decreases for
    delta >= 1; the grid scan over delta = 1..10^4 confirms the maximizer.
    """
    if not grh:
        raise Unsupported("kappa constants need the explicit GRH envelopes")
    K = number_field(K)
    if n < 2:
        raise InvalidParams("n must be at least 2")
    x_star = math.exp(4)
    k1 = C_THETA * K.log_factor * 16 / math.e ** 2
    best, arg = -math.inf, 1
    for d in range(1, KAPPA2_DELTA_GRID + 1):
        v = kappa2_term(K, n, d)
        if v > best:
            best, arg = v, d
    return Kappas(k1, best, x_star, arg)
