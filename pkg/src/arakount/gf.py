"""Finite fields F_{p^m} and dense univariate polynomials over them.

Prime-field elements are ints in [0, p). Extension-field elements are tuples
of m coefficients (low degree first) modulo a fixed monic irreducible of
degree m over F_p. Polynomials are lists of field elements, low degree first,
with no trailing zeros; the zero polynomial is [].
"""

from __future__ import annotations

import random
from functools import lru_cache


class PrimeField:
    def __init__(self, p):
        self.p = p
        self.m = 1
        self.order = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"GF({self.p})"

    def element(self, i):
        """The i-th element in a fixed enumeration, 0 <= i < order."""
        return i % self.p

    def from_int(self, a):
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def power(self, a, k):
        return pow(a, k, self.p)

    def is_zero(self, a):
        return a == 0


def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a, b, mod, p):
    """Product of F_p polynomials reduced modulo a monic ``mod``."""
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_rem(out, mod, p)


def _fp_rem(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] % p
        if c:
            for j in range(dm + 1):
                a[k - dm + j] = (a[k - dm + j] - c * mod[j]) % p
    return _fp_trim([x % p for x in a[:dm]] if len(a) > dm else [x % p for x in a])


def _fp_gcd(a, b, p):
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        b = [x * inv % p for x in b]
        a, b = b, _fp_rem(a, b, p)
    return a


def _fp_powmod_x(k, mod, p):
    """x^k modulo ``mod`` over F_p."""
    result, base = [1], _fp_rem([0, 1], mod, p)
    while k:
        if k & 1:
            result = _fp_mulmod(result, base, mod, p)
        base = _fp_mulmod(base, base, mod, p)
        k >>= 1
    return result


def _fp_is_irreducible(f, p):
    """Rabin test for a monic polynomial over F_p."""
    m = len(f) - 1
    primes = [q for q in range(2, m + 1) if m % q == 0 and all(q % r for r in range(2, q))]
    for q in primes:
        h = _fp_powmod_x(p ** (m // q), f, p)
        h = list(h) + [0] * (2 - len(h)) if len(h) < 2 else list(h)
        h[1] = (h[1] - 1) % p
        if len(_fp_gcd(f, _fp_trim(h), p)) != 1:
            return False
    h = list(_fp_powmod_x(p ** m, f, p))
    h += [0] * (2 - len(h))
    h[1] = (h[1] - 1) % p
    return not _fp_trim(h)


@lru_cache(maxsize=None)
def conway_like_modulus(p, m):
    """Lexicographically first monic irreducible of degree m over F_p."""
    for idx in range(p ** m):
        coeffs = []
        k = idx
        for _ in range(m):
            coeffs.append(k % p)
            k //= p
        f = coeffs + [1]
        if f[0] == 0:
            continue
        if _fp_is_irreducible(f, p):
            return tuple(f)
    raise ValueError(f"no irreducible of degree {m} over F_{p}")


class ExtensionField:
    def __init__(self, p, m):
        self.p = p
        self.m = m
        self.order = p ** m
        self.modulus = conway_like_modulus(p, m)
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def element(self, i):
        out = []
        for _ in range(self.m):
            out.append(i % self.p)
            i //= self.p
        return tuple(out)

    def from_int(self, a):
        return (a % self.p,) + (0,) * (self.m - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, m, mod = self.p, self.m, self.modulus
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                for j in range(m):
                    prod[k - m + j] -= c * mod[j]
        return tuple(x % p for x in prod[:m])

    def power(self, a, k):
        result, base = self.one, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        return self.power(a, self.order - 2)

    def is_zero(self, a):
        return not any(a)


def field(p, m=1):
    return PrimeField(p) if m == 1 else ExtensionField(p, m)


# --- univariate polynomials over a field ------------------------------------


def trim(F, a):
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def padd(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.add(x, y))
    return trim(F, out)


def psub(F, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.sub(x, y))
    return trim(F, out)


def pscale(F, a, c):
    return trim(F, [F.mul(x, c) for x in a])


def pmul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = F.inv(b[-1])
    if len(a) <= db:
        return [], trim(F, a)
    q = [F.zero] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if F.is_zero(c):
            continue
        c = F.mul(c, inv)
        q[k - db] = c
        for j in range(db + 1):
            a[k - db + j] = F.sub(a[k - db + j], F.mul(c, b[j]))
    return trim(F, q), trim(F, a[:db])


def prem(F, a, b):
    return pdivmod(F, a, b)[1]


def monic(F, a):
    if not a:
        return a
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F, a, b):
    a, b = trim(F, list(a)), trim(F, list(b))
    while b:
        a, b = b, prem(F, a, b)
    return monic(F, a)


def pderiv(F, a):
    return trim(F, [F.mul(F.from_int(i), a[i]) for i in range(1, len(a))])


def pmulmod(F, a, b, mod):
    return prem(F, pmul(F, a, b), mod)


def ppowmod(F, a, k, mod):
    result = [F.one]
    base = prem(F, a, mod)
    while k:
        if k & 1:
            result = pmulmod(F, result, base, mod)
        base = pmulmod(F, base, base, mod)
        k >>= 1
    return prem(F, result, mod)


def pinvmod(F, a, mod):
    """Inverse of a modulo mod via the extended Euclidean algorithm."""
    r0, r1 = list(mod), prem(F, a, mod)
    s0, s1 = [], [F.one]
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("not invertible")
    return prem(F, pscale(F, s0, F.inv(r0[0])), mod)


def is_squarefree(F, a):
    return len(pgcd(F, a, pderiv(F, a))) == 1


def distinct_degree(F, f):
    """Split a monic squarefree f into (g, d) with g the product of its degree-d factors."""
    out = []
    h = [F.zero, F.one]
    rest = list(f)
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = ppowmod(F, h, F.order, rest)
        g = pgcd(F, rest, psub(F, h, [F.zero, F.one]))
        if len(g) > 1:
            out.append((g, d))
            rest = pdivmod(F, rest, g)[0]
            h = prem(F, h, rest)
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def _random_poly(F, deg, rng):
    return trim(F, [F.element(rng.randrange(F.order)) for _ in range(deg)])


def equal_degree(F, g, d, rng):
    """Split a product of degree-d irreducibles into its factors."""
    n = len(g) - 1
    if n == d:
        return [g]
    while True:
        a = _random_poly(F, n, rng)
        if len(a) < 2:
            continue
        if F.p == 2:
            t, cur = list(a), list(a)
            for _ in range(F.m * d - 1):
                cur = pmulmod(F, cur, cur, g)
                t = padd(F, t, cur)
            b = t
        else:
            b = psub(F, ppowmod(F, a, (F.order ** d - 1) // 2, g), [F.one])
        h = pgcd(F, g, b)
        if 1 < len(h) < len(g):
            other = pdivmod(F, g, h)[0]
            return equal_degree(F, h, d, rng) + equal_degree(F, monic(F, other), d, rng)


def factor_squarefree(F, f, seed=0):
    """Monic irreducible factors of a squarefree polynomial, sorted by degree."""
    f = monic(F, f)
    rng = random.Random(seed)
    out = []
    for g, d in distinct_degree(F, f):
        out.extend(equal_degree(F, g, d, rng))
    out.sort(key=len)
    return out
