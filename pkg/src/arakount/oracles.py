"""Brute-force reference answers used to validate the fast algorithms.

Nothing here shares code with :mod:`arakount.gf` or the Hensel-lifting
integrality test: small extension fields are tabulated with numpy and
factors are found by exhaustive search over graded pieces.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb

import numpy as np

from .errors import Unsupported

MAX_ORACLE_FIELD = 2197


class TabulatedField:
    """F_{p^k} with elements 0..Q-1 (base-p digits) and full operation tables."""

    def __init__(self, p, k):
        self.p, self.k = p, k
        self.Q = Q = p ** k
        if Q > MAX_ORACLE_FIELD:
            raise Unsupported(f"oracle field of order {Q} too large")
        self.modulus = _irreducible_modulus(p, k)
        digits = np.array([[(e // p ** i) % p for i in range(k)] for e in range(Q)], dtype=np.int64)
        weights = p ** np.arange(k, dtype=np.int64)
        a = digits[:, None, :]
        b = digits[None, :, :]
        self.ADD = (((a + b) % p) @ weights).astype(np.int32)
        self.NEG = ((-digits % p) @ weights).astype(np.int32)
        prod = np.zeros((Q, Q, 2 * k - 1), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                prod[:, :, i + j] += digits[:, None, i] * digits[None, :, j]
        mod = self.modulus
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[:, :, top] % p
            for j in range(k):
                prod[:, :, top - k + j] -= c * mod[j]
        self.MUL = ((prod[:, :, :k] % p) @ weights).astype(np.int32)
        self.embed = lambda c: int(c % p)

    def sub(self, a, b):
        return self.ADD[a, self.NEG[b]]


def _poly_rem_fp(a, b, p):
    a = list(a)
    inv = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, x in enumerate(b):
            a[shift + i] = (a[shift + i] - c * x) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _irreducible_modulus(p, k):
    """First monic irreducible polynomial of degree k over F_p, by trial division."""
    if k == 1:
        return (0, 1)
    for coeffs in product(range(p), repeat=k):
        f = list(coeffs) + [1]
        if f[0] == 0:
            continue
        divisible = False
        for d in range(1, k // 2 + 1):
            for low in product(range(p), repeat=d):
                if not _poly_rem_fp(f, list(low) + [1], p):
                    divisible = True
                    break
            if divisible:
                break
        if not divisible:
            return tuple(f)
    raise AssertionError("unreachable")


@lru_cache(maxsize=8)
def tabulated_field(p, k):
    return TabulatedField(p, k)


# --- batched univariate helpers (rows are polynomials, low degree first) ----


def _bmul_fixed(T, A, h):
    """Rows of A times the fixed polynomial h."""
    M, la = A.shape
    out = np.zeros((M, la + len(h) - 1), dtype=np.int32)
    for i in range(la):
        for j, c in enumerate(h):
            if c:
                out[:, i + j] = T.ADD[out[:, i + j], T.MUL[A[:, i], c]]
    return out


def _bdivmod_monic(T, A, G):
    """Divide rows of A by rows of monic G (broadcastable); returns (quot, rem)."""
    A = A.copy()
    d = G.shape[1] - 1
    L = A.shape[1]
    if L <= d:
        return np.zeros((A.shape[0], 1), dtype=np.int32), A
    quot = np.zeros((A.shape[0], L - d), dtype=np.int32)
    for top in range(L - 1, d - 1, -1):
        c = A[:, top]
        quot[:, top - d] = c
        for i in range(d + 1):
            A[:, top - d + i] = T.sub(A[:, top - d + i], T.MUL[c, G[:, i]])
    return quot, A[:, :d]


def _all_polys(Q, length):
    grids = np.indices((Q,) * length).reshape(length, -1).T
    return grids.astype(np.int32)


def _pad(a, length):
    out = np.zeros(length, dtype=np.int32)
    out[: len(a)] = a[:length]
    return out


def _umul(T, a, b):
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int32)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = T.ADD[out[i + j], T.MUL[x, y]]
    return out


# --- factor search ----------------------------------------------------------


def _monic_in_y_chart(T, coeffs, delta):
    """Graded pieces f_0..f_delta of F(x + a y, y, 1 + b y) made monic in y.

    Each f_k is returned as the univariate polynomial f_k(1, y).
    """
    Q = T.Q
    for a, b in product(range(Q), repeat=2):
        lead = 0
        for (ex, ey, ez), c in coeffs.items():
            term = T.MUL[T.MUL[T.embed(c), _pow(T, a, ex)], _pow(T, b, ez)]
            lead = T.ADD[lead, term]
        if lead == 0:
            continue
        inv = next(v for v in range(1, Q) if T.MUL[lead, v] == 1)
        pieces = [np.zeros(k + 1, dtype=np.int32) for k in range(delta + 1)]
        for (ex, ey, ez), c in coeffs.items():
            cc = T.MUL[T.embed(c), inv]
            # (x + a y)^ex y^ey (1 + b y)^ez, sorted by total degree
            for s in range(ex + 1):
                c1 = T.MUL[cc, T.MUL[T.embed(comb(ex, s)), _pow(T, a, ex - s)]]
                for u in range(ez + 1):
                    c2 = T.MUL[c1, T.MUL[T.embed(comb(ez, u)), _pow(T, b, u)]]
                    if not c2:
                        continue
                    ydeg = ex - s + ey + u
                    k = s + ydeg
                    pieces[k][ydeg] = T.ADD[pieces[k][ydeg], c2]
        return pieces
    return None


def _pow(T, a, e):
    r = 1
    for _ in range(e):
        r = T.MUL[r, a]
    return int(r)


def _dense(pieces, size):
    """Graded pieces f_k(1, y) to a dense array A[i, j] = coefficient of x^i y^j."""
    A = np.zeros((size, size), dtype=np.int32)
    for k, piece in enumerate(pieces):
        for j, c in enumerate(piece):
            if c:
                A[k - j, j] = c
    return A


def _divides(T, fpieces, gpieces, delta):
    """Exact long division in y over F[x]; g is monic in y of degree d."""
    size = 2 * delta + 2
    A = _dense(fpieces, size)
    G = _dense(gpieces, size)
    d = len(gpieces) - 1
    nz = [(i, j, G[i, j]) for i, j in zip(*np.nonzero(G))]
    for top in range(delta, d - 1, -1):
        row = A[:, top].copy()
        if not row.any():
            continue
        for i, j, c in nz:
            col = j + top - d
            L = size - i
            A[i:, col] = T.sub(A[i:, col], T.MUL[row[:L], c])
    return not A.any()


def _search(T, f, delta, d):
    """Whether f has a monic-in-y factor of total degree d."""
    Q = T.Q
    hd = delta - d
    # leading forms: monic g_d(1, y) dividing f_delta(1, y)
    lead_cands = _all_polys(Q, d)
    G = np.hstack([lead_cands, np.ones((lead_cands.shape[0], 1), dtype=np.int32)])
    quot, rem = _bdivmod_monic(T, np.broadcast_to(f[delta], (G.shape[0], delta + 1)), G)
    ok = ~rem.any(axis=1)
    for gd, hq in zip(G[ok], quot[ok]):
        g = {d: gd}
        h = {hd: _pad(hq, hd + 1)}
        if _extend(T, f, delta, d, g, h, 1):
            return True
    return False


def _extend(T, f, delta, d, g, h, j):
    hd = delta - d
    if j > d:
        pieces = [np.zeros(k + 1, dtype=np.int32) for k in range(d + 1)]
        for k, v in g.items():
            pieces[k] = _pad(v, k + 1)
        return _divides(T, f, pieces, delta)
    e = delta - j
    R = f[e].copy()
    for a, ga in g.items():
        b = e - a
        if b in h:
            R = _sub_poly(T, R, _umul(T, ga, h[b]), e + 1)
    cands = _all_polys(T.Q, d - j + 1)
    prod_ = _bmul_fixed(T, cands, h[hd])
    width = e + 1
    prod_ = prod_[:, :width] if prod_.shape[1] >= width else np.hstack(
        [prod_, np.zeros((prod_.shape[0], width - prod_.shape[1]), dtype=np.int32)]
    )
    resid = T.sub(np.broadcast_to(R, prod_.shape), prod_)
    quot, rem = _bdivmod_monic(T, resid, g[d][None, :])
    ok = np.nonzero(~rem.any(axis=1))[0]
    for idx in ok:
        g2 = dict(g)
        g2[d - j] = cands[idx]
        h2 = dict(h)
        h2[hd - j] = _pad(quot[idx], hd - j + 1)
        if _extend(T, f, delta, d, g2, h2, j + 1):
            return True
    return False


def _sub_poly(T, a, b, length):
    return T.sub(_pad(a, length), _pad(b, length))


def oracle_reducible_over(coeffs, p, delta, k):
    """Whether the plane curve (coefficient dict mod p) has a proper factor over F_{p^k}.

    Returns None when every point [a:1:b] over F_{p^k} lies on the curve.
    """
    T = tabulated_field(p, k)
    f = _monic_in_y_chart(T, coeffs, delta)
    if f is None:
        return None
    return any(_search(T, f, delta, d) for d in range(1, delta // 2 + 1))


def _radical(n):
    r, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            r *= d
            while n % d == 0:
                n //= d
        d += 1
    return r * n if n > 1 else r


def oracle_geometrically_integral(coeffs, p, delta):
    """Absolute irreducibility by exhaustive factor search over one extension.

    Reducible over the algebraic closure means reducible over F_p, or the
    curve is a Galois orbit of s > 1 conjugate components with s | delta;
    that orbit breaks over F_{p^l} for every prime l dividing s, hence over
    F_{p^k} whenever rad(delta) | k. If the field is too small to provide a
    monic chart, k is doubled.
    """
    if delta == 1:
        return True
    k = _radical(delta)
    while True:
        if p ** k > MAX_ORACLE_FIELD:
            raise Unsupported(f"no monic chart over fields of order <= {MAX_ORACLE_FIELD}")
        answer = oracle_reducible_over(coeffs, p, delta, k)
        if answer is not None:
            return not answer
        k *= 2
