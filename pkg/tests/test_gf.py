import random
from functools import reduce

import pytest
import sympy as sp
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_factor_sqf
from hypothesis import given, strategies as st

from arakount.gf import (
    ExtensionField,
    conway_like_modulus,
    factor_squarefree,
    field,
    is_squarefree,
    pdivmod,
    pgcd,
    pmul,
    trim,
)

FIELDS = [(2, 1), (3, 1), (7, 1), (2, 2), (2, 3), (3, 2), (5, 2)]


def elements(F):
    return st.integers(0, F.order - 1).map(F.element)


@pytest.mark.parametrize("p, m", FIELDS)
def test_field_axioms(p, m):
    F = field(p, m)
    rng = random.Random(p * 10 + m)
    els = [F.element(rng.randrange(F.order)) for _ in range(40)]
    for a, b, c in zip(els, els[1:], els[2:]):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(a, F.neg(a)) == F.zero
        if a != F.zero:
            assert F.mul(a, F.inv(a)) == F.one
        # Frobenius fixes the whole field after m steps
        assert F.power(a, F.order) == a


@pytest.mark.parametrize("p, m", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_modulus_is_irreducible(p, m):
    x = sp.symbols("x")
    mod = conway_like_modulus(p, m)
    poly = sp.Poly(list(reversed(mod)), x, modulus=p)
    assert poly.is_irreducible


@pytest.mark.parametrize("p, m", [(3, 2), (5, 2), (2, 3)])
def test_multiplicative_group_is_cyclic_of_full_order(p, m):
    F = ExtensionField(p, m)
    orders = set()
    for i in range(1, F.order):
        a = F.element(i)
        k, x = 1, a
        while x != F.one:
            x = F.mul(x, a)
            k += 1
        orders.add(k)
    assert max(orders) == F.order - 1


def _random_poly(F, deg, rng):
    return trim(F, [F.element(rng.randrange(F.order)) for _ in range(deg)] + [F.one])


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_prime_field_factorization_matches_sympy(p):
    F = field(p)
    rng = random.Random(p)
    done = 0
    while done < 15:
        f = _random_poly(F, rng.randint(2, 9), rng)
        if not is_squarefree(F, f):
            continue
        ours = sorted(len(g) - 1 for g in factor_squarefree(F, f, seed=done))
        _, theirs = gf_factor_sqf([int(c) for c in reversed(f)], p, ZZ)
        assert ours == sorted(len(fac) - 1 for fac in theirs)
        done += 1


def _roots(F, g):
    def ev(a):
        acc = F.zero
        for c in reversed(g):
            acc = F.add(F.mul(acc, a), c)
        return acc

    return [i for i in range(F.order) if ev(F.element(i)) == F.zero]


@pytest.mark.parametrize("p, m", [(2, 2), (2, 3), (3, 2)])
def test_extension_factorization_products_and_irreducibility(p, m):
    F = field(p, m)
    rng = random.Random(7)
    for trial in range(12):
        f = _random_poly(F, rng.randint(2, 6), rng)
        if not is_squarefree(F, f):
            continue
        facs = factor_squarefree(F, f, seed=trial)
        assert reduce(lambda a, b: pmul(F, a, b), facs) == f
        for g in facs:
            assert g[-1] == F.one
            if len(g) - 1 in (2, 3):
                assert not _roots(F, g)


def test_trace_splitting_in_characteristic_two():
    F = field(2, 2)
    # x^4 - x = product of (x - a) over F_4
    f = trim(F, [F.zero, F.neg(F.one), F.zero, F.zero, F.one])
    facs = factor_squarefree(F, f)
    assert len(facs) == 4 and all(len(g) == 2 for g in facs)


@given(st.data())
def test_division_identity(data):
    F = field(5, 2)
    a = data.draw(st.lists(elements(F), min_size=1, max_size=8))
    b = data.draw(st.lists(elements(F), min_size=1, max_size=5))
    a, b = trim(F, a), trim(F, b)
    if not b:
        return
    q, r = pdivmod(F, a, b)
    back = trim(F, [F.add(x, y) for x, y in zip(pmul(F, q, b) + [F.zero] * 20, r + [F.zero] * 40)])
    assert back == a
    assert len(r) < len(b)
    g = pgcd(F, a, b)
    assert g and g[-1] == F.one
