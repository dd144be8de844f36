import math
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from arakount import parse_polynomial
from arakount.errors import BudgetExceeded, InvalidParams, Unsupported
from arakount.polynomial import HomogeneousPolynomial, monomials
from arakount.rational_points import bad_primes, enumerate_S, good_prime_scan, reduction_classes


def brute(f, B):
    out = set()
    for t in product(range(-B, B + 1), repeat=3):
        if not any(t) or math.gcd(*t) != 1 or next(c for c in t if c) < 0:
            continue
        if f.evaluate(t) == 0:
            out.add(t)
    return out


def got(f, B):
    return {p.coords for p in enumerate_S(f, B)}


@pytest.mark.parametrize(
    "text, B, count",
    [("x*z - y^2", 4, 8), ("x*z - y^2", 10, 16), ("x", 2, 8), ("x^2 + y^2 + z^2", 5, 0)],
)
def test_known_counts(text, B, count):
    assert enumerate_S(parse_polynomial(text), B).count == count


@st.composite
def small_curves(draw, degrees=(1, 2, 3)):
    d = draw(st.sampled_from(degrees))
    coeffs = {}
    for e in monomials(3, d):
        c = draw(st.integers(-3, 3))
        if c and draw(st.booleans()):
            coeffs[e] = c
    if not coeffs:
        coeffs[monomials(3, d)[0]] = 1
    return HomogeneousPolynomial(coeffs, 3)


@given(small_curves(), st.integers(1, 5))
@settings(max_examples=60)
def test_matches_brute_force(f, B):
    assert got(f, B) == brute(f, B)


@given(small_curves(degrees=(4,)), st.integers(1, 3))
@settings(max_examples=15)
def test_quartics_match_brute_force(f, B):
    assert got(f, B) == brute(f, B)


def test_fractional_bound_uses_floor():
    f = parse_polynomial("x*z - y^2")
    assert enumerate_S(f, 4.9).count == enumerate_S(f, 4).count


def test_points_are_sorted_and_on_curve():
    f = parse_polynomial("x^2 + y^2 - z^2")
    pts = enumerate_S(f, 30).points
    assert pts == sorted(pts)
    assert all(f.evaluate(p.coords) == 0 for p in pts)


def test_csv_shape():
    text = enumerate_S(parse_polynomial("x*z - y^2"), 4).to_csv().splitlines()
    assert text[0] == "x,y,z" and len(text) == 9


def test_errors():
    f = parse_polynomial("x*z - y^2")
    with pytest.raises(BudgetExceeded):
        enumerate_S(f, 11, budget=10)
    with pytest.raises(InvalidParams):
        enumerate_S(f, 0)
    with pytest.raises(Unsupported):
        enumerate_S(parse_polynomial("x*y - z*w"), 3)
    with pytest.raises(BudgetExceeded):
        enumerate_S(parse_polynomial("x^3 + y^3 - z^3"), 2000)


def test_reduction_classes_partition():
    pts = enumerate_S(parse_polynomial("x*z - y^2"), 10).points
    classes = reduction_classes(pts, 3)
    assert sum(len(v) for v in classes.values()) == len(pts)
    for key, members in classes.items():
        for P in members:
            # proportional mod 3: every 2x2 minor of (P, key) vanishes
            a = P.coords
            assert all((a[i] * key[j] - a[j] * key[i]) % 3 == 0 for i, j in [(0, 1), (1, 2), (0, 2)])
    assert len(classes) <= 4


def test_good_and_bad_primes():
    assert bad_primes(parse_polynomial("x*z - 3*y^2"), 10) == [3]
    assert bad_primes(parse_polynomial("x^2 + y^2 - z^2"), 10) == [2]
    scan = good_prime_scan(parse_polynomial("x*z - y^2"), 20)
    assert [p for p, _ in scan] == [2, 3, 5, 7, 11, 13, 17, 19] and all(g for _, g in scan)
