from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from arakount import parse_polynomial
from arakount.errors import ExprSyntaxError, InvalidPolynomial, NonHomogeneous, UnknownVariable
from arakount.polynomial import HomogeneousPolynomial, monomials

X, Y, Z = sp.symbols("x y z")


def to_sympy(f):
    return sum(sp.Rational(c) * X ** e[0] * Y ** e[1] * Z ** e[2] for e, c in f.items())


def test_parse_conic():
    f = parse_polynomial("x*z - y^2")
    assert f.degree == 2 and f.nvars == 3
    assert dict(f.items()) == {(1, 0, 1): 1, (0, 2, 0): -1}


def test_parse_cubic_three_terms():
    f = parse_polynomial("x^3 + 2*x*y*z - z^3")
    assert f.degree == 3 and len(f) == 3


def test_nonhomogeneous_reports_both_degrees():
    with pytest.raises(NonHomogeneous) as info:
        parse_polynomial("x^2 + y")
    assert info.value.degrees == (2, 1)


@pytest.mark.parametrize(
    "text, position",
    [("x**2", 2), ("x^2 +", 5), ("x ^ ^ 2", 4), ("2 * $", 4)],
)
def test_syntax_error_positions(text, position):
    with pytest.raises(ExprSyntaxError) as info:
        parse_polynomial(text)
    assert info.value.position == position


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse_polynomial("x^2 + q^2")


def test_mixed_variable_styles_rejected():
    with pytest.raises(UnknownVariable):
        parse_polynomial("x*x1")


def test_indexed_variables_and_rationals():
    f = parse_polynomial("3/4*x0*x3 - x2^2")
    assert f.nvars == 4
    assert f.coefficient((1, 0, 0, 1)) == Fraction(3, 4)


def test_input_size_limit():
    with pytest.raises(ExprSyntaxError):
        parse_polynomial("x" + " " * (64 * 1024))


def test_graded_lex_order():
    assert monomials(3, 2) == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def test_zero_polynomial_has_no_degree():
    zero = HomogeneousPolynomial.zero(3)
    assert zero.is_zero() and zero.degree is None


def test_inhomogeneous_construction_rejected():
    with pytest.raises(NonHomogeneous):
        HomogeneousPolynomial({(2, 0, 0): 1, (0, 1, 0): 1})


@st.composite
def forms(draw, max_degree=4):
    d = draw(st.integers(1, max_degree))
    mons = monomials(3, d)
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=6, unique=True))
    coeffs = draw(
        st.lists(
            st.fractions(min_value=-50, max_value=50, max_denominator=7).filter(lambda c: c != 0),
            min_size=len(chosen),
            max_size=len(chosen),
        )
    )
    return HomogeneousPolynomial(dict(zip(chosen, coeffs)), 3)


@given(forms())
def test_text_round_trip(f):
    assert parse_polynomial(f.to_text(), nvars=3) == f


def test_round_trip_500_seeded():
    import random

    rng = random.Random(0)
    for _ in range(500):
        d = rng.randint(1, 6)
        mons = monomials(3, d)
        k = rng.randint(1, min(6, len(mons)))
        terms = {e: Fraction(rng.randint(-99, 99) or 1, rng.randint(1, 9)) for e in rng.sample(mons, k)}
        f = HomogeneousPolynomial(terms, 3)
        assert parse_polynomial(f.to_text(), nvars=3) == f


@given(forms(3), forms(3))
def test_product_matches_sympy(f, g):
    assert sp.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0


@given(forms(3), forms(2))
def test_division_identity(g, f):
    if g.degree < f.degree:
        g = g * HomogeneousPolynomial.variable(0, 3) ** (f.degree - g.degree)
    q, r = g.divmod(f)
    assert q * f + r == g
    lead = f.leading_term()[0]
    for e, _ in r.items():
        assert not all(a >= b for a, b in zip(e, lead))


@given(forms(2), forms(2))
def test_multiples_have_zero_remainder(f, h):
    _, r = (f * h).divmod(f)
    assert r.is_zero()


def test_evaluate_and_derivative():
    f = parse_polynomial("x^2*z - y^3")
    assert f.evaluate((2, 1, 3)) == 11
    assert f.derivative(1) == parse_polynomial("-3*y^2")


def test_primitive_and_reduce_mod():
    f = parse_polynomial("6*x*z - 9*y^2")
    assert f.primitive() == parse_polynomial("2*x*z - 3*y^2")
    assert f.reduce_mod(3) == {(1, 0, 1): 2}


def test_content_of_zero_rejected():
    with pytest.raises(InvalidPolynomial):
        HomogeneousPolynomial.zero(3).primitive()
