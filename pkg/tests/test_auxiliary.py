import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from arakount import parse_polynomial
from arakount.auxiliary import (
    block_diagonal_valuation,
    conic_class_points,
    determinant,
    determinant_experiment,
    exact_nullspace,
    minimal_auxiliary,
    monomial_matrix,
    p_valuation,
    padic_det_valuation,
    rank,
)
from arakount.errors import BudgetExceeded, InvalidParams, SingularMinor
from arakount.polynomial import HomogeneousPolynomial
from arakount.rational_points import enumerate_S

coords = st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6)).filter(any)


@given(st.lists(coords, min_size=1, max_size=8, unique=True), st.integers(1, 3))
@settings(max_examples=60)
def test_rank_and_nullspace_against_sympy(points, D):
    M = monomial_matrix(points, D)
    S = sp.Matrix(M.rows)
    assert rank(M) == S.rank()
    basis = exact_nullspace(M)
    assert len(basis) == len(M.columns) - S.rank()
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M.rows)
    if basis:
        assert sp.Matrix(basis).rank() == len(basis)


@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_against_sympy(rows):
    assert determinant(rows) == sp.Matrix(rows).det()


def test_identity_and_coordinate_matrices():
    M = monomial_matrix([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 1)
    assert M.columns == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert M.rows == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert exact_nullspace(M) == []
    M = monomial_matrix([(2, 3, 5)], 2)
    assert M.shape == (1, 6)
    assert M.rows[0] == tuple(2 ** e[0] * 3 ** e[1] * 5 ** e[2] for e in M.columns)


def test_nullspace_of_conic_points_at_degree_3():
    f = parse_polynomial("x*z - y^2")
    pts = [p.coords for p in enumerate_S(f, 6)]
    M = monomial_matrix(pts, 3)
    basis = exact_nullspace(M)
    # with many points on the conic every cubic through them is f times a linear form
    assert len(basis) == 3
    for v in basis:
        assert M.polynomial(v).divmod(f)[1].is_zero()


def test_minimal_auxiliary_conic():
    f = parse_polynomial("x*z - y^2")
    pts = enumerate_S(f, 4).points
    aux = minimal_auxiliary(f, pts)
    assert aux.D == 4 and aux.verify(f)
    assert aux.g == parse_polynomial("4*x^3*y - 21*x^2*y*z + 21*x*y*z^2 - 4*y*z^3")
    assert all(v == 0 for v in aux.evaluations)


def test_minimal_auxiliary_degenerate_inputs():
    f = parse_polynomial("x - y")
    assert minimal_auxiliary(f, []).g == parse_polynomial("z")
    assert minimal_auxiliary(parse_polynomial("x*z - y^2"), [(1, 1, 1)]).g == parse_polynomial("x - y")
    with pytest.raises(InvalidParams):
        minimal_auxiliary(f, [(1, 2, 3)])
    with pytest.raises(BudgetExceeded):
        minimal_auxiliary(parse_polynomial("x*z - y^2"), enumerate_S(parse_polynomial("x*z - y^2"), 10).points, cap=3)


@given(st.lists(coords, min_size=1, max_size=6, unique=True))
@settings(max_examples=30)
def test_minimal_auxiliary_vanishes_and_is_minimal(raw):
    f = parse_polynomial("x*z - y^2")
    pts = [(s * s, s * t, t * t) for s, t, _ in raw if s or t]
    if not pts:
        return
    aux = minimal_auxiliary(f, pts)
    assert aux.verify(f)
    if aux.D > 1:
        M = monomial_matrix(pts, aux.D - 1)
        for v in exact_nullspace(M):
            assert M.polynomial(v).divmod(f)[1].is_zero()


def test_valuation_examples():
    pts = conic_class_points(3, 1, 3)
    monos = [(2, 0, 0), (1, 1, 0), (0, 2, 0)]
    v = padic_det_valuation(pts, monos, 3)
    det = sp.Matrix([[P[0] ** a * P[1] ** b * P[2] ** c for a, b, c in monos] for P in pts]).det()
    assert v == sp.multiplicity(3, det)
    assert padic_det_valuation([(1, 0, 0), (0, 1, 0)], [(1, 0, 0), (0, 1, 0)], 5) == 0


def test_singular_and_shape_errors():
    with pytest.raises(SingularMinor):
        padic_det_valuation([(1, 1, 1), (2, 2, 2)], [(1, 0, 0), (0, 1, 0)], 3)
    with pytest.raises(InvalidParams):
        padic_det_valuation([(1, 1, 1)], [(1, 0, 0), (0, 1, 0)], 3)
    with pytest.raises(InvalidParams):
        padic_det_valuation([(1, 1, 1), (1, 2, 3)], [(1, 0, 0), (0, 2, 0)], 3)
    with pytest.raises(SingularMinor):
        p_valuation(0, 2)


@given(st.integers(-50, 50).filter(bool), st.integers(0, 6), st.sampled_from([2, 3, 5, 7]))
def test_p_valuation(u, k, p):
    assert p_valuation(u * p ** k, p) == k + sp.multiplicity(p, abs(u))


def test_block_diagonal_is_additive():
    b1 = (conic_class_points(3, 1, 3), [(2, 0, 0), (1, 1, 0), (0, 2, 0)])
    b2 = (conic_class_points(3, 2, 2), [(1, 0, 0), (0, 1, 0)])
    total, va, vb = block_diagonal_valuation(b1, b2, 3)
    assert total == va + vb


def test_determinant_experiment_strict_bound():
    pts = conic_class_points(5, 2, 3)
    data = determinant_experiment(pts, 5, 2)
    assert data and all(v >= 3 for _, v in data)
    with pytest.raises(InvalidParams):
        determinant_experiment(conic_class_points(5, 2, 7), 5, 1)


def test_matrix_budget():
    with pytest.raises(BudgetExceeded):
        monomial_matrix([(1, 2, 3)] * 10, 5, budget=50)
    with pytest.raises(InvalidParams):
        monomial_matrix([(1, 2, 3)], 0)


def test_polynomial_from_vector():
    M = monomial_matrix([(1, 1, 1)], 1)
    g = M.polynomial((1, -1, 0))
    assert isinstance(g, HomogeneousPolynomial) and g == parse_polynomial("x - y")
