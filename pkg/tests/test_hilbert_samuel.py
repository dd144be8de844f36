
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from arakount.errors import HypothesisViolated, InvalidParams
from arakount.hilbert_samuel import (
    INCLUSIVE,
    STRICT,
    HilbertProfile,
    QSeries,
    appendix_lower_bound,
    binom,
    checkpoint_closed_form,
    hs_value,
    interpolation_form,
    prefix_u,
    q_and_Q,
    r1_root_bounds,
    rank_r,
    rank_r1,
)

T = sp.symbols("t")


@pytest.mark.parametrize("n, mu", [(2, 1), (2, 3), (3, 2), (4, 3), (5, 5)])
def test_hilbert_function_matches_generating_series(n, mu):
    # local ring of a point of multiplicity mu on a hypersurface: (1 - t^mu) / (1 - t)^n
    series = sp.series((1 - T ** mu) / (1 - T) ** n, T, 0, 15).removeO()
    prof = HilbertProfile(n, mu)
    assert [hs_value(prof, s) for s in range(15)] == [series.coeff(T, s) for s in range(15)]


def test_node_q_series():
    s = QSeries(HilbertProfile(2, 2))
    assert [s.q(m) for m in range(5)] == [0, 1, 1, 2, 2]
    assert s.Q(4, INCLUSIVE) == 6
    assert s.Q(4, STRICT) == 4


def test_smooth_point_q_is_identity_on_curves():
    s = QSeries(HilbertProfile(2, 1))
    assert [s.q(m) for m in range(6)] == list(range(6))
    assert q_and_Q(HilbertProfile(2, 1), 3, STRICT) == (3, 3)


def test_unknown_convention():
    with pytest.raises(InvalidParams):
        QSeries(HilbertProfile(2, 1)).Q(3, "sideways")


@given(st.integers(2, 5), st.integers(1, 6), st.integers(0, 25))
def test_prefix_sums_equal_closed_form(n, mu, k):
    prof = HilbertProfile(n, mu)
    assert sum(hs_value(prof, s) for s in range(k + 1)) == prefix_u(prof, k)


@given(st.integers(2, 5), st.integers(1, 6), st.integers(0, 25))
def test_checkpoint_is_strict_sum(n, mu, k):
    prof = HilbertProfile(n, mu)
    s = QSeries(prof)
    u = prefix_u(prof, k)
    closed = checkpoint_closed_form(n, mu, k)
    assert s.Q(u, STRICT) == closed == sum(j * hs_value(prof, j) for j in range(k + 1))
    assert s.Q(u, INCLUSIVE) == closed + k + 1


@given(st.integers(2, 4), st.integers(1, 5), st.integers(1, 400))
def test_interpolation_between_checkpoints(n, mu, r):
    prof = HilbertProfile(n, mu)
    s = QSeries(prof)
    # r lies in (U(k-1), U(k)]
    k = next(j for j in range(r + 2) if prefix_u(prof, j) >= r)
    assert prefix_u(prof, k - 1) < r <= prefix_u(prof, k)
    assert s.Q(r, STRICT) == interpolation_form(n, mu, k, r)


@given(st.integers(2, 5), st.integers(1, 8), st.integers(1, 300))
def test_q_lower_bound_inclusive(n, mu, r):
    assert appendix_lower_bound(n, mu, r).holds


@pytest.mark.parametrize(
    "n, mu, r, bound, Q",
    [(2, 1, 10, 38.3333333333, 55), (2, 2, 4, -0.6666666667, 6), (3, 1, 1, -0.8905242918, 1)],
)
def test_q_lower_bound_values(n, mu, r, bound, Q):
    res = appendix_lower_bound(n, mu, r)
    assert res.bound == pytest.approx(bound, abs=1e-6)
    assert res.Q == Q and res.holds


def test_q_lower_bound_rejects_r_zero():
    with pytest.raises(InvalidParams):
        appendix_lower_bound(2, 1, 0)


def test_profile_validation():
    with pytest.raises(InvalidParams):
        HilbertProfile(1, 1)
    with pytest.raises(InvalidParams):
        HilbertProfile(2, 0)
    with pytest.raises(InvalidParams):
        HilbertProfile(2, 3, delta=2)


def test_ranks():
    assert rank_r(2, 3) == 10
    assert rank_r1(2, 4, 2) == 15 - 6
    assert binom(3, 5) == 0 and binom(3, -1) == 0


@given(st.integers(2, 4), st.integers(1, 6), st.integers(1, 40))
def test_r1_root_bracket(n, delta, extra):
    D = delta + extra
    lo, hi = r1_root_bounds(n, delta, D)
    root = rank_r1(n, D, delta) ** (1.0 / (n - 1))
    assert lo <= root + 1e-9 and root <= hi + 1e-9


def test_r1_root_bounds_example():
    assert r1_root_bounds(2, 3, 4) == pytest.approx((9, 15))


def test_r1_root_bounds_hypothesis():
    with pytest.raises(HypothesisViolated):
        r1_root_bounds(2, 3, 3)
