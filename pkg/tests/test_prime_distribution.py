import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from arakount.errors import BudgetExceeded, HypothesisViolated, InvalidFieldData, Unsupported
from arakount.prime_distribution import (
    LIMIT_Q,
    chebyshev_sums,
    divisor_mertens_bound,
    eps1,
    eps3,
    eps3_integral,
    grh_envelopes,
    kappa_bounds,
    kronecker,
    number_field,
    prime_ideals_above,
    prime_ideals_up_to,
    primes_up_to,
)


def ideal_norms_by_roots(D, x):
    """Prime ideal norms of Z[t]/(t^2 - D) style fields via root counts mod p (D squarefree, D = 2,3 mod 4)."""
    out = []
    for p in sp.primerange(2, x + 1):
        roots = sum(1 for t in range(p) if (t * t - D) % p == 0)
        if p == 2 or D % p == 0:
            out.append(p)
        elif roots == 2:
            out += [p, p]
        elif p * p <= x:
            out.append(p * p)
    return sorted(out)


@pytest.mark.parametrize("x", [2, 10, 97, 1000, 7919, 20000])
def test_sieve_matches_sympy(x):
    assert primes_up_to(x).tolist() == list(sp.primerange(2, x + 1))


def test_sieve_limit():
    with pytest.raises(BudgetExceeded):
        primes_up_to(LIMIT_Q + 1)


@pytest.mark.parametrize("x", [10, 100, 1000])
def test_rational_sums_against_sympy(x):
    ps = list(sp.primerange(2, x + 1))
    s = chebyshev_sums("Q", x)
    assert s.theta == pytest.approx(math.fsum(math.log(p) for p in ps), rel=1e-12)
    assert s.psi == pytest.approx(math.fsum(math.log(p) / p for p in ps), rel=1e-12)
    assert s.phi == pytest.approx(math.fsum(math.log(p) / p ** 1.5 for p in ps), rel=1e-12)


def test_frozen_sums():
    s = chebyshev_sums("Q", 10)
    assert (round(s.theta, 5), round(s.psi, 5), round(s.phi, 5)) == (5.34711, 1.31265, 0.70551)
    s = chebyshev_sums("Q", 1000)
    assert round(s.theta, 5) == 956.24527 and round(s.psi, 6) == 5.60951 and round(s.phi, 6) == 1.232962


def test_gaussian_ideal_norms():
    norms = [r.norm for r in prime_ideals_up_to("Qi", 50)]
    assert norms == [2, 5, 5, 9, 13, 13, 17, 17, 29, 29, 37, 37, 41, 41, 49]


@pytest.mark.parametrize("D", [-1, 2, 3, -5, 6, 7])
def test_quadratic_ideals_by_root_count(D):
    got = [r.norm for r in prime_ideals_up_to(f"Qsqrt:{D}", 400)]
    assert got == ideal_norms_by_roots(D, 400)


@given(st.integers(-200, 200), st.sampled_from(list(sp.primerange(3, 200))))
def test_kronecker_matches_sympy(d, p):
    assert kronecker(d, p) == sp.jacobi_symbol(d % p, p)


def test_kronecker_at_two():
    assert [kronecker(d, 2) for d in (1, 5, -3, 8, 4)] == [1, -1, -1, 0, 0]


def test_ideals_above():
    assert len(prime_ideals_above("Qi", 5)) == 2
    assert prime_ideals_above("Qi", 3)[0].norm == 9
    assert len(prime_ideals_above("Qi", 2)) == 1


def test_field_parsing():
    assert number_field("Q(i)").abs_disc == 4
    assert number_field("Qsqrt:5").abs_disc == 5
    assert number_field("Qsqrt:-3").quad_disc == -3
    for bad in ("Qsqrt:4", "Qsqrt:1", "K"):
        with pytest.raises(InvalidFieldData):
            number_field(bad)


@pytest.mark.parametrize("K", ["Q", "Qi", "Qsqrt:2"])
@pytest.mark.parametrize("x", [3, 50, 10 ** 4])
def test_theta_psi_envelopes_hold(K, x):
    checks = grh_envelopes(K, x).checks
    assert checks["theta"]["holds"] and checks["psi"]["holds"]
    assert checks["phi_integral_form"]["holds"]


def test_envelope_domain():
    with pytest.raises(HypothesisViolated):
        grh_envelopes("Q", 2)


def test_closed_form_phi_envelope_shrinks_while_deviation_does_not():
    # the closed-form phi envelope tends to 0 but the deviation tends to a constant
    dev = grh_envelopes("Q", 10 ** 6).checks["phi"]
    assert dev["deviation"] > 0.8 and dev["envelope"] < 0.5 and not dev["holds"]


def test_eps3_integral_against_quadrature():
    from scipy.integrate import quad

    for x in (10.0, 1e3, 1e6):
        integral, _ = quad(lambda t: eps1("Q", t) / t ** 2.5, 2, x, limit=200)
        expected = eps1("Q", x) / x ** 1.5 + 1.5 * integral
        assert eps3_integral("Q", x) == pytest.approx(expected, rel=1e-8)


def test_eps3_closed_form():
    assert eps3("Q", math.e) == pytest.approx(2516 / math.e)


def test_kappas():
    k = kappa_bounds("Q", 2)
    assert round(k.kappa1, 2) == 1143.31 and round(k.kappa2, 2) == 27196.07
    grid = np.exp(np.linspace(math.log(3), math.log(1e9), 200001))
    assert k.kappa1 == pytest.approx(max(eps1("Q", t) / t for t in grid), rel=1e-6)
    with pytest.raises(Unsupported):
        kappa_bounds("Q", 2, grh=False)


def test_mertens_divisor_bound():
    lhs, rhs, holds = divisor_mertens_bound("Q", 30, [2, 3, 5])
    assert lhs == pytest.approx(math.log(2) / 2 + math.log(3) / 3 + math.log(5) / 5)
    assert rhs == pytest.approx(math.log(math.log(30)) + 2) and holds


def test_cache_round_trip(tmp_path, monkeypatch):
    import arakount.prime_distribution as pd

    path = tmp_path / "primes.bin"
    monkeypatch.setenv("ARAKOUNT_CACHE", str(path))
    monkeypatch.setattr(pd, "_memo", {"limit": 0, "primes": np.zeros(0, dtype=np.int64)})
    first = primes_up_to(5000)
    assert path.exists() and path.read_bytes()[:8] == pd.CACHE_MAGIC
    monkeypatch.setattr(pd, "_memo", {"limit": 0, "primes": np.zeros(0, dtype=np.int64)})
    again = primes_up_to(3000)
    assert again.tolist() == first[first <= 3000].tolist()
