"""One test per acceptance criterion; each prints a PASS/FAIL line in the terminal summary."""

import pytest

from arakount import acceptance
from arakount.hilbert_samuel import INCLUSIVE, STRICT, HilbertProfile, QSeries, checkpoint_closed_form, prefix_u
from arakount.prime_distribution import grh_envelopes


def _run(number, acceptance_log):
    res = acceptance.CRITERIA[number - 1](0)
    line = acceptance.format_line(res)
    acceptance_log.append(line)
    print(line)
    return res


def test_criterion_01_hilbert_identities(acceptance_log):
    res = _run(1, acceptance_log)
    if not res.passed:
        pytest.xfail(
            "the checkpoint identity holds for the strict count Q(u) = #{s : HS(s) < u} "
            "but not for the inclusive one; see the decision ledger"
        )


def test_criterion_02_q_lower_bound(acceptance_log):
    assert _run(2, acceptance_log).passed


def test_criterion_03_finite_field_counts(acceptance_log):
    assert _run(3, acceptance_log).passed


def test_criterion_04_chebyshev_and_envelopes(acceptance_log):
    res = _run(4, acceptance_log)
    if not res.passed:
        pytest.xfail(
            "the closed-form phi envelope tends to 0 while the phi deviation tends to a "
            "positive constant; see the decision ledger"
        )


def test_criterion_05_divisor_mertens(acceptance_log):
    assert _run(5, acceptance_log).passed


def test_criterion_06_determinant_divisibility(acceptance_log):
    assert _run(6, acceptance_log).passed


def test_criterion_07_auxiliary_construction(acceptance_log):
    assert _run(7, acceptance_log).passed


def test_criterion_08_heights_and_c1(acceptance_log):
    assert _run(8, acceptance_log).passed


def test_criterion_09_geometric_integrality(acceptance_log):
    assert _run(9, acceptance_log).passed


def test_criterion_10_bad_prime_mass(acceptance_log):
    assert _run(10, acceptance_log).passed


def test_literal_inclusive_checkpoint_fails_as_recorded():
    # pins the known discrepancy: if the inclusive identity ever starts holding, this flags it
    res = acceptance.criterion_1(0)
    assert not res.passed and "inclusive Q(U(k)) == closed form: 0/" in res.detail


def test_strict_checkpoint_identity_holds_everywhere():
    for n in range(2, 5):
        for mu in range(1, 7):
            series = QSeries(HilbertProfile(n, mu))
            for k in range(21):
                u = prefix_u(HilbertProfile(n, mu), k)
                assert series.Q(u, STRICT) == checkpoint_closed_form(n, mu, k)
                assert series.Q(u, INCLUSIVE) == checkpoint_closed_form(n, mu, k) + k + 1


def test_envelope_failure_is_phi_only():
    res = acceptance.criterion_4(0)
    assert not res.passed
    for label in ("Q", "Qi", "Qsqrt:5"):
        for x in [3] + [10 ** k for k in range(1, 7)]:
            checks = grh_envelopes(label, x).checks
            assert checks["theta"]["holds"] and checks["psi"]["holds"]
            assert checks["phi_integral_form"]["holds"]
