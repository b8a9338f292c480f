import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from auxz import (
    DomainError,
    PAPER_TAU0,
    PrecisionCtx,
    a_inversions,
    complex_zeta,
    constants_default,
    corollary_rhs,
    dyadic_tau_threshold,
    final_inequality_check,
    mainbound_rhs,
    minimal_t_rect32,
    rect32_check,
    rect_boundary_check_s3,
    solve_threshold,
    sup_sum,
    tau0_conditions,
    threshold_gap,
    van1_rhs,
    vdc_d2_bound,
    vdc_d3_bound,
    verify_domination,
    verify_lemma1,
    verify_vdc2,
    verify_vdc3,
    zeta_inverse_bound,
    zeta_lower_bound,
)


def rel(a, b):
    return abs(a - b) / abs(b)


# constants


def test_a_inversions_agree():
    inv = a_inversions()
    vals = list(inv.values())
    assert max(vals) / min(vals) - 1 < 1e-3
    assert mp.nstr(inv["15.804"], 7) == "2.793779"


def test_constants_default():
    c = constants_default()
    assert mp.nstr(c.A3_hat, 7) == "11.48405"
    assert c.M == c.A3_hat
    assert rel((c.C3_hat / c.A3_hat) ** 12, 19.2088) < 1e-3
    with mp.workprec(200):
        # first corollary coefficient is 2 A3 / (2 - sqrt 2)
        assert abs(2 * c.A3_hat / (2 - mp.sqrt(2)) - mp.mpf("39.209")) < 1e-20
        # 4 sqrt(2) A = 15.804
        assert abs(4 * mp.sqrt(2) * c.A - mp.mpf("15.804")) < 1e-20


# van der Corput bounds


def test_vdc_d2_examples():
    c = constants_default()
    tau = 100
    t = 2 * mp.pi * tau
    assert rel(vdc_d2_bound(10, t), 24 * c.A) < 1e-12
    assert rel(vdc_d2_bound(tau, t), 6 * c.A * 10) < 1e-12
    assert mp.nstr(24 * c.A, 4) == "67.05"
    with pytest.raises(DomainError):
        vdc_d2_bound(10, 6)


def test_vdc_d3_examples():
    c = constants_default()
    b = vdc_d3_bound(0.5, 100)
    assert b.valid and rel(b.value, c.A3_hat * mp.mpf(100) ** (mp.mpf(5) / 12)) < 1e-12
    assert mp.nstr(b.value, 4) == "78.24"
    assert not vdc_d3_bound(mp.mpf(2) / 3, 100).valid
    assert not vdc_d3_bound(0.5, 18).valid


def test_tau0_conditions():
    c = constants_default()
    with mp.workprec(100):
        first = mp.mpf(3) ** (mp.mpf(8) / 3)
    assert mp.nstr(first, 6) == "18.7208"
    assert abs(tau0_conditions(3, 0.5) - first) < 1e-12
    assert rel(dyadic_tau_threshold(), 19.2088) < 1e-3
    # approaching alpha = 2/3 the ratio condition tends to (C3/A3)**12
    assert rel(tau0_conditions(3, mp.mpf(2) / 3 - mp.mpf(10) ** -12), 19.2088) < 1e-3
    assert abs(tau0_conditions(3, 0.5, M=c.C3_hat) - first) < 1e-12
    with pytest.raises(DomainError):
        tau0_conditions(2, 0.5)


@given(st.floats(0.01, 0.66), st.floats(1, 1e12))
def test_tau0_is_max_of_conditions(alpha, M):
    assert tau0_conditions(3, alpha, M) >= mp.mpf(3) ** (mp.mpf(8) / (6 * mp.mpf(alpha)))


def test_van1_examples():
    c = constants_default()
    third = 4 * c.A * (1 + 4 * mp.log(20) / (3 * mp.log(2)))
    assert mp.nstr(third, 5) == "75.573"
    assert van1_rhs(0.75, 20) > third
    assert van1_rhs(0.9, 1000) < van1_rhs(0.9, 20)
    assert van1_rhs(0.5 + 1e-9, 20) > 1e6
    with pytest.raises(DomainError):
        van1_rhs(1, 20)


def test_mainbound_and_corollary():
    assert mainbound_rhs(1.5, 100) < mainbound_rhs(1, 100)
    assert mainbound_rhs(1, 10**6) <= corollary_rhs(10**6)
    assert mp.nstr(corollary_rhs(100), 6) == "53.7202"
    t64 = corollary_rhs(mp.mpf(10) ** 64)
    lead = mp.mpf("39.209") * mp.mpf(10) ** (-mp.mpf(64) / 12)
    assert lead / t64 > 0.99
    with pytest.raises(DomainError):
        corollary_rhs(20)


@pytest.mark.parametrize("sigma", [1, 1.25, 1.5])
@pytest.mark.parametrize("tau", [20.1, 1e3, 1e20])
def test_domination_records(sigma, tau):
    assert verify_domination(sigma, tau).passed


# zeta lower bounds


def test_zeta_lower_bound_values():
    assert mp.nstr(zeta_lower_bound(1.5), 10) == "0.4601394297"
    assert abs(zeta_lower_bound(60) - 1) < 1e-15
    with pytest.raises(DomainError):
        zeta_lower_bound(1)


def test_zeta_lower_bound_increasing():
    vals = [zeta_lower_bound(1 + 0.05 * k) for k in range(1, 61)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("sigma, t", [(1.1, 1), (1.5, 14.1), (2, 100), (3.3, 1000)])
def test_lemma1(sigma, t, ctx):
    rec = verify_lemma1(sigma, t, ctx)
    assert rec.passed
    with mp.workprec(200):
        assert abs(rec.rhs - abs(mp.zeta(mp.mpc(sigma, t)))) < 1e-25


def test_zeta_inverse_bound(ctx):
    assert mp.nstr(zeta_inverse_bound(500), 4) == "266.6"
    assert 1 / abs(complex_zeta(mp.mpc(1, 500), ctx)) <= zeta_inverse_bound(500)
    with pytest.raises(DomainError):
        zeta_inverse_bound(mp.e)


# rectangle checks


def test_rect32_examples():
    assert rect32_check(2707).passed
    bad = rect32_check(2700)
    assert not bad.passed and mp.nstr(bad.margin, 4) == "-0.0003236"
    assert rect32_check(10**8).passed


def test_minimal_t_rect32():
    m = minimal_t_rect32()
    assert 2700 < m <= 2707
    assert not rect32_check(m - 1).passed


def test_s3_boundary():
    a = rect_boundary_check_s3(2707, 1.5)
    b = rect_boundary_check_s3(10**4, 2)
    c = rect_boundary_check_s3(2707, 2)
    assert a.passed and b.passed and c.passed
    assert b.margin > a.margin
    assert c.lhs < a.lhs
    assert a.params["uniform_pass"]
    with pytest.raises(DomainError):
        rect_boundary_check_s3(2706, 1.5)


# final inequality and threshold


def test_final_inequality_examples():
    assert final_inequality_check(1e66).passed
    assert not final_inequality_check(1e60).passed
    for tau in (1e64, 1e65, 1e67):
        if final_inequality_check(tau, 1).passed:
            assert final_inequality_check(tau, 1.5).passed


def test_threshold_solution():
    res = solve_threshold(PrecisionCtx(256))
    assert res.digits_verified >= 10
    assert res.sign_changes == 1
    assert mp.nstr(res.t0, 5) == "3.9212e+65"
    assert threshold_gap(res.tau0 * 0.9) > 0 > threshold_gap(res.tau0 * 1.1)
    with mp.workprec(300):
        assert abs(res.tau0 / mp.mpf(PAPER_TAU0) - 1) < mp.mpf(10) ** -45


def test_threshold_log_of_t_is_more_conservative():
    a = solve_threshold(PrecisionCtx(256))
    b = solve_threshold(PrecisionCtx(256), log_of="t")
    assert b.tau0 > a.tau0
    assert final_inequality_check(b.tau0 * 1.001, log_of="t").passed
    assert not final_inequality_check(b.tau0 * 0.999, log_of="t").passed


def test_threshold_needs_precision():
    with pytest.raises(DomainError):
        solve_threshold(PrecisionCtx(128))


def test_final_pass_monotone_beyond_threshold():
    tau0 = solve_threshold(PrecisionCtx(256)).tau0
    grid = [tau0 * mp.mpf(10) ** (k / 4) for k in range(1, 40)]
    assert all(final_inequality_check(tau).passed for tau in grid)


# brute force against the bounds


def test_vdc2_brute_force(ctx):
    rec = verify_vdc2(100, 10**4, ctx)
    assert rec.passed and rec.lhs == sup_sum(100, 10**4, ctx).value


def test_vdc3_validity(ctx):
    assert verify_vdc3(10, 1e3, ctx) is None or verify_vdc3(10, 1e3, ctx).passed
    rec = verify_vdc3(500, 1e5, ctx)
    assert rec is not None and rec.passed
