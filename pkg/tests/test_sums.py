from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from auxz import (
    DomainError,
    PrecisionCtx,
    SizeError,
    StripPoint,
    exponent_alpha,
    maclaurin_tail_bound,
    sup_sum,
    sup_sum_sigma,
    verify_abel,
    verify_maclaurin,
    zeta_sum,
)
from auxz.sums import SUP_SUM_CAP, ZETA_SUM_CAP


def brute_sup(X, sigma, t, dps=40):
    """Maximum of |sum_{X<n<=Z} n^(-sigma-it)| over integer Z, straight from the definition."""
    with mp.workdps(dps):
        lo, hi = int(mp.floor(X)) + 1, int(mp.floor(2 * X))
        best, acc = mp.mpf(0), mp.mpc(0)
        for n in range(lo, hi + 1):
            acc += mp.power(n, -mp.mpc(sigma, t))
            best = max(best, abs(acc))
        return best


# zeta_sum


def test_zeta_sum_examples(ctx):
    assert zeta_sum(0.9, mp.mpc(2, 3), ctx) == 0
    assert zeta_sum(2, 0, ctx) == 2
    with mp.workprec(256):
        assert abs(zeta_sum(3.7, 1, ctx) - mp.mpf(11) / 6) < 1e-35


def test_zeta_sum_piecewise_constant(ctx):
    s = mp.mpc(0.5, 30)
    base = zeta_sum(7, s, ctx)
    for frac in ("7.01", "7.5", "7.999"):
        assert zeta_sum(frac, s, ctx) == base
    assert zeta_sum(8, s, ctx) != base


def test_zeta_sum_errors(ctx):
    with pytest.raises(DomainError):
        zeta_sum(-1, 2, ctx)
    with pytest.raises(SizeError):
        zeta_sum(ZETA_SUM_CAP + 1, 2, ctx)


# maclaurin tail


def test_maclaurin_tail_bound_examples():
    assert maclaurin_tail_bound(0.5, 4, 2) == 8
    assert abs(maclaurin_tail_bound(1, 100, 2) - 0.08) < 1e-15
    assert mp.nstr(maclaurin_tail_bound(1.5, 430.83, 0.5), 4) == "36.45"
    for bad in ((0.4, 4, 1), (1, 1, 1), (1, 4, 0), (1, 4, 2.5)):
        with pytest.raises(DomainError):
            maclaurin_tail_bound(*bad)


@pytest.mark.parametrize(
    "sigma, t, r",
    [(1, 200 * mp.pi, 2), (0.5, 4 * mp.pi * 1.01, 1), (1, 2 * mp.pi * 10**4, 0.5)],
)
def test_verify_maclaurin_examples(sigma, t, r, ctx):
    rec = verify_maclaurin(StripPoint(sigma, t), r, ctx)
    assert rec.passed
    # independent oracle for the left side
    with mp.workprec(200):
        pt = StripPoint(sigma, t)
        N = int(mp.floor(pt.tau ** mp.mpf(r)))
        head = mp.fsum(mp.power(n, -pt.s) for n in range(1, N + 1))
        assert abs(rec.lhs - abs(mp.zeta(pt.s) - head)) < 1e-25


# sup sums


def test_sup_sum_trivial(ctx):
    r = sup_sum(3.5, 0, ctx)
    assert r.value == 4 and r.argmax_Z == 7 and r.terms == 4
    one = sup_sum(1, 17.5, ctx)
    assert one.terms == 1 and abs(one.value - 1) < 1e-30 and one.argmax_Z == 2
    empty = sup_sum(0.2, 5, ctx)
    assert empty.value == 0 and empty.argmax_Z is None


def test_sup_sum_sigma_trivial(ctx):
    r = sup_sum_sigma(3.5, 1, 0, ctx)
    f = Fraction(1, 4) + Fraction(1, 5) + Fraction(1, 6) + Fraction(1, 7)
    assert f == Fraction(319, 420)
    with mp.workprec(256):
        assert abs(r.value - mp.mpf(319) / 420) < 1e-35
    one = sup_sum_sigma(1, 1, 3, ctx)
    assert abs(one.value - 0.5) < 1e-30


def test_sup_sum_brute_force_oracle(ctx):
    r = sup_sum(100, 10**4, ctx)
    assert abs(r.value - brute_sup(100, 0, 10**4)) < 1e-28
    assert 100 < r.argmax_Z <= 200


@given(st.floats(0.5, 200), st.floats(0, 5e4))
def test_sup_sum_matches_definition(X, t):
    ctx = PrecisionCtx(96)
    assert abs(sup_sum(X, t, ctx).value - brute_sup(X, 0, t)) < 1e-20


@given(st.floats(0.5, 300))
def test_sup_sum_at_zero_height_counts_integers(X):
    ctx = PrecisionCtx(64)
    assert sup_sum(X, 0, ctx).value == int(2 * X) - int(X)


def test_sup_sum_errors(ctx):
    with pytest.raises(DomainError):
        sup_sum(0, 1, ctx)
    with pytest.raises(DomainError):
        sup_sum(10, -1, ctx)
    with pytest.raises(SizeError):
        sup_sum(SUP_SUM_CAP + 5, 1, ctx)


@given(st.floats(1, 300), st.floats(0.05, 3), st.floats(0, 1e5))
def test_abel_inequality(X, sigma, t):
    rec = verify_abel(X, sigma, t, PrecisionCtx(96))
    assert rec.lhs <= rec.rhs
    assert rec.passed or rec.margin <= 10 * rec.err


def test_abel_example(ctx):
    rec = verify_abel(100, 1, 10**4, ctx)
    assert rec.passed
    with pytest.raises(DomainError):
        verify_abel(100, 0, 10, ctx)


def test_exponent_alpha():
    assert exponent_alpha(100, 10**4).alpha == 0.5
    with pytest.raises(DomainError):
        exponent_alpha(10, 1)
