"""Explicit inequalities: van der Corput constants and bounds, zeta lower bounds, rectangle checks, threshold solver."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import mpmath as mp

from .errors import DomainError
from .numerics import PrecisionCtx, zeta_with_error
from .records import CheckRecord, make_record
from .sums import sup_sum

__all__ = [
    "COROLLARY_COEFFS",
    "ZETA_INVERSE_COEFF",
    "PAPER_TAU0",
    "VdcConstants",
    "FlaggedBound",
    "ThresholdResult",
    "constants_default",
    "a_inversions",
    "vdc_d2_bound",
    "vdc_d3_bound",
    "tau0_conditions",
    "dyadic_tau_threshold",
    "van1_rhs",
    "mainbound_rhs",
    "corollary_rhs",
    "zeta_lower_bound",
    "zeta_inverse_bound",
    "rect32_check",
    "minimal_t_rect32",
    "final_inequality_check",
    "LOG_ARGUMENTS",
    "threshold_gap",
    "solve_threshold",
    "rect_boundary_check_s3",
    "verify_lemma1",
    "verify_vdc2",
    "verify_vdc3",
    "verify_domination",
]

_CONST_PREC = 400

# coefficients of the uniform short-sum bound on 1 <= sigma <= 3/2, as printed (exact decimals)
COROLLARY_COEFFS = {
    "tau^(-1/12)": "39.209",
    "tau^(-1/6)": "24.447",
    "tau^(-1/2) log tau": "30.400",
    "tau^(-1/2)": "15.804",
    "tau^(-1)": "8",
}
ZETA_INVERSE_COEFF = "42.9"
CONSTANT_RATIO_POWER12 = "19.2088"
PAPER_TAU0 = "6.24072032490448651663628063807879324939223120097e64"


def _c(key: str) -> mp.mpf:
    return mp.mpf(COROLLARY_COEFFS[key])


@dataclass(frozen=True)
class VdcConstants:
    """Constants of the explicit second- and third-derivative tests."""

    A: mp.mpf
    A3_hat: mp.mpf
    C3_hat: mp.mpf
    M: mp.mpf


class FlaggedBound(NamedTuple):
    value: mp.mpf
    valid: bool


@dataclass(frozen=True)
class ThresholdResult:
    tau0: mp.mpf
    t0: mp.mpf
    bracket: tuple[mp.mpf, mp.mpf]
    digits_verified: int
    sign_changes: int
    iterations: int
    log_of: str = "tau"


def a_inversions() -> dict[str, mp.mpf]:
    """A recovered independently from each coefficient that contains it."""
    with mp.workprec(_CONST_PREC):
        r2 = mp.sqrt(2)
        return {
            "24.447": _c("tau^(-1/6)") * (2 * r2 - 1) / 16,
            "30.400": _c("tau^(-1/2) log tau") * 3 * mp.log(2) / (16 * r2),
            "15.804": _c("tau^(-1/2)") / (4 * r2),
        }


def constants_default() -> VdcConstants:
    """A from 4 sqrt(2) A = 15.804, A3_hat from 2 A3_hat / (2 - sqrt 2) = 39.209, C3_hat from (C3/A3)**12 = 19.2088, M = A3_hat."""
    with mp.workprec(_CONST_PREC):
        A = a_inversions()["15.804"]
        A3 = _c("tau^(-1/12)") * (2 - mp.sqrt(2)) / 2
        C3 = A3 * mp.mpf(CONSTANT_RATIO_POWER12) ** (mp.mpf(1) / 12)
        return VdcConstants(A=A, A3_hat=A3, C3_hat=C3, M=A3)


def vdc_d2_bound(X, t, consts: VdcConstants | None = None) -> mp.mpf:
    """2A (tau**(1/2) + 2 X tau**(-1/2)), the second-derivative bound for S(X, t)."""
    consts = consts or constants_default()
    X, t = mp.mpf(X), mp.mpf(t)
    if not (t > 2 * mp.pi and X >= 1):
        raise DomainError(f"vdc_d2_bound needs t > 2 pi and X >= 1 (got X={X}, t={t})")
    tau = t / (2 * mp.pi)
    rt = mp.sqrt(tau)
    return 2 * consts.A * (rt + 2 * X / rt)


def _exponents(d: int, alpha):
    D = 2**d
    base = (1 - alpha * d) / mp.mpf(D - 2)
    return D, mp.mpf(2) / D + base, 2 * alpha / D + base


def tau0_conditions(d: int, alpha, M=None, consts: VdcConstants | None = None) -> mp.mpf:
    """Least tau from which the d-th derivative bound with constant M holds.

    Maximum of d**(D/(alpha(D-2))), (C_d/M)**(1/e2) and (A_d/M)**(1/e3) with
    D = 2**d, e2 = 2/D + (1-alpha d)/(D-2), e3 = 2 alpha/D + (1-alpha d)/(D-2).
    """
    if d != 3:
        raise DomainError("tau0_conditions: constants are available for d = 3 only")
    consts = consts or constants_default()
    alpha = mp.mpf(alpha)
    M = consts.M if M is None else mp.mpf(M)
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    D, e2, e3 = _exponents(d, alpha)
    thresholds = [mp.mpf(d) ** (mp.mpf(D) / (alpha * (D - 2)))]
    for ratio, e in ((consts.C3_hat / M, e2), (consts.A3_hat / M, e3)):
        if e > 0:
            thresholds.append(ratio ** (1 / e))
        elif ratio > 1:
            thresholds.append(mp.inf)
    return max(thresholds)


def dyadic_tau_threshold(consts: VdcConstants | None = None) -> mp.mpf:
    """max(3**(8/3), (C3/A3)**12): the conditions uniformly over dyadic blocks 1/2 <= alpha < 2/3 with M = A3."""
    consts = consts or constants_default()
    return max(mp.mpf(3) ** (mp.mpf(8) / 3), (consts.C3_hat / consts.A3_hat) ** 12)


def vdc_d3_bound(alpha, tau, consts: VdcConstants | None = None) -> FlaggedBound:
    """M tau**(alpha + (1 - 3 alpha)/6), flagged invalid outside 0 < alpha < 2/3 or below tau0."""
    consts = consts or constants_default()
    alpha, tau = mp.mpf(alpha), mp.mpf(tau)
    value = consts.M * tau ** (alpha + (1 - 3 * alpha) / 6)
    valid = bool(0 < alpha < mp.mpf(2) / 3) and bool(tau >= tau0_conditions(3, alpha, consts.M, consts))
    return FlaggedBound(value, valid)


def van1_rhs(sigma, tau, consts: VdcConstants | None = None) -> mp.mpf:
    """Short-sum approximation bound for 1/2 < sigma < 1, tau >= 20."""
    consts = consts or constants_default()
    sigma, tau = mp.mpf(sigma), mp.mpf(tau)
    if not (mp.mpf(1) / 2 < sigma < 1 and tau >= 20):
        raise DomainError(f"van1_rhs needs 1/2 < sigma < 1 and tau >= 20 (got {sigma}, {tau})")
    A, A3 = consts.A, consts.A3_hat
    q = mp.mpf(2) ** (sigma - mp.mpf(1) / 2)
    lt = mp.log(tau)
    return (
        A3 * q / (q - 1) * tau ** ((mp.mpf(5) / 6 - sigma) / 2)
        + mp.mpf(2) ** (1 + sigma) * A / (1 - mp.mpf(2) ** (-sigma)) * tau ** (mp.mpf(2) / 3 * (mp.mpf(3) / 4 - sigma))
        + 4 * A * (1 + 4 * lt / (3 * mp.log(2))) * tau ** (2 * (mp.mpf(3) / 4 - sigma))
        + 8 * tau ** (2 * (mp.mpf(1) / 2 - sigma))
    )


def mainbound_rhs(sigma, tau, consts: VdcConstants | None = None) -> mp.mpf:
    """Short-sum approximation bound for sigma >= 1, tau > 20."""
    consts = consts or constants_default()
    sigma, tau = mp.mpf(sigma), mp.mpf(tau)
    if not (sigma >= 1 and tau > 20):
        raise DomainError(f"mainbound_rhs needs sigma >= 1 and tau > 20 (got {sigma}, {tau})")
    A, A3 = consts.A, consts.A3_hat
    q = mp.mpf(2) ** (sigma - mp.mpf(1) / 2)
    two_s1 = mp.mpf(2) ** (sigma + 1)
    lt = mp.log(tau)
    low = tau ** (mp.mpf(2) / 3 * (mp.mpf(1) / 4 - sigma))
    return (
        A3 * q / (q - 1) * tau ** ((mp.mpf(5) / 6 - sigma) / 2)
        + two_s1 * A / (1 - mp.mpf(2) ** (-sigma)) * tau ** (mp.mpf(2) / 3 * (mp.mpf(3) / 4 - sigma))
        + mp.mpf(2) ** (sigma + 3) * A / (3 * mp.log(2)) * low * lt
        + two_s1 * A * low
        + 8 * tau ** (2 * (mp.mpf(1) / 2 - sigma))
    )


def corollary_rhs(tau) -> mp.mpf:
    """39.209 tau^-1/12 + 24.447 tau^-1/6 + 30.400 tau^-1/2 log tau + 15.804 tau^-1/2 + 8/tau."""
    tau = mp.mpf(tau)
    if not tau > 20:
        raise DomainError(f"corollary_rhs needs tau > 20 (got {tau})")
    r = 1 / mp.sqrt(tau)
    return (
        _c("tau^(-1/12)") * tau ** (-mp.mpf(1) / 12)
        + _c("tau^(-1/6)") * tau ** (-mp.mpf(1) / 6)
        + _c("tau^(-1/2) log tau") * r * mp.log(tau)
        + _c("tau^(-1/2)") * r
        + _c("tau^(-1)") / tau
    )


# --------------------------------------------------------------------------
# zeta lower bounds


def _lower_bound_err(sigma, ctx: PrecisionCtx):
    sigma = mp.mpf(sigma)
    if not sigma > 1:
        raise DomainError(f"zeta_lower_bound needs sigma > 1 (got {sigma})")
    z2, e2 = zeta_with_error(mp.mpc(2 * sigma), ctx)
    z1, e1 = zeta_with_error(mp.mpc(sigma), ctx)
    with ctx.workprec(8):
        val = z2.real / z1.real
        err = (e2 + val * e1) / z1.real
    return val, err


def zeta_lower_bound(sigma, ctx: PrecisionCtx | None = None) -> mp.mpf:
    """zeta(2 sigma) / zeta(sigma), a lower bound for |zeta(sigma + i t)| when sigma > 1."""
    return _lower_bound_err(sigma, ctx or PrecisionCtx(256))[0]


def zeta_inverse_bound(t) -> mp.mpf:
    """42.9 log t, the assumed bound for 1/|zeta(sigma + i t)|, sigma >= 1.

    The source states validity both for t >= 500 and t >= 132.16; only the
    conservative t >= 500 is accepted here.
    """
    t = mp.mpf(t)
    if not t >= 500:
        raise DomainError(f"zeta_inverse_bound requires t >= 500 (got {t})")
    return mp.mpf(ZETA_INVERSE_COEFF) * mp.log(t)


def verify_lemma1(sigma, t, ctx: PrecisionCtx) -> CheckRecord:
    """zeta(2 sigma)/zeta(sigma) < |zeta(sigma + i t)|."""
    lb, e1 = _lower_bound_err(sigma, ctx)
    with ctx.workprec(16):
        z, e2 = zeta_with_error(mp.mpc(sigma, t), ctx)
        return make_record("lemma1", lb, abs(z), e1 + e2, sigma=sigma, t=t)


# --------------------------------------------------------------------------
# rectangle [3/2, 2] checks


def _default_ctx(ctx):
    return ctx or PrecisionCtx(256)


def _rounding(ctx: PrecisionCtx, *vals):
    return mp.ldexp(sum(abs(v) for v in vals) + 1, -ctx.bits + 4)


def rect32_check(t, ctx: PrecisionCtx | None = None) -> CheckRecord:
    """2 tau**(-3/4) + 2 tau**(-1/4) < zeta(3)/zeta(3/2), uniform over 3/2 <= sigma <= 2."""
    ctx = _default_ctx(ctx)
    with ctx.workprec(16):
        t = mp.mpf(t)
        if not t > 0:
            raise DomainError("rect32_check needs t > 0")
        tau = t / (2 * mp.pi)
        lhs = 2 * tau ** mp.mpf(-0.75) + 2 * tau ** mp.mpf(-0.25)
        rhs, err = _lower_bound_err(mp.mpf(1.5), ctx)
        err += _rounding(ctx, lhs, rhs)
        return make_record("rect32", lhs, rhs, err, sigma=mp.mpf(1.5), t=t)


def minimal_t_rect32(ctx: PrecisionCtx | None = None, hi: int = 10**6) -> int:
    """Least integer t for which :func:`rect32_check` passes (its left side decreases in t)."""
    ctx = _default_ctx(ctx)
    lo = 1
    if rect32_check(lo, ctx).passed:
        return lo
    if not rect32_check(hi, ctx).passed:
        raise DomainError(f"rect32_check still fails at t = {hi}")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if rect32_check(mid, ctx).passed:
            hi = mid
        else:
            lo = mid
    for k in (1, 2, 5, 10, 100, 1000, 10**4):
        if not rect32_check(hi + k, ctx).passed:
            raise DomainError(f"rect32_check is not monotone: fails at t = {hi + k}")
    return hi


def rect_boundary_check_s3(t, sigma, ctx: PrecisionCtx | None = None) -> CheckRecord:
    """2 tau**(-sigma/2) + tau**((1-sigma)/2)/(sigma-1) < zeta(2 sigma)/zeta(sigma) for 3/2 <= sigma <= 2.

    The uniform form (the :func:`rect32_check` inequality) is evaluated too
    and reported in ``params``.
    """
    ctx = _default_ctx(ctx)
    with ctx.workprec(16):
        t, sigma = mp.mpf(t), mp.mpf(sigma)
        if not (mp.mpf(1.5) <= sigma <= 2 and t >= 2707):
            raise DomainError(f"rect_boundary_check_s3 needs 3/2 <= sigma <= 2, t >= 2707 (got {sigma}, {t})")
        tau = t / (2 * mp.pi)
        lhs = 2 * tau ** (-sigma / 2) + tau ** ((1 - sigma) / 2) / (sigma - 1)
        rhs, err = _lower_bound_err(sigma, ctx)
        err += _rounding(ctx, lhs, rhs)
        weak = rect32_check(t, ctx)
    return make_record(
        "s3-boundary", lhs, rhs, err, sigma=sigma, t=t,
        uniform_lhs=mp.nstr(weak.lhs, 20), uniform_rhs=mp.nstr(weak.rhs, 20), uniform_pass=weak.passed,
    )


# --------------------------------------------------------------------------
# final inequality and threshold


LOG_ARGUMENTS = ("tau", "t")


def _log_rhs(tau, log_of: str):
    if log_of == "tau":
        return mp.log(tau)
    if log_of == "t":
        return mp.log(2 * mp.pi * tau)
    raise DomainError(f"log_of must be one of {LOG_ARGUMENTS}, got {log_of!r}")


def final_inequality_check(tau, sigma=1, ctx: PrecisionCtx | None = None, log_of: str = "tau") -> CheckRecord:
    """tau**(-sigma/2) + corollary_rhs(tau) < 1 / (42.9 log X) with X = tau or X = t = 2 pi tau.

    ``log_of="tau"`` is the reading under which the published threshold is
    reproduced; ``log_of="t"`` is the form in which the bound on 1/|zeta| is
    stated and gives a larger (more conservative) threshold.
    """
    ctx = _default_ctx(ctx)
    with ctx.workprec(16):
        tau, sigma = mp.mpf(tau), mp.mpf(sigma)
        if not tau > 20:
            raise DomainError("final_inequality_check needs tau > 20")
        lhs = tau ** (-sigma / 2) + corollary_rhs(tau)
        rhs = 1 / (mp.mpf(ZETA_INVERSE_COEFF) * _log_rhs(tau, log_of))
        err = _rounding(ctx, lhs, rhs)
        return make_record("final", lhs, rhs, err, sigma=sigma, t=2 * mp.pi * tau, log_of=log_of)


def threshold_gap(tau, log_of: str = "tau") -> mp.mpf:
    """G(tau) = 42.9 log(X) (tau**(-1/2) + corollary_rhs(tau)) - 1; negative where the final inequality holds."""
    tau = mp.mpf(tau)
    return mp.mpf(ZETA_INVERSE_COEFF) * _log_rhs(tau, log_of) * (1 / mp.sqrt(tau) + corollary_rhs(tau)) - 1


def _gap_and_slope(y, log_of: str = "tau"):
    """G and dG/dy at tau = e**y."""
    c12, c6, clog, c2, c1 = (_c(k) for k in COROLLARY_COEFFS)
    tau = mp.exp(y)
    r = mp.exp(-y / 2)
    p12 = mp.exp(-y / 12)
    p6 = mp.exp(-y / 6)
    H = r + c12 * p12 + c6 * p6 + clog * r * y + c2 * r + c1 / tau
    dH = -r / 2 - c12 * p12 / 12 - c6 * p6 / 6 + clog * r * (1 - y / 2) - c2 * r / 2 - c1 / tau
    L = _log_rhs(tau, log_of)
    k = mp.mpf(ZETA_INVERSE_COEFF)
    return k * L * H - 1, k * H + k * L * dH


def _agreeing_digits(x: mp.mpf, ref: str, max_digits: int = 48) -> int:
    k = 0
    with mp.workdps(max_digits + 20):
        ref_v = mp.mpf(ref)
        for n in range(1, max_digits + 1):
            if mp.nstr(x, n, strip_zeros=False) != mp.nstr(ref_v, n, strip_zeros=False):
                break
            k = n
    return k


def solve_threshold(
    ctx: PrecisionCtx | None = None,
    lo="1e2",
    hi="1e70",
    scan_points: int = 140,
    log_of: str = "tau",
) -> ThresholdResult:
    """Unique crossing tau0 of G on [lo, hi]: log-grid scan, bisection, then Newton in log tau."""
    ctx = _default_ctx(ctx)
    if ctx.bits < 200:
        raise DomainError("solve_threshold needs at least 200 bits")
    with ctx.workprec(32):
        ylo, yhi = mp.log(lo), mp.log(hi)
        ys = [ylo + (yhi - ylo) * k / (scan_points - 1) for k in range(scan_points)]
        gs = [_gap_and_slope(y, log_of)[0] for y in ys]
        changes = [k for k in range(scan_points - 1) if mp.sign(gs[k]) != mp.sign(gs[k + 1])]
        if not changes:
            raise DomainError("G has no sign change on the scan grid")
        if len(changes) > 1:
            raise DomainError(f"G changes sign {len(changes)} times on the scan grid")
        a, b = ys[changes[0]], ys[changes[0] + 1]
        ga = gs[changes[0]]
        its = 0
        tol_bis = mp.mpf(10) ** -12
        while b - a > tol_bis:
            m = (a + b) / 2
            gm = _gap_and_slope(m, log_of)[0]
            its += 1
            if mp.sign(gm) == mp.sign(ga):
                a, ga = m, gm
            else:
                b = m
        bracket = (mp.exp(a), mp.exp(b))
        y = (a + b) / 2
        tol = mp.ldexp(abs(y), -(ctx.bits - 8))
        for _ in range(100):
            g, dg = _gap_and_slope(y, log_of)
            step = g / dg
            y -= step
            its += 1
            if abs(step) < tol:
                break
        tau0 = mp.exp(y)
        t0 = 2 * mp.pi * tau0
    return ThresholdResult(
        tau0=tau0,
        t0=t0,
        bracket=bracket,
        digits_verified=_agreeing_digits(tau0, PAPER_TAU0),
        sign_changes=len(changes),
        iterations=its,
        log_of=log_of,
    )


# --------------------------------------------------------------------------
# exponential-sum bounds against brute force


def verify_vdc2(X, t, ctx: PrecisionCtx, consts: VdcConstants | None = None) -> CheckRecord:
    """Brute-force S(X, t) against the second-derivative bound."""
    res = sup_sum(X, t, ctx)
    with ctx.workprec(16):
        rhs = vdc_d2_bound(X, t, consts)
    return make_record(f"vdc2:X={mp.nstr(mp.mpf(X), 12)}", res.value, rhs, ctx.target_eps * res.terms,
                       t=t, X=mp.nstr(mp.mpf(X), 15), argmax_Z=res.argmax_Z)


def verify_vdc3(X, t, ctx: PrecisionCtx, consts: VdcConstants | None = None) -> CheckRecord | None:
    """Brute-force S(X, t) against the third-derivative bound; ``None`` where that bound is not valid."""
    with ctx.workprec(16):
        X, t = mp.mpf(X), mp.mpf(t)
        tau = t / (2 * mp.pi)
        alpha = mp.log(X) / mp.log(tau)
        bound = vdc_d3_bound(alpha, tau, consts)
    if not bound.valid:
        return None
    res = sup_sum(X, t, ctx)
    return make_record(f"vdc3:X={mp.nstr(X, 12)}", res.value, bound.value, ctx.target_eps * res.terms,
                       t=t, X=mp.nstr(X, 15), alpha=mp.nstr(alpha, 15))


def verify_domination(sigma, tau, consts: VdcConstants | None = None) -> CheckRecord:
    """mainbound_rhs(sigma, tau) < corollary_rhs(tau) for 1 <= sigma <= 3/2."""
    with mp.workprec(256):
        lhs = mainbound_rhs(sigma, tau, consts)
        rhs = corollary_rhs(tau)
        err = mp.ldexp(lhs + rhs, -240)
        return make_record("domination", lhs, rhs, err, sigma=sigma, t=2 * mp.pi * mp.mpf(tau), tau=mp.nstr(mp.mpf(tau), 15))
