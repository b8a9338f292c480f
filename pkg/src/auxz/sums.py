"""Finite zeta sums, brute-force dyadic suprema S(X,t), S_sigma(X,t), and the long-sum tail bound."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .errors import DomainError, SizeError
from .numerics import PrecisionCtx, StripPoint, _guard_bits, as_mpc, zeta_with_error
from .records import CheckRecord, make_record

__all__ = [
    "ZETA_SUM_CAP",
    "SUP_SUM_CAP",
    "SupSumResult",
    "ExponentAlpha",
    "exponent_alpha",
    "zeta_sum",
    "maclaurin_tail_bound",
    "verify_maclaurin",
    "sup_sum",
    "sup_sum_sigma",
    "verify_abel",
]

ZETA_SUM_CAP = 10**8
SUP_SUM_CAP = 10**7


@dataclass(frozen=True)
class SupSumResult:
    """Supremum over X < Z <= 2X of a partial sum, with its (smallest) maximising endpoint.

    ``argmax_Z`` is ``None`` when (X, 2X] contains no integer.
    """

    value: mp.mpf
    argmax_Z: int | None
    terms: int


@dataclass(frozen=True)
class ExponentAlpha:
    alpha: mp.mpf


def exponent_alpha(X, tau) -> ExponentAlpha:
    """The exponent alpha with tau**alpha = X."""
    X, tau = mp.mpf(X), mp.mpf(tau)
    if not (X > 0 and tau > 0 and tau != 1):
        raise DomainError("exponent_alpha needs X > 0 and tau > 0, tau != 1")
    return ExponentAlpha(mp.log(X) / mp.log(tau))


def _mpf(x) -> mp.mpf:
    # leave mpf inputs unrounded
    return x if isinstance(x, mp.mpf) else mp.mpf(x)


def _floor(x) -> int:
    return int(mp.floor(_mpf(x)))


def zeta_sum(x, s, ctx: PrecisionCtx) -> mp.mpc:
    """sum_{1 <= n <= x} n**(-s); the empty sum is 0."""
    return _zeta_sum_err(x, s, ctx)[0]


def _zeta_sum_err(x, s, ctx: PrecisionCtx) -> tuple[mp.mpc, mp.mpf]:
    x = _mpf(x)
    if x < 0:
        raise DomainError("zeta_sum needs x >= 0")
    s = as_mpc(s)
    N = _floor(x)
    if N > ZETA_SUM_CAP:
        raise SizeError(f"zeta_sum with {N} terms exceeds cap {ZETA_SUM_CAP}")
    if N < 1:
        return mp.mpc(0), mp.mpf(0)
    sigma = float(s.real)
    guard = _guard_bits(abs(s) * math.log(N + 1), N, N ** max(0.0, 1 - sigma))
    with ctx.workprec(guard):
        total = mp.mpc(1)
        for n in range(2, N + 1):
            total += mp.exp(-s * mp.log(n))
        err = mp.ldexp(N * (1 + mp.mpf(N) ** max(0.0, -sigma)), -mp.mp.prec + 4)
    return total, err


def maclaurin_tail_bound(sigma, tau, r) -> mp.mpf:
    """8 tau**(1 - r sigma), valid for sigma >= 1/2, tau > 1, 0 < r <= 2."""
    sigma, tau, r = mp.mpf(sigma), mp.mpf(tau), mp.mpf(r)
    if not (sigma >= 0.5 and tau > 1 and 0 < r <= 2):
        raise DomainError(
            f"maclaurin_tail_bound needs sigma >= 1/2, tau > 1, 0 < r <= 2 (got {sigma}, {tau}, {r})"
        )
    return 8 * tau ** (1 - r * sigma)


def verify_maclaurin(point: StripPoint, r, ctx: PrecisionCtx) -> CheckRecord:
    """|zeta(s) - sum_{n <= tau**r} n**(-s)| against 8 tau**(1 - r sigma)."""
    with ctx.workprec(16):
        rhs = maclaurin_tail_bound(point.sigma, point.tau, r)
        x = point.tau ** mp.mpf(r)
        # guard against x landing a rounding error below an integer
        if abs(x - mp.nint(x)) < mp.ldexp(x, -ctx.bits // 2):
            x = mp.nint(x)
        partial, e1 = _zeta_sum_err(x, point.s, ctx)
        z, e2 = zeta_with_error(point.s, ctx)
        lhs = abs(z - partial)
    return make_record(
        "maclaurin", lhs, rhs, e1 + e2, sigma=point.sigma, t=point.t, r=mp.nstr(mp.mpf(r), 10)
    )


def _sup_partial(X, sigma, t, ctx: PrecisionCtx) -> SupSumResult:
    X = _mpf(X)
    if not X > 0:
        raise DomainError("sup sums need X > 0")
    lo = _floor(X) + 1
    hi = _floor(2 * X)
    terms = max(0, hi - lo + 1)
    if terms > SUP_SUM_CAP:
        raise SizeError(f"sup sum over {terms} terms exceeds cap {SUP_SUM_CAP}")
    if terms == 0:
        return SupSumResult(mp.mpf(0), None, 0)
    guard = _guard_bits(abs(float(t)) * math.log(hi + 1), terms)
    with ctx.workprec(guard):
        t = mp.mpf(t)
        sigma = mp.mpf(sigma)
        acc = mp.mpc(0)
        best = mp.mpf(-1)
        best_z = lo
        for n in range(lo, hi + 1):
            ln = mp.log(n)
            term = mp.expj(-t * ln)
            if sigma != 0:
                term *= mp.exp(-sigma * ln)
            acc += term
            a = abs(acc)
            if a > best:
                best, best_z = a, n
    return SupSumResult(best, best_z, terms)


def sup_sum(X, t, ctx: PrecisionCtx) -> SupSumResult:
    """S(X, t) = sup_{X < Z <= 2X} |sum_{X < n <= Z} n**(-i t)|, by brute force over integer Z."""
    if t < 0:
        raise DomainError("sup_sum needs t >= 0")
    return _sup_partial(X, 0, t, ctx)


def sup_sum_sigma(X, sigma, t, ctx: PrecisionCtx) -> SupSumResult:
    """S_sigma(X, t): as :func:`sup_sum` with terms n**(-sigma - i t)."""
    return _sup_partial(X, sigma, t, ctx)


def verify_abel(X, sigma, t, ctx: PrecisionCtx) -> CheckRecord:
    """S_sigma(X, t) against X**(-sigma) S(X, t) (partial summation, sigma > 0)."""
    if not sigma > 0:
        raise DomainError("verify_abel needs sigma > 0")
    lhs = sup_sum_sigma(X, sigma, t, ctx)
    base = sup_sum(X, t, ctx)
    with ctx.workprec(8):
        rhs = mp.mpf(X) ** (-mp.mpf(sigma)) * base.value
        err = ctx.target_eps * (1 + base.value) * max(1, base.terms)
    return make_record(
        "abel", lhs.value, rhs, err, sigma=sigma, t=t, X=mp.nstr(mp.mpf(X), 15),
        argmax_lhs=lhs.argmax_Z, argmax_rhs=base.argmax_Z,
    )
