"""Riemann's auxiliary function R(s) by contour quadrature, and the bounds comparing it with zeta sums.

R(s) is the integral of x**(-s) exp(pi i x**2) / (exp(pi i x) - exp(-pi i x))
along a slope-one line crossing the real axis between 0 and 1, traversed
from upper right to lower left.  Moving the crossing point past the pole at
an integer n adds n**(-s), so for a crossing c = N + 1/2

    R(s) = sum_{n <= N} n**(-s) - e**(i pi/4) * int_{-inf}^{inf} f(c + u e**(i pi/4)) du.

Choosing N = floor(sqrt(t / 2 pi)) puts the crossing next to the saddle
point of the integrand, where it is a well-scaled Gaussian and the
trapezoid rule converges spectrally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import mpmath as mp
import numpy as np

from .errors import ConvergenceError, DomainError
from .numerics import PrecisionCtx, StripPoint, as_mpc
from .records import CheckRecord, make_record
from .sums import _zeta_sum_err

__all__ = [
    "ContourSpec",
    "auto_contour",
    "r_eval",
    "r_eval_with_error",
    "r_eval_fast",
    "rs_bound_rhs",
    "rs_bound_cases",
    "partial_bound_rhs",
    "verify_rzeta_bound",
    "r_minus_one_bound",
    "verify_r_minus_one",
    "functional_equation_residual",
]

_ROT = complex(math.cos(math.pi / 4), math.sin(math.pi / 4))
_MAX_LEVELS = 12


@dataclass(frozen=True)
class ContourSpec:
    """Integration line x(u) = crossing + u e**(i pi/4) with ``base_terms`` residues added.

    ``half_length`` and ``nodes`` fix a plain trapezoid rule on [-U, U];
    when either is ``None`` the window and step are chosen adaptively.
    """

    crossing: float
    base_terms: int = 0
    half_length: float | None = None
    nodes: int | None = None

    def __post_init__(self):
        N = self.base_terms
        if N < 0 or not (N < self.crossing < N + 1):
            raise DomainError(
                f"contour crossing {self.crossing} must lie strictly between {N} and {N + 1}"
            )
        if self.half_length is not None and self.half_length <= 0:
            raise DomainError("half_length must be positive")
        if self.nodes is not None and self.nodes < 3:
            raise DomainError("nodes must be >= 3")


def auto_contour(s) -> ContourSpec:
    s = complex(as_mpc(s))
    tau = max(s.imag, 0.0) / (2 * math.pi)
    N = int(math.floor(math.sqrt(tau)))
    return ContourSpec(N + 0.5, N)


# --------------------------------------------------------------------------
# window selection (double precision, log domain)


def _log_integrand(s: complex, c: float, u: np.ndarray) -> np.ndarray:
    """Complex log of the integrand at x = c + u e**(i pi/4), computed without overflow."""
    x = c + u * _ROT
    y = x.imag
    # log(e^{i pi x} - e^{-i pi x}) = -i pi x + log(e^{2 pi i x} - 1) for y > 0, mirrored for y < 0
    pos = y >= 0
    log_den = np.where(
        pos,
        -1j * np.pi * x + np.log(np.exp(2j * np.pi * np.where(pos, x, 0)) - 1),
        1j * np.pi * x + np.log(1 - np.exp(-2j * np.pi * np.where(pos, 0, x))),
    )
    return -s * np.log(x) + 1j * np.pi * x * x - log_den


def _window(s: complex, c: float, log_eps: float) -> tuple[float, float, float]:
    """Parameter interval outside which |integrand| < eps * e**-12, and log max |integrand|."""
    thresh = log_eps - 12.0
    lo, hi = -8.0, 8.0
    for _ in range(40):
        u = np.arange(lo, hi + 1e-9, 0.125)
        with np.errstate(all="ignore"):
            g = _log_integrand(s, c, u).real
        g = np.where(np.isfinite(g), g, np.inf)
        if g[0] > thresh:
            lo -= 8.0
            continue
        if g[-1] > thresh:
            hi += 8.0
            continue
        break
    else:
        raise ConvergenceError(f"integrand window for s={s} does not close")
    keep = np.nonzero(g > thresh)[0]
    if keep.size == 0:
        return -0.25, 0.25, float(np.max(g))
    return float(u[keep[0]] - 0.25), float(u[keep[-1]] + 0.25), float(np.max(g))


# --------------------------------------------------------------------------
# multiprecision evaluation


def _trapezoid_mp(f, a, b, eps, h0):
    """Nested trapezoid sums on [a, b] halving the step until successive sums agree."""
    h = h0
    n = max(2, int(mp.ceil((b - a) / h)))
    h = (b - a) / n
    total = mp.fsum(f(a + k * h) for k in range(n + 1))
    prev = total * h
    for level in range(1, _MAX_LEVELS + 1):
        h /= 2
        n *= 2
        total += mp.fsum(f(a + k * h) for k in range(1, n, 2))
        cur = total * h
        diff = abs(cur - prev)
        if level >= 2 and diff < eps:
            return cur, diff, n + 1
        prev = cur
    raise ConvergenceError(f"trapezoid rule not converged after {_MAX_LEVELS} halvings (diff {diff})")


def r_eval_with_error(s, ctx: PrecisionCtx, contour: ContourSpec | None = None):
    """Evaluate R(s); returns ``(value, error_radius)``."""
    s = as_mpc(s)
    contour = contour or auto_contour(s)
    c = contour.crossing
    N = contour.base_terms
    eps = ctx.target_eps
    s_c = complex(s)
    log_eps = float(mp.log(eps))
    fixed = contour.half_length is not None and contour.nodes is not None
    if fixed:
        a, b = -float(contour.half_length), float(contour.half_length)
        with np.errstate(all="ignore"):
            g = _log_integrand(s_c, c, np.linspace(a, b, 257)).real
        gmax = float(np.nanmax(g))
    else:
        a, b, gmax = _window(s_c, c, log_eps)
    xmax = abs(c) + max(abs(a), abs(b))
    phase = abs(s_c) * max(1.0, math.log(xmax + 1)) + math.pi * xmax**2
    extra = ctx.eps_bits - ctx.bits + max(0.0, gmax) / math.log(2) + math.log2(phase + 2) + 24
    if not fixed:
        extra += math.log2(b - a + 1) + 12
    with ctx.workprec(extra):
        rot = mp.expjpi(mp.mpf(1) / 4)
        cc = mp.mpf(c)
        ipi = mp.mpc(0, mp.pi)

        def f(u):
            x = cc + u * rot
            E = mp.expjpi(x)
            return mp.exp(-s * mp.log(x) + ipi * x * x) / (E - 1 / E)

        if fixed:
            n = int(contour.nodes)
            h = (b - a) / (n - 1)
            vals = [f(a + k * h) for k in range(n)]
            integral = h * mp.fsum(vals)
            coarse = 2 * h * mp.fsum(vals[::2]) if n >= 5 else integral
            qerr = abs(integral - coarse)
        else:
            integral, qerr, n = _trapezoid_mp(f, mp.mpf(a), mp.mpf(b), eps / 8, mp.mpf(1) / 4)
        residues, rerr = _zeta_sum_err(N, s, PrecisionCtx(mp.mp.prec))
        value = residues - rot * integral
        # truncation: |f| < eps e^-12 beyond the window, decaying at least like a Gaussian
        trunc = eps * mp.exp(-12) if not fixed else mp.mpf(0)
        rounding = mp.ldexp(mp.exp(max(0.0, gmax)) * (n + 1), -mp.mp.prec + 8)
        err = qerr + trunc + rounding + rerr
    if fixed and err > eps:
        raise ConvergenceError(f"fixed contour rule error {mp.nstr(err, 3)} exceeds target")
    return value, err


def r_eval(s, ctx: PrecisionCtx, contour: ContourSpec | None = None) -> mp.mpc:
    """R(s) with absolute error at most ``ctx.target_eps``."""
    value, err = r_eval_with_error(s, ctx, contour)
    if err > ctx.target_eps:
        raise ConvergenceError(f"R({s}) error estimate {mp.nstr(err, 3)} above target")
    return value


# --------------------------------------------------------------------------
# double precision evaluation (boundary sampling for the argument principle)


def r_eval_fast(s: complex, contour: ContourSpec | None = None) -> tuple[complex, float]:
    """R(s) in complex128; returns ``(value, error_estimate)``.

    Used where many evaluations at modest accuracy are needed.  The error
    estimate combines the trapezoid step-halving difference with rounding
    in the (possibly large) phases.
    """
    s = complex(s)
    contour = contour or auto_contour(s)
    c, N = contour.crossing, contour.base_terms
    a, b, gmax = _window(s, c, math.log(1e-17))
    h = 1.0 / 32
    u = np.arange(a, b + h / 2, h)
    with np.errstate(all="ignore"):
        vals = np.exp(_log_integrand(s, c, u))
    fine = h * vals.sum()
    coarse = 2 * h * vals[::2].sum()
    n = np.arange(1, N + 1, dtype=float)
    terms = np.exp(-s * np.log(n)) if N else np.zeros(0)
    value = terms.sum() - _ROT * fine
    xmax = abs(c) + max(abs(a), abs(b))
    phase = abs(s) * math.log(xmax + 1) + math.pi * xmax**2 + 1
    scale = h * np.abs(vals).sum() + np.abs(terms).sum()
    err = abs(fine - coarse) + 4 * np.finfo(float).eps * phase * scale
    return complex(value), float(err)


# --------------------------------------------------------------------------
# bounds


def rs_bound_cases(sigma, tau) -> list[int]:
    """Which of the three regimes of the R-vs-zeta-sum bound apply at (sigma, tau)."""
    sigma, tau = mp.mpf(sigma), mp.mpf(tau)
    cases = []
    # t >= 3 pi, 8 pi, 16 pi  <=>  tau >= 3/2, 4, 8
    if 0 <= sigma <= 1 and tau >= mp.mpf(3) / 2:
        cases.append(1)
    if 1 <= sigma <= 2 and tau >= 4:
        cases.append(2)
    if sigma >= 1 and tau >= 8:
        cases.append(3)
    return cases


def rs_bound_rhs(sigma, tau, case: int | None = None) -> mp.mpf:
    """Upper bound for |R(s) - sum_{n <= sqrt(tau)} n**(-s)|.

    tau**(-sigma/2) in regimes 1 and 2, tau**(-1/2) in regime 3.  Without an
    explicit ``case`` the smallest applicable bound is returned.
    """
    sigma, tau = mp.mpf(sigma), mp.mpf(tau)
    cases = rs_bound_cases(sigma, tau)
    if case is not None:
        if case not in cases:
            raise DomainError(f"case {case} does not apply at sigma={sigma}, tau={tau}")
        cases = [case]
    if not cases:
        raise DomainError(f"no R-vs-zeta-sum bound applies at sigma={sigma}, tau={tau}")
    return min(tau ** (-sigma / 2) if k in (1, 2) else tau ** mp.mpf(-0.5) for k in cases)


def partial_bound_rhs(sigma, a) -> mp.mpf:
    """a**(-sigma) (1/2 + 1/(6 pi a) + |sigma - 1/2|/(2 pi a) + 2**(3 sigma/2)/7 * (11/(10 a))**2)."""
    sigma, a = mp.mpf(sigma), mp.mpf(a)
    if not a > 0:
        raise DomainError("partial_bound_rhs needs a > 0")
    bracket = (
        mp.mpf(1) / 2
        + 1 / (6 * mp.pi * a)
        + abs(sigma - mp.mpf(1) / 2) / (2 * mp.pi * a)
        + mp.mpf(2) ** (3 * sigma / 2) / 7 * (11 / (10 * a)) ** 2
    )
    return a ** (-sigma) * bracket


def verify_rzeta_bound(point: StripPoint, ctx: PrecisionCtx, case: int | None = None) -> CheckRecord:
    """Check |R(s) - sum_{n <= sqrt(tau)} n**(-s)| < rs_bound_rhs with R from quadrature.

    For 0 <= sigma <= 2 the sharper intermediate bound :func:`partial_bound_rhs`
    is checked as well; the record passes only if both hold.
    """
    with ctx.workprec(16):
        rhs = rs_bound_rhs(point.sigma, point.tau, case)
        cases = rs_bound_cases(point.sigma, point.tau) if case is None else [case]
        r, e1 = r_eval_with_error(point.s, ctx)
        partial, e2 = _zeta_sum_err(mp.sqrt(point.tau), point.s, ctx)
        lhs = abs(r - partial)
        err = e1 + e2
        params = {"cases": cases}
        ok_partial = True
        if 0 <= point.sigma <= 2:
            prhs = partial_bound_rhs(point.sigma, mp.sqrt(point.tau))
            ok_partial = bool(prhs - lhs > 10 * err)
            params["partial_rhs"] = mp.nstr(prhs, 20)
            params["partial_pass"] = ok_partial
    tag = "rzeta" if case is None else f"rzeta/case{case}"
    rec = make_record(tag, lhs, rhs, err, sigma=point.sigma, t=point.t, **params)
    if rec.passed and not ok_partial:
        rec = replace(rec, passed=False)
    return rec


def r_minus_one_bound(sigma, tau) -> mp.mpf:
    """3 * 2**(-sigma) + tau**(-1/2) for sigma >= 2 and t > 16 pi."""
    sigma, tau = mp.mpf(sigma), mp.mpf(tau)
    if not (sigma >= 2 and tau > 8):
        raise DomainError(f"r_minus_one_bound needs sigma >= 2 and t > 16 pi (got {sigma}, {tau})")
    return 3 * mp.mpf(2) ** (-sigma) + tau ** mp.mpf(-0.5)


def verify_r_minus_one(point: StripPoint, ctx: PrecisionCtx) -> CheckRecord:
    """|R(s) - 1| < min(1, 3 * 2**(-sigma) + tau**(-1/2)); both sides are kept in ``params``."""
    with ctx.workprec(16):
        bound = r_minus_one_bound(point.sigma, point.tau)
        r, err = r_eval_with_error(point.s, ctx)
        lhs = abs(r - 1)
    rec = make_record("rminus1", lhs, min(bound, mp.mpf(1)), err, sigma=point.sigma, t=point.t,
                      bound=mp.nstr(bound, 20))
    return rec


def functional_equation_residual(s, ctx: PrecisionCtx) -> mp.mpf:
    """|zeta(s) - R(s) - chi(s) conj(R(1 - conj(s)))|."""
    from .numerics import chi, complex_zeta

    s = as_mpc(s)
    with ctx.workprec(16):
        r1 = r_eval(s, ctx)
        r2 = r_eval(1 - mp.conj(s), ctx)
        return abs(complex_zeta(s, ctx) - r1 - chi(s, ctx) * mp.conj(r2))
