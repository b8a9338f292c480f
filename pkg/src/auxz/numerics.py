"""Multiprecision building blocks: precision context, Dirichlet terms, zeta, log-Gamma, chi.

All functions take a :class:`PrecisionCtx` and return :mod:`mpmath` numbers
(``mpf`` / ``mpc``).  Internally each evaluation raises the working precision
by a few guard bits and is written so that the absolute error of the result
stays below ``ctx.target_eps``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "PrecisionCtx",
    "StripPoint",
    "as_mpc",
    "dirichlet_term",
    "bernoulli",
    "real_zeta",
    "complex_zeta",
    "zeta_with_error",
    "log_gamma",
    "chi",
]


@dataclass(frozen=True)
class PrecisionCtx:
    """Working precision in bits plus a requested absolute error bound.

    ``target_eps`` defaults to ``2**-(3*bits//4)``, leaving a quarter of the
    mantissa as headroom for cancellation and error estimation.
    """

    bits: int = 128
    target_eps: mp.mpf | None = None

    def __post_init__(self):
        if int(self.bits) != self.bits or self.bits < 64:
            raise DomainError(f"bits must be an integer >= 64, got {self.bits!r}")
        object.__setattr__(self, "bits", int(self.bits))
        eps = self.target_eps
        if eps is None:
            eps = mp.ldexp(mp.mpf(1), -(3 * self.bits // 4))
        else:
            eps = mp.mpf(eps)
        if not eps > 0:
            raise DomainError("target_eps must be positive")
        object.__setattr__(self, "target_eps", eps)

    @property
    def eps_bits(self) -> int:
        """Number of bits needed to resolve ``target_eps``."""
        return int(-mp.floor(mp.log(self.target_eps, 2))) + 1

    def workprec(self, extra: int = 0):
        return mp.workprec(self.bits + max(0, int(extra)))

    def doubled(self) -> "PrecisionCtx":
        return PrecisionCtx(2 * self.bits, self.target_eps**2)


@dataclass(frozen=True)
class StripPoint:
    """A point s = sigma + i t together with tau = t / (2 pi)."""

    sigma: mp.mpf
    t: mp.mpf
    tau: mp.mpf = field(init=False)

    def __post_init__(self):
        with mp.workprec(320):
            sigma = mp.mpf(self.sigma)
            t = mp.mpf(self.t)
            if not t > 0:
                raise DomainError(f"StripPoint needs t > 0, got {self.t!r}")
            object.__setattr__(self, "sigma", sigma)
            object.__setattr__(self, "t", t)
            object.__setattr__(self, "tau", t / (2 * mp.pi))

    @classmethod
    def from_tau(cls, sigma, tau) -> "StripPoint":
        with mp.workprec(320):
            return cls(sigma, 2 * mp.pi * mp.mpf(tau))

    @property
    def s(self) -> mp.mpc:
        return mp.mpc(self.sigma, self.t)


def as_mpc(s) -> mp.mpc:
    if isinstance(s, StripPoint):
        return s.s
    if isinstance(s, mp.mpc):
        return s
    if isinstance(s, tuple):
        return mp.mpc(*s)
    return mp.mpc(s)


def _guard_bits(*magnitudes) -> int:
    """Guard bits covering absolute phase errors of size |m| * 2**-prec."""
    g = 12
    for m in magnitudes:
        m = abs(float(m))
        if m > 1:
            g += int(math.log2(m)) + 1
    return g


def dirichlet_term(n: int, s, ctx: PrecisionCtx) -> mp.mpc:
    """n**(-s) = exp(-s log n)."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    s = as_mpc(s)
    n = int(n)
    if n == 1:
        return mp.mpc(1)
    with ctx.workprec(_guard_bits(abs(s) * math.log(n))):
        return mp.exp(-s * mp.log(n))


# --------------------------------------------------------------------------
# Bernoulli numbers (exact, cached)

_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n with B_1 = -1/2."""
    if n < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    if n < len(_BERNOULLI):
        return _BERNOULLI[n]
    with _BERNOULLI_LOCK:
        # sum_{j=0}^{m} C(m+1, j) B_j = 0
        while len(_BERNOULLI) <= n:
            m = len(_BERNOULLI)
            if m > 1 and m % 2 == 1:
                _BERNOULLI.append(Fraction(0))
                continue
            acc = Fraction(0)
            binom = 1
            for j in range(m):
                acc += binom * _BERNOULLI[j]
                binom = binom * (m + 1 - j) // (j + 1)
            _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def _bernoulli_mpf(n: int) -> mp.mpf:
    b = bernoulli(n)
    return mp.mpf(b.numerator) / b.denominator


# --------------------------------------------------------------------------
# zeta via Euler-Maclaurin


def _default_cutoff(s: mp.mpc, ctx: PrecisionCtx) -> int:
    t = abs(float(s.imag))
    # keeps |s + 2k| / (2 pi N) well below 1 until the Bernoulli terms reach eps
    return max(20, math.ceil(t / math.pi), math.ceil((t + ctx.eps_bits * math.log(2)) / math.pi))


def zeta_with_error(s, ctx: PrecisionCtx, cutoff: int | None = None) -> tuple[mp.mpc, mp.mpf]:
    """Euler-Maclaurin evaluation of zeta(s); returns ``(value, error_radius)``.

    ``cutoff`` is the summation length N; the remaining tail is represented
    by N**(1-s)/(s-1) + N**(-s)/2 plus Bernoulli corrections.
    """
    s = as_mpc(s)
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s.real <= -1:
        raise DomainError("complex_zeta supports Re(s) > -1 only")
    if cutoff is not None:
        if int(cutoff) < 2:
            raise DomainError("cutoff must be at least 2")
        return _euler_maclaurin(s, ctx, int(cutoff))
    N = _default_cutoff(s, ctx)
    for _ in range(4):
        try:
            return _euler_maclaurin(s, ctx, N)
        except ConvergenceError:
            N *= 2
    return _euler_maclaurin(s, ctx, N)


def _euler_maclaurin(s: mp.mpc, ctx: PrecisionCtx, N: int) -> tuple[mp.mpc, mp.mpf]:
    sigma = float(s.real)
    guard = _guard_bits(abs(s) * math.log(N), N ** max(0.0, 1 - sigma), N)
    with ctx.workprec(guard):
        eps = ctx.target_eps
        total = mp.mpc(0)
        for n in range(1, N):
            total += mp.exp(-s * mp.log(n))
        logN = mp.log(N)
        Ns = mp.exp(-s * logN)
        total += N * Ns / (s - 1) + Ns / 2
        inv_N2 = mp.mpf(1) / (N * N)
        poch = s  # s (s+1) ... (s+2k-2)
        power = Ns / N  # N**(-s-2k+1)
        fact = mp.mpf(2)  # (2k)!
        k = 1
        prev_mag = None
        while True:
            term = _bernoulli_mpf(2 * k) / fact * poch * power
            total += term
            # next-term majorant for the remainder after k terms
            nxt_poch = poch * (s + 2 * k - 1) * (s + 2 * k)
            nxt_fact = fact * (2 * k + 1) * (2 * k + 2)
            nxt = abs(_bernoulli_mpf(2 * k + 2) / nxt_fact * nxt_poch * power * inv_N2)
            bound = nxt * abs(s + 2 * k + 1) / (s.real + 2 * k + 1)
            if bound < eps / 4:
                break
            if prev_mag is not None and nxt > prev_mag and k > 8:
                raise ConvergenceError(
                    f"Euler-Maclaurin series diverges before reaching eps at N={N}"
                )
            prev_mag = nxt
            poch, fact, power = nxt_poch, nxt_fact, power * inv_N2
            k += 1
        rounding = mp.ldexp(N * (1 + mp.mpf(N) ** max(0.0, -sigma)), -mp.mp.prec + 4)
        return total, bound + rounding


def complex_zeta(s, ctx: PrecisionCtx, cutoff: int | None = None) -> mp.mpc:
    """zeta(s) for Re(s) > -1, s != 1."""
    return zeta_with_error(s, ctx, cutoff)[0]


def real_zeta(sigma, ctx: PrecisionCtx) -> mp.mpf:
    """zeta(sigma) for real sigma > 1."""
    with ctx.workprec(8):
        sigma = mp.mpf(sigma)
    if not sigma > 1:
        raise DomainError(f"real_zeta needs sigma > 1, got {sigma}")
    return zeta_with_error(mp.mpc(sigma), ctx)[0].real


# --------------------------------------------------------------------------
# log Gamma and chi


def _is_nonpositive_integer(z: mp.mpc) -> bool:
    return z.imag == 0 and z.real <= 0 and mp.isint(z.real)


def log_gamma(z, ctx: PrecisionCtx) -> mp.mpc:
    """Principal branch of log Gamma(z) by Stirling's series.

    The argument is shifted right with log Gamma(z) = log Gamma(z+K) - sum log(z+j)
    until the asymptotic series reaches ``target_eps``.
    """
    z = as_mpc(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"log Gamma has a pole at {z}")
    eps_bits = ctx.eps_bits
    r0 = eps_bits * math.log(2) / (2 * math.pi) + 4
    K = max(0, math.ceil(r0 - float(z.real)))
    guard = _guard_bits(abs(z) * math.log(abs(z) + K + 2), K + 1)
    with ctx.workprec(guard):
        eps = ctx.target_eps
        shift = mp.mpc(0)
        for j in range(K):
            shift += mp.log(z + j)
        w = z + K
        res = (w - mp.mpf(0.5)) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
        inv_w = 1 / w
        inv_w2 = inv_w * inv_w
        wpow = inv_w
        # remainder multiplier sec(arg w / 2)**(2k+2) for Re w > 0
        sec2 = 1 / mp.cos(mp.arg(w) / 2) ** 2
        k = 1
        while True:
            term = _bernoulli_mpf(2 * k) / (2 * k * (2 * k - 1)) * wpow
            res += term
            wpow *= inv_w2
            nxt = abs(_bernoulli_mpf(2 * k + 2) / ((2 * k + 2) * (2 * k + 1)) * wpow)
            if nxt * sec2 ** (k + 1) < eps / 4:
                break
            k += 1
            if k > 4 * eps_bits:
                raise ConvergenceError("Stirling series did not converge")
        return res - shift


def chi(s, ctx: PrecisionCtx) -> mp.mpc:
    """chi(s) = pi**(s - 1/2) Gamma((1-s)/2) / Gamma(s/2)."""
    s = as_mpc(s)
    with ctx.workprec(8):
        upper = (1 - s) / 2
        lower = s / 2
    if _is_nonpositive_integer(upper):
        raise PoleError(f"chi has a pole at s = {s}")
    if _is_nonpositive_integer(lower):
        return mp.mpc(0)
    guard = _guard_bits(abs(s) * math.log(abs(s) + 2))
    inner = PrecisionCtx(ctx.bits + guard, ctx.target_eps * mp.ldexp(1, -guard))
    with ctx.workprec(guard):
        expo = (s - mp.mpf(0.5)) * mp.log(mp.pi) + log_gamma(upper, inner) - log_gamma(lower, inner)
        return mp.exp(expo)
