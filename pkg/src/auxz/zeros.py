"""Zeros of R(s): argument-principle counting on rectangles and Newton refinement."""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

import mpmath as mp

from .auxiliary import r_eval_fast, r_eval_with_error
from .errors import BoundaryZeroError, ConvergenceError
from .numerics import PrecisionCtx
from .records import Rectangle

__all__ = ["RZero", "zero_count", "count_with_rect", "find_zeros", "zero_tolerance"]

log = logging.getLogger(__name__)

_MAX_ARG_STEP = math.pi / 4
_BASE_STEP = 0.05
_MAX_DEPTH = 30
_EDGE_RETRIES = (1e-3, -1e-3, 2e-3)


@dataclass(frozen=True)
class RZero:
    beta: mp.mpf
    gamma: mp.mpf
    residual: mp.mpf
    iterations: int
    rect: Rectangle
    multiplicity: int = 1


def zero_tolerance(ctx: PrecisionCtx) -> mp.mpf:
    """Residual |R(rho)| accepted for a refined zero."""
    return 1000 * ctx.target_eps


class _Sampler:
    """Caches R on boundary points; falls back to multiprecision where |R| is not resolved."""

    def __init__(self, ctx: PrecisionCtx):
        self.ctx = ctx
        self.cache: dict[complex, complex] = {}
        self.evals = 0

    def __call__(self, z: complex) -> complex:
        v = self.cache.get(z)
        if v is not None:
            return v
        self.evals += 1
        v, err = r_eval_fast(z)
        if abs(v) <= 1000 * err:
            mv, merr = r_eval_with_error(mp.mpc(z.real, z.imag), self.ctx)
            if abs(mv) <= 10 * merr:
                raise BoundaryZeroError(f"|R| = {mp.nstr(abs(mv), 3)} not separated from 0 at {z}")
            v = complex(mv)
        self.cache[z] = v
        return v


def _edge_winding(sampler: _Sampler, a: complex, b: complex) -> float:
    """Total change of arg R along the segment a -> b, sampled adaptively."""
    # sample canonically from the smaller endpoint so shared edges reuse evaluations
    flip = (b.real, b.imag) < (a.real, a.imag)
    p, q = (b, a) if flip else (a, b)
    n = max(4, math.ceil(abs(q - p) / _BASE_STEP))
    total = 0.0
    pts = [p + (q - p) * k / n for k in range(n + 1)]
    vals = [sampler(z) for z in pts]
    for k in range(n):
        total += _segment(sampler, pts[k], pts[k + 1], vals[k], vals[k + 1], 0)
    return -total if flip else total


def _segment(sampler, z1, z2, f1, f2, depth) -> float:
    ratio = f2 / f1
    d = cmath.phase(ratio)
    mag = abs(ratio)
    if abs(d) < _MAX_ARG_STEP and 0.25 < mag < 4:
        return d
    if depth >= _MAX_DEPTH:
        raise BoundaryZeroError(f"argument of R not resolved between {z1} and {z2}")
    zm = (z1 + z2) / 2
    fm = sampler(zm)
    return _segment(sampler, z1, zm, f1, fm, depth + 1) + _segment(sampler, zm, z2, fm, f2, depth + 1)


def _winding_number(sampler: _Sampler, rect: Rectangle) -> int:
    cs = rect.corners()
    total = sum(_edge_winding(sampler, cs[k], cs[(k + 1) % 4]) for k in range(4))
    w = total / (2 * math.pi)
    n = round(w)
    if abs(w - n) > 0.05:
        raise BoundaryZeroError(f"winding number {w:.4f} on {rect} is not an integer")
    if n < 0:
        raise ConvergenceError(f"negative zero count {n} on {rect}; R is entire")
    return n


def count_with_rect(rect: Rectangle, ctx: PrecisionCtx, sampler: _Sampler | None = None):
    """Zero count and the rectangle actually used (edges may be nudged off boundary zeros)."""
    sampler = sampler or _Sampler(ctx)
    try:
        return _winding_number(sampler, rect), rect
    except BoundaryZeroError as first:
        for delta in _EDGE_RETRIES:
            alt = rect.grown(delta)
            try:
                n = _winding_number(sampler, alt)
            except BoundaryZeroError:
                continue
            log.warning("zero on boundary of %s; counted on %s instead", rect, alt)
            return n, alt
        raise first


def zero_count(rect: Rectangle, ctx: PrecisionCtx) -> int:
    """Number of zeros of R inside ``rect`` (with multiplicity) by the argument principle."""
    return count_with_rect(rect, ctx)[0]


# --------------------------------------------------------------------------
# refinement


def _fast_newton(z: complex, cell: Rectangle, steps: int = 60) -> complex:
    h = 1e-6
    for _ in range(steps):
        f, _ = r_eval_fast(z)
        d = (r_eval_fast(z + h)[0] - r_eval_fast(z - h)[0]) / (2 * h)
        if d == 0:
            break
        step = f / d
        # damp steps that would leave the neighbourhood of the cell
        lim = max(cell.width, cell.height)
        if abs(step) > lim:
            step *= lim / abs(step)
        z -= step
        if abs(step) < 1e-13 * max(1.0, abs(z)):
            break
    return z


def _mp_newton(z: complex, ctx: PrecisionCtx) -> tuple[mp.mpc, mp.mpf, int]:
    tol = zero_tolerance(ctx)
    with ctx.workprec(16):
        s = mp.mpc(z.real, z.imag)
        h = mp.ldexp(1, -(ctx.bits // 3))
        its = 0
        f, _ = r_eval_with_error(s, ctx)
        for its in range(1, 40):
            fp = (r_eval_with_error(s + h, ctx)[0] - r_eval_with_error(s - h, ctx)[0]) / (2 * h)
            step = f / fp
            s -= step
            f, _ = r_eval_with_error(s, ctx)
            if abs(f) <= tol / 10 or abs(step) < mp.ldexp(1, -(ctx.bits // 2)):
                break
        return s, abs(f), its


def _best_start(cell: Rectangle, k: int = 6) -> complex:
    best, best_z = math.inf, None
    for i in range(k):
        for j in range(k):
            z = complex(
                cell.sigma_min + (i + 0.5) * cell.width / k,
                cell.t_min + (j + 0.5) * cell.height / k,
            )
            a = abs(r_eval_fast(z)[0])
            if a < best:
                best, best_z = a, z
    return best_z


def find_zeros(rect: Rectangle, ctx: PrecisionCtx, max_cell: float = 1.0) -> list[RZero]:
    """Locate every zero of R in ``rect``.

    Cells are quadrisected until each holds at most one zero and has diameter
    below ``max_cell``; each single-zero cell is refined by Newton's method,
    first in double precision and then at ``ctx`` precision.  Results are
    sorted by (gamma, beta).
    """
    sampler = _Sampler(ctx)
    total, rect = count_with_rect(rect, ctx, sampler)
    zeros: list[RZero] = []
    failures: list[str] = []
    _solve(rect, total, ctx, sampler, max_cell, zeros, failures, 0)
    if failures:
        raise ConvergenceError("zero refinement failed: " + "; ".join(failures))
    found = sum(z.multiplicity for z in zeros)
    if found != total:
        raise ConvergenceError(f"census {found} disagrees with argument-principle count {total}")
    return sorted(zeros, key=lambda z: (z.gamma, z.beta))


_CUTS = ((0.5, 0.5), (0.4871, 0.5129), (0.5313, 0.4687))


def _split(cell, count, ctx, sampler):
    for fs, ft in _CUTS:
        quads = cell.quadrants(fs, ft)
        try:
            counts = [_winding_number(sampler, q) for q in quads]
        except BoundaryZeroError:
            continue
        if sum(counts) == count:
            return list(zip(quads, counts))
    return None


def _solve(cell, count, ctx, sampler, max_cell, zeros, failures, depth):
    if count == 0:
        return
    diam = math.hypot(cell.width, cell.height)
    if count == 1 and diam <= max_cell:
        z0 = _fast_newton(_best_start(cell), cell)
        if not cell.contains(z0.real, z0.imag, slack=1e-9 * diam):
            z0 = _fast_newton(complex((cell.sigma_min + cell.sigma_max) / 2, (cell.t_min + cell.t_max) / 2), cell)
        s, res, its = _mp_newton(z0, ctx)
        if not cell.contains(float(s.real), float(s.imag), slack=1e-6 * diam):
            if depth < 40:
                parts = _split(cell, count, ctx, sampler)
                if parts:
                    for q, c in parts:
                        _solve(q, c, ctx, sampler, max_cell / 2, zeros, failures, depth + 1)
                    return
            failures.append(f"Newton left cell {cell}")
            return
        if res > zero_tolerance(ctx):
            failures.append(f"residual {mp.nstr(res, 3)} in cell {cell}")
            return
        zeros.append(RZero(s.real, s.imag, res, its, cell))
        return
    if diam < 1e-8:
        # unresolvable cluster: treat as a multiple zero
        s, res, its = _mp_newton(_best_start(cell), ctx)
        zeros.append(RZero(s.real, s.imag, res, its, cell, multiplicity=count))
        return
    parts = _split(cell, count, ctx, sampler)
    if parts is None:
        failures.append(f"could not split {cell} with count {count}")
        return
    for q, c in parts:
        _solve(q, c, ctx, sampler, max_cell, zeros, failures, depth + 1)
