"""Verification records, rectangles and sampling grids."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import mpmath as mp

from .errors import DomainError

__all__ = ["CheckRecord", "Rectangle", "AxisGrid", "GridSpec", "make_record"]


@dataclass(frozen=True)
class CheckRecord:
    """One verified instance of an inequality ``lhs < rhs``.

    ``err`` is the estimated evaluation error of ``margin``; a record passes
    only when ``margin > 10 * err`` (and therefore ``margin > 0``).
    """

    tag: str
    lhs: mp.mpf
    rhs: mp.mpf
    margin: mp.mpf
    passed: bool
    err: mp.mpf = mp.mpf(0)
    sigma: mp.mpf | None = None
    t: mp.mpf | None = None
    params: dict[str, Any] = field(default_factory=dict)

    @property
    def tau(self):
        if self.t is None:
            return None
        return self.t / (2 * mp.pi)

    def sort_key(self):
        t = float(self.t) if self.t is not None else -math.inf
        sigma = float(self.sigma) if self.sigma is not None else -math.inf
        return (t, sigma, self.tag)


def _keep(v) -> mp.mpf:
    # mp.mpf() would round an mpf to the caller's global precision
    return v if isinstance(v, mp.mpf) else mp.mpf(v)


def make_record(tag, lhs, rhs, err=0, *, sigma=None, t=None, **params) -> CheckRecord:
    lhs = _keep(lhs)
    rhs = _keep(rhs)
    err = abs(_keep(err))
    margin = mp.fsub(rhs, lhs, prec=max(mp.mp.prec, 512))
    return CheckRecord(
        tag=tag,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        passed=bool(margin > 0 and margin > 10 * err),
        err=err,
        sigma=None if sigma is None else _keep(sigma),
        t=None if t is None else _keep(t),
        params=params,
    )


@dataclass(frozen=True)
class Rectangle:
    """Closed box [sigma_min, sigma_max] x [t_min, t_max]."""

    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float

    def __post_init__(self):
        if not (self.sigma_min < self.sigma_max and self.t_min < self.t_max):
            raise DomainError(f"degenerate rectangle {self}")

    def contains(self, beta, gamma, slack: float = 0.0) -> bool:
        return (
            self.sigma_min - slack <= beta <= self.sigma_max + slack
            and self.t_min - slack <= gamma <= self.t_max + slack
        )

    def corners(self) -> list[complex]:
        """Counter-clockwise corners starting at the lower left."""
        return [
            complex(self.sigma_min, self.t_min),
            complex(self.sigma_max, self.t_min),
            complex(self.sigma_max, self.t_max),
            complex(self.sigma_min, self.t_max),
        ]

    def quadrants(self, fs: float = 0.5, ft: float = 0.5) -> list["Rectangle"]:
        sm = self.sigma_min + fs * (self.sigma_max - self.sigma_min)
        tm = self.t_min + ft * (self.t_max - self.t_min)
        return [
            Rectangle(self.sigma_min, sm, self.t_min, tm),
            Rectangle(sm, self.sigma_max, self.t_min, tm),
            Rectangle(self.sigma_min, sm, tm, self.t_max),
            Rectangle(sm, self.sigma_max, tm, self.t_max),
        ]

    def grown(self, delta: float) -> "Rectangle":
        return Rectangle(
            self.sigma_min - delta, self.sigma_max + delta, self.t_min - delta, self.t_max + delta
        )

    @property
    def width(self) -> float:
        return self.sigma_max - self.sigma_min

    @property
    def height(self) -> float:
        return self.t_max - self.t_min


@dataclass(frozen=True)
class AxisGrid:
    """``count`` points from ``lo`` to ``hi`` inclusive, linearly or log spaced."""

    lo: float
    hi: float
    count: int = 1
    spacing: str = "linear"

    def __post_init__(self):
        if self.count < 1:
            raise DomainError("grid count must be >= 1")
        if self.spacing not in ("linear", "log"):
            raise DomainError(f"unknown spacing {self.spacing!r}")
        if self.spacing == "log" and not (self.lo > 0 and self.hi > 0):
            raise DomainError("log spacing needs positive bounds")
        if self.hi < self.lo:
            raise DomainError("grid upper bound below lower bound")

    @classmethod
    def parse(cls, text: str) -> "AxisGrid":
        """Parse ``lo:hi:count[:log]`` or a single number."""
        parts = text.split(":")
        if len(parts) == 1:
            v = float(parts[0])
            return cls(v, v, 1)
        if len(parts) not in (3, 4):
            raise DomainError(f"grid must look like lo:hi:count[:log], got {text!r}")
        spacing = parts[3] if len(parts) == 4 else "linear"
        return cls(float(parts[0]), float(parts[1]), int(parts[2]), spacing)

    def values(self) -> list[mp.mpf]:
        if self.count == 1:
            return [mp.mpf(self.lo)]
        n = self.count - 1
        if self.spacing == "linear":
            lo, hi = mp.mpf(self.lo), mp.mpf(self.hi)
            return [lo + (hi - lo) * k / n for k in range(self.count)]
        llo, lhi = mp.log(self.lo), mp.log(self.hi)
        return [mp.exp(llo + (lhi - llo) * k / n) for k in range(self.count)]


@dataclass(frozen=True)
class GridSpec:
    """Cartesian product of per-axis grids, or explicit value lists."""

    axes: dict[str, tuple]

    @classmethod
    def of(cls, **axes) -> "GridSpec":
        norm = {}
        for name, spec in axes.items():
            if isinstance(spec, AxisGrid):
                norm[name] = tuple(spec.values())
            else:
                norm[name] = tuple(mp.mpf(v) if not isinstance(v, mp.mpf) else v for v in spec)
        return cls(norm)

    def points(self) -> list[dict[str, mp.mpf]]:
        names = list(self.axes)
        out = [{}]
        for name in names:
            out = [dict(p, **{name: v}) for p in out for v in self.axes[name]]
        return out

    def describe(self) -> dict[str, list[str]]:
        return {k: [mp.nstr(v, 15) for v in vs] for k, vs in self.axes.items()}
