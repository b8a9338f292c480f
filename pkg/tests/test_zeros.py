import mpmath as mp
import pytest

from auxz import ConvergenceError, PrecisionCtx, Rectangle, find_zeros, zero_count
from auxz.zeros import count_with_rect, zero_tolerance
import auxz.zeros as zeros_mod

from conftest import r_oracle

# zeros of R in [0,1] x [0,100] from a 128-bit run, 34 digits; each is re-checked against an independent quadrature
FROZEN = [
    ("0.3292874562810273679928693634692686", "40.96214761084465514535050707967405"),
    ("0.01656897445987261751461594442894287", "49.32547994121246233612233811688776"),
    ("0.3583574168160833534947784217714333", "59.44675135655392561165118671525649"),
    ("0.2209233629464883809407415675486675", "66.9904506309646967971641279576285"),
    ("0.8606419097008019234641445784314387", "77.23682612009297864046037674820032"),
    ("0.2468576226180717840528942584770938", "87.63396387840057090916936343560564"),
    ("0.5201412726097007814995845105149084", "94.64351849725592273638466306449603"),
]


@pytest.mark.parametrize("beta, gamma", FROZEN)
def test_frozen_zeros_are_zeros_of_independent_oracle(beta, gamma):
    with mp.workdps(40):
        s = mp.mpc(beta, gamma)
        assert abs(r_oracle(s)) < 1e-25


@pytest.mark.parametrize(
    "rect, count",
    [
        (Rectangle(2, 3, float(32 * mp.pi), 150), 0),
        (Rectangle(1.5, 2, 2707, 2807), 0),
        (Rectangle(0, 1, 0, 100), 7),
    ],
)
def test_zero_count(rect, count, ctx64):
    assert zero_count(rect, ctx64) == count


def test_census_on_wide_rectangle(ctx64):
    rect = Rectangle(-1, 2, 5, 100)
    n = zero_count(rect, ctx64)
    zs = find_zeros(rect, ctx64)
    assert sum(z.multiplicity for z in zs) == n == 10
    for z in zs:
        assert rect.contains(z.beta, z.gamma)
        with mp.workdps(30):
            assert abs(r_oracle(mp.mpc(z.beta, z.gamma))) < 1e-12


def test_find_zeros_matches_frozen(ctx):
    zs = find_zeros(Rectangle(0, 1, 0, 100), ctx)
    assert len(zs) == len(FROZEN)
    for z, (b, g) in zip(zs, FROZEN):
        with mp.workprec(256):
            assert abs(z.beta - mp.mpf(b)) < 1e-25 and abs(z.gamma - mp.mpf(g)) < 1e-25
        assert z.residual <= zero_tolerance(ctx)
        assert z.beta < 1
        assert z.rect.contains(z.beta, z.gamma, slack=1e-6)


def test_empty_rectangle_gives_no_zeros(ctx64):
    assert find_zeros(Rectangle(2, 3, 100, 150), ctx64) == []


def test_precision_doubling_stability():
    rect = Rectangle(0.1, 0.5, 40, 42)
    lo = find_zeros(rect, PrecisionCtx(64))
    hi = find_zeros(rect, PrecisionCtx(128))
    assert len(lo) == len(hi) == 1
    tol = 10 * zero_tolerance(PrecisionCtx(64))
    assert abs(lo[0].beta - hi[0].beta) < tol and abs(lo[0].gamma - hi[0].gamma) < tol


def test_boundary_zero_nudges_edges(ctx64):
    beta, gamma = (float(v) for v in FROZEN[0])
    rect = Rectangle(beta, beta + 0.2, 40, 42)
    n, used = count_with_rect(rect, ctx64)
    assert used != rect
    assert n == (1 if used.contains(beta, gamma) else 0)


def test_census_mismatch_raises(monkeypatch, ctx64):
    monkeypatch.setattr(zeros_mod, "_solve", lambda *a, **k: None)
    with pytest.raises(ConvergenceError, match="census"):
        find_zeros(Rectangle(0, 1, 40, 42), ctx64)
