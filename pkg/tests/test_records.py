import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from auxz import AxisGrid, DomainError, GridSpec, Rectangle, make_record


def test_pass_needs_margin_above_ten_errors():
    assert make_record("x", 1, 2, 0.01).passed
    assert not make_record("x", 1, 2, 0.2).passed
    assert not make_record("x", 2, 2).passed
    r = make_record("x", 3, 2)
    assert r.margin == -1 and not r.passed


def test_record_tau_and_sort_key():
    r = make_record("x", 0, 1, sigma=1, t=2 * mp.pi)
    assert abs(r.tau - 1) < 1e-15
    a = make_record("a", 0, 1, sigma=2, t=5)
    b = make_record("a", 0, 1, sigma=1, t=5)
    c = make_record("a", 0, 1, sigma=0, t=6)
    assert sorted([c, a, b], key=lambda r: r.sort_key()) == [b, a, c]


def test_rectangle_geometry():
    r = Rectangle(0, 1, 0, 2)
    assert r.corners() == [0j, 1 + 0j, 1 + 2j, 2j]
    qs = r.quadrants()
    assert sum(q.width * q.height for q in qs) == pytest.approx(2)
    assert r.grown(0.5) == Rectangle(-0.5, 1.5, -0.5, 2.5)
    assert r.contains(1, 2) and not r.contains(1.1, 1)
    with pytest.raises(DomainError):
        Rectangle(1, 1, 0, 1)


def test_axis_grid_parse():
    assert [float(v) for v in AxisGrid.parse("0:2:5").values()] == [0, 0.5, 1, 1.5, 2]
    logs = AxisGrid.parse("1:1000:4:log").values()
    assert [round(float(v)) for v in logs] == [1, 10, 100, 1000]
    assert AxisGrid.parse("3.5").values() == [mp.mpf(3.5)]
    for bad in ("1:2", "0:1:3:cubic", "-1:1:3:log", "2:1:3", "0:1:0"):
        with pytest.raises(DomainError):
            AxisGrid.parse(bad)


@given(st.lists(st.integers(1, 5), min_size=1, max_size=3))
def test_grid_spec_is_cartesian(sizes):
    axes = {f"a{i}": AxisGrid(0, 1, n) for i, n in enumerate(sizes)}
    pts = GridSpec.of(**axes).points()
    expected = 1
    for n in sizes:
        expected *= n
    assert len(pts) == expected
    assert len({tuple(sorted((k, float(v)) for k, v in p.items())) for p in pts}) == expected
