from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltstab import bounds, walls
from tiltstab.exactnum import Scalar, parse_scalar


@pytest.mark.parametrize("t,slope,intercept,source", [
    (F(3, 2), F(-3, 2), F(13, 4), "type_a"),
    (F(23, 12), F(-13, 12), F(11, 3), "type_b"),
])
def test_figure_walls_for_triple(t, slope, intercept, source):
    w = walls.first_wall(t, "triple")
    assert (w.line.slope, w.line.intercept, w.source) == (slope, intercept, source)


def test_wall_at_three_halves_end_points():
    w = walls.first_wall(F(3, 2), "triple")
    assert w.bn_upper == F(2, 3)
    assert w.bn_lower == F(-20, 9)


@pytest.mark.parametrize("geom", ["triple", "double"])
def test_wall_end_points_lie_on_upsilon_tilde(geom):
    for t in bounds.interior_points(F(3, 2), 2, 12) + bounds.interior_points(0, F(1, 2), 6):
        w = walls.first_wall(t, geom)
        for x, y in ((w.beta_max, w.alpha_max), (w.beta_min, w.alpha_min)):
            assert w.line(x) == y
            if x.is_rational and x.p.denominator == 1:
                n = x.p.numerator
                assert F(n * n - 1, 2) <= y <= F(n * n, 2)
            else:
                assert y == bounds.upsilon_tilde_value(x)


@pytest.mark.parametrize("geom", ["triple", "double"])
def test_bn_stable_below_threshold(geom):
    thr = walls.bn_stability_threshold(geom)
    for t in bounds.interior_points(0, thr, 5):
        w = walls.first_wall(t, geom)
        assert w.bn_stable
        up, low = walls.bn_slope_bounds(t, geom)
        assert up == low == t - (3 if geom == "triple" else 4)
    assert not walls.first_wall(F(1, 2), geom).bn_stable


@pytest.mark.parametrize("geom", ["triple", "double"])
def test_type_switch_is_where_candidates_tie(geom):
    sw = walls.type_switch(geom)
    cands = dict(walls.candidate_walls(sw, geom))
    assert cands["type_a"].intercept == cands["type_b"].intercept
    lo, hi = bounds.interior_points(F(3, 2), sw, 1)[0], bounds.interior_points(sw, 2, 1)[0]
    assert walls.first_wall(lo, geom).source == "type_a"
    assert walls.first_wall(hi, geom).source == "type_b"


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=F(3, 2), max_value=2, max_denominator=200), st.sampled_from(["triple", "double"]))
def test_slope_bounds_bracket_the_class(t, geom):
    up, low = walls.bn_slope_bounds(t, geom)
    nu = t - (3 if geom == "triple" else 4)
    assert low <= nu <= up


@pytest.mark.parametrize("geom", ["triple", "double"])
def test_first_wall_respects_width(geom):
    for t in bounds.interior_points(F(3, 2), 2, 10):
        w = walls.first_wall(t, geom)
        assert walls.wall_width_check(w.beta_min, w.beta_max, geom)


def test_line_meets_jump_segment():
    ups = bounds.make_upsilon(-3, 3)
    ln = walls.PlanarLine(0, F(7, 4))
    pts = walls.line_curve_intersections(ln, ups)
    assert any(p.kind == "jump" and p.x == 2 for p in pts)


def test_t_outside_domain():
    with pytest.raises(ValueError):
        walls.first_wall(1, "triple")
    with pytest.raises(ValueError):
        walls.wall_width_check(1, 2, "triple")


def test_surd_breakpoints():
    assert walls.bn_stability_threshold("triple") == parse_scalar("2-sqrt(14)/2")
    assert walls.type_switch("double") == parse_scalar("(sqrt(23)-1)/2")
    assert walls.bn_upper_bound(walls.type_switch("triple"), "triple") == 1 - 1 / (2 * parse_scalar("sqrt(14)/2"))
    assert isinstance(walls.bn_lower_bound(2, "double"), Scalar)
