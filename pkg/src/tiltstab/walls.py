"""First possible walls for pushforwards of curve bundles and the BN-slope bounds.

Walls live in the ``(beta, alpha)`` plane.  A wall for ``iota_* F`` is a line
of slope ``nu_BN(iota_* F) = t - bn_offset`` whose end points lie on the graph
of Upsilon or on one of the open vertical jump segments
``L_n = {(n, y) : (n^2 - 1)/2 < y < n^2/2}``.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bounds import PiecewiseCurve, Poly, make_upsilon_tilde, upsilon_value
from .chern import GeometryData, PlanarPoint, get_geometry
from .exactnum import Scalar, as_scalar, parse_scalar

HALF = Scalar(Fraction(1, 2))


@dataclass(frozen=True)
class PlanarLine:
    """``y = slope * x + intercept``."""

    slope: Scalar
    intercept: Scalar

    def __post_init__(self):
        object.__setattr__(self, "slope", as_scalar(self.slope))
        object.__setattr__(self, "intercept", as_scalar(self.intercept))

    @classmethod
    def through(cls, point: PlanarPoint, slope) -> "PlanarLine":
        slope = as_scalar(slope)
        return cls(slope, point.y - slope * point.x)

    def __call__(self, x) -> Scalar:
        return self.slope * as_scalar(x) + self.intercept

    def as_poly(self) -> Poly:
        return Poly(self.intercept, self.slope)

    def to_json(self) -> dict:
        return {"slope": str(self.slope), "intercept": str(self.intercept)}


@dataclass(frozen=True)
class IntersectionPoint:
    x: Scalar
    y: Scalar
    kind: str  # "curve": on the graph; "jump": inside a vertical jump; "limit": at a missing limit point

    def to_json(self) -> dict:
        return {"x": str(self.x), "y": str(self.y), "kind": self.kind}


def line_curve_intersections(ln: PlanarLine, curve: PiecewiseCurve) -> list[IntersectionPoint]:
    """Intersections of a line with the closure of a curve's graph plus its jumps.

    Where the line coincides with a piece, the end points of that piece are
    reported.  Jump segments are open, so a line through an end of a jump
    that is not attained by the curve is reported with kind ``"limit"``.
    """
    found: dict[Scalar, IntersectionPoint] = {}
    for i in range(len(curve.breaks)):
        x = curve.breaks[i]
        left, value, right = curve.limits(i)
        y = ln(x)
        if y == value:
            found[x] = IntersectionPoint(x, y, "curve")
            continue
        lims = [v for v in (left, right) if v is not None]
        lo, hi = min(lims + [value]), max(lims + [value])
        if lo < y < hi:
            found[x] = IntersectionPoint(x, y, "jump")
        elif y in lims:
            found[x] = IntersectionPoint(x, y, "limit")
    target = ln.as_poly()
    for i, poly in enumerate(curve.polys):
        a, b = curve.breaks[i], curve.breaks[i + 1]
        diff = poly - target
        if diff.is_zero():
            continue  # piece ends were handled above
        for r in diff.roots():
            if a < r < b:
                found[r] = IntersectionPoint(r, ln(r), "curve")
    return [found[k] for k in sorted(found)]


@dataclass(frozen=True)
class WallEstimate:
    t: Scalar
    line: PlanarLine
    source: str  # "type_a": through (t, Upsilon(t)); "type_b": anchored on Upsilon at the widest reach
    bn_stable: bool
    beta_max: Scalar
    alpha_max: Scalar
    beta_min: Scalar
    alpha_min: Scalar
    bn_upper: Scalar | None
    bn_lower: Scalar | None

    def to_json(self) -> dict:
        s = lambda v: None if v is None else str(v)  # noqa: E731
        return {
            "t": str(self.t),
            "line": self.line.to_json(),
            "source": self.source,
            "bn_stable": self.bn_stable,
            "beta_max": s(self.beta_max),
            "alpha_max": s(self.alpha_max),
            "beta_min": s(self.beta_min),
            "alpha_min": s(self.alpha_min),
            "bn_upper": s(self.bn_upper),
            "bn_lower": s(self.bn_lower),
        }


def _check_t(t: Scalar):
    if not (0 <= t <= HALF or Scalar(Fraction(3, 2)) <= t <= 2):
        raise ValueError(f"t = {t} must lie in [0, 1/2] or [3/2, 2]")


@lru_cache(maxsize=None)
def _tilde_window(width: int) -> PiecewiseCurve:
    return make_upsilon_tilde(-width - 2, 3)


def candidate_walls(t, geom) -> list[tuple[str, PlanarLine]]:
    t = as_scalar(t)
    geom = get_geometry(geom)
    _check_t(t)
    slope = t - geom.curve.bn_offset
    out = [("type_a", PlanarLine(slope, t - HALF - slope * t))]
    if t >= Scalar(Fraction(3, 2)):
        anchor = geom.type_b_anchor
        out.append(("type_b", PlanarLine.through(PlanarPoint(anchor, upsilon_value(anchor)), slope)))
    return out


def first_wall(t, geom) -> WallEstimate:
    """Outermost candidate wall and the slope bounds it induces."""
    t = as_scalar(t)
    geom = get_geometry(geom)
    cands = candidate_walls(t, geom)
    source, ln = max(cands, key=lambda c: c[1].intercept)
    curve = _tilde_window(geom.curve.wall_width)
    pts = line_curve_intersections(ln, curve)
    right = [p for p in pts if p.x > 0]
    left = [p for p in pts if p.x < 0]
    if not right or not left:
        raise ValueError("first wall does not meet Upsilon-tilde on both sides of 0")
    pmax, pmin = right[0], left[-1]
    stable = ln.intercept <= 0
    return WallEstimate(
        t=t,
        line=ln,
        source=source,
        bn_stable=stable,
        beta_max=pmax.x,
        alpha_max=pmax.y,
        beta_min=pmin.x,
        alpha_min=pmin.y,
        bn_upper=None if stable else pmax.y / pmax.x,
        bn_lower=None if stable else pmin.y / pmin.x,
    )


def bn_stability_threshold(geom) -> Scalar:
    """Largest t in [0, 1/2] for which iota_* F is BN stable."""
    geom = get_geometry(geom)
    return {"triple": parse_scalar("2-sqrt(14)/2"), "double": parse_scalar("(5-sqrt(23))/2")}[geom.name]


def type_switch(geom) -> Scalar:
    """t in [3/2, 2] where the outermost wall changes from type A to type B."""
    geom = get_geometry(geom)
    return {"triple": parse_scalar("sqrt(14)/2"), "double": parse_scalar("(sqrt(23)-1)/2")}[geom.name]


def _closed_form_tables(geom: GeometryData):
    q = Fraction
    off = geom.curve.bn_offset
    thr, sw = bn_stability_threshold(geom), type_switch(geom)
    if geom.name == "triple":
        upper = [
            ((thr, False), (HALF, True), lambda t: 1 - 1 / (2 * t)),
            ((Scalar(q(3, 2)), True), (sw, True), lambda t: 1 - 1 / (2 * t)),
            ((sw, True), (Scalar(q(23, 12)), True), lambda t: (-9 * t + 11) / (-8 * t + 7)),
            ((Scalar(q(23, 12)), True), (Scalar(2), True), lambda t: 3 * t - 5),
        ]
        lower = [
            ((thr, False), (HALF, True), lambda t: -5 * (2 * t - 7) / (2 * (t - 6))),
            ((Scalar(q(3, 2)), True), (Scalar(q(11, 6)), True), lambda t: -5 * (2 * t - 7) / (2 * (t - 6))),
            ((Scalar(q(11, 6)), True), (Scalar(2), True), lambda t: Scalar(-2)),
        ]
    else:
        upper = [
            ((thr, True), (HALF, True), lambda t: 1 - 1 / (2 * t)),
            ((Scalar(q(3, 2)), True), (sw, True), lambda t: 1 - 1 / (2 * t)),
            ((sw, True), (Scalar(q(31, 16)), True), lambda t: (-13 * t + 16) / (-12 * t + 11)),
            ((Scalar(q(31, 16)), True), (Scalar(2), True), lambda t: 4 * t - 7),
        ]
        lower = [
            ((thr, False), (HALF, True), lambda t: -7 * (2 * t - 9) / (2 * (t - 8))),
            ((Scalar(q(3, 2)), True), (Scalar(q(15, 8)), True), lambda t: -7 * (2 * t - 9) / (2 * (t - 8))),
            ((Scalar(q(15, 8)), True), (Scalar(2), True), lambda t: Scalar(-3)),
        ]
    return off, thr, upper, lower


def _in(t, lo, hi) -> bool:
    (a, ac), (b, bc) = lo, hi
    return (a < t or (ac and a == t)) and (t < b or (bc and t == b))


def _closed_form(t, geom, which: str) -> Scalar:
    t = as_scalar(t)
    geom = get_geometry(geom)
    _check_t(t)
    off, thr, upper, lower = _closed_form_tables(geom)
    table = upper if which == "upper" else lower
    if t <= thr and not any(_in(t, lo, hi) for lo, hi, _ in table):
        # BN stable: iota_* F is its own HN factor
        return t - off
    for lo, hi, fn in table:
        if _in(t, lo, hi):
            return fn(t)
    raise ValueError(f"t = {t} outside the range of the closed form")


def bn_upper_bound(t, geom) -> Scalar:
    """Closed-form upper bound for the maximal BN slope of ``iota_* F``."""
    return _closed_form(t, geom, "upper")


def bn_lower_bound(t, geom) -> Scalar:
    """Closed-form lower bound for the minimal BN slope of ``iota_* F``."""
    return _closed_form(t, geom, "lower")


def bn_slope_bounds(t, geom) -> tuple[Scalar, Scalar]:
    return bn_upper_bound(t, geom), bn_lower_bound(t, geom)


def wall_width_check(beta1, beta2, geom) -> bool:
    """Whether a wall with end points beta1 < 0 < beta2 respects the width bound."""
    beta1, beta2 = as_scalar(beta1), as_scalar(beta2)
    if not beta1 < 0 < beta2:
        raise ValueError("need beta1 < 0 < beta2")
    return beta2 - beta1 <= get_geometry(geom).curve.wall_width



def bn_branches(geom) -> list[tuple[str, Scalar, Scalar, Callable[[Scalar], Scalar]]]:
    """Branches ``(which, lo, hi, formula)`` of the closed-form slope bounds in t >= threshold."""
    _, _, upper, lower = _closed_form_tables(get_geometry(geom))
    return [(which, lo[0], hi[0], fn) for which, table in (("upper", upper), ("lower", lower))
            for lo, hi, fn in table]
