"""Exact piecewise-polynomial curves and the concrete bounds built from them.

A :class:`PiecewiseCurve` is stored as sorted break points ``x_0 < ... < x_k``,
one polynomial (degree at most two) on each open interval ``(x_i, x_{i+1})``
and an explicit value at every break point.  Open/closed flags and isolated
values are derived from that data, so discontinuities are always explicit.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .exactnum import Scalar, as_scalar

ZERO = Scalar(0)
HALF = Scalar(Fraction(1, 2))


@dataclass(frozen=True)
class Poly:
    """``c0 + c1*x + c2*x^2``."""

    c0: Scalar = ZERO
    c1: Scalar = ZERO
    c2: Scalar = ZERO

    def __post_init__(self):
        for name in ("c0", "c1", "c2"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))

    def __call__(self, x) -> Scalar:
        x = as_scalar(x)
        return self.c0 + x * (self.c1 + x * self.c2)

    def __sub__(self, other: "Poly") -> "Poly":
        return Poly(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def scale(self, k) -> "Poly":
        return Poly(self.c0 * k, self.c1 * k, self.c2 * k)

    def shift(self, h) -> "Poly":
        """The polynomial ``x -> self(x + h)``."""
        h = as_scalar(h)
        return Poly(self(h), self.c1 + 2 * self.c2 * h, self.c2)

    def reflect(self) -> "Poly":
        """The polynomial ``x -> self(-x)``."""
        return Poly(self.c0, -self.c1, self.c2)

    @property
    def degree(self) -> int:
        if self.c2 != 0:
            return 2
        if self.c1 != 0:
            return 1
        return 0 if self.c0 != 0 else -1

    def is_zero(self) -> bool:
        return self.degree < 0

    def roots(self) -> list[Scalar]:
        """Real roots (exact; quadratic roots need rational coefficients)."""
        deg = self.degree
        if deg <= 0:
            return []
        if deg == 1:
            return [-self.c0 / self.c1]
        disc = self.c1 * self.c1 - 4 * self.c2 * self.c0
        if disc < 0:
            return []
        if not disc.is_rational:
            raise NotImplementedError("root would need a nested radical")
        s = Scalar.sqrt(disc.to_fraction())
        if (self.c1.n and s.n and self.c1.n != s.n) or (self.c2.n and s.n and self.c2.n != s.n):
            raise NotImplementedError("root lies outside the working quadratic field")
        r1 = (-self.c1 - s) / (2 * self.c2)
        r2 = (-self.c1 + s) / (2 * self.c2)
        return sorted({r1, r2})

    def coeffs(self) -> tuple[Scalar, Scalar, Scalar]:
        return (self.c0, self.c1, self.c2)


def line(slope, intercept) -> Poly:
    return Poly(intercept, slope)


@dataclass(frozen=True)
class Piece:
    """Read-only view of one piece of a curve."""

    lo: Scalar
    hi: Scalar
    lo_closed: bool
    hi_closed: bool
    poly: Poly


@dataclass(frozen=True)
class Discontinuity:
    x: Scalar
    left: Scalar | None
    value: Scalar
    right: Scalar | None


class PiecewiseCurve:
    """Exact piecewise polynomial function on a closed interval."""

    def __init__(self, breaks: Sequence, polys: Sequence[Poly], values: Sequence, name: str = ""):
        breaks = [as_scalar(b) for b in breaks]
        if len(polys) != len(breaks) - 1 or len(values) != len(breaks):
            raise ValueError("need k+1 breaks, k polynomials and k+1 values")
        if any(b2 <= b1 for b1, b2 in zip(breaks, breaks[1:])):
            raise ValueError("break points must be strictly increasing")
        self.breaks: tuple[Scalar, ...] = tuple(breaks)
        self.polys: tuple[Poly, ...] = tuple(polys)
        self.values: tuple[Scalar, ...] = tuple(as_scalar(v) for v in values)
        self.name = name

    @classmethod
    def from_polynomial(cls, poly: Poly, lo, hi, name: str = "") -> "PiecewiseCurve":
        lo, hi = as_scalar(lo), as_scalar(hi)
        return cls([lo, hi], [poly], [poly(lo), poly(hi)], name)

    @classmethod
    def from_pieces(cls, breaks, polys, overrides=None, name: str = "", right_continuous=False):
        """Build a curve whose break values default to a one-sided limit.

        Interior break values are taken from the piece on the left unless
        ``right_continuous``; ``overrides`` replaces any of them.
        """
        breaks = [as_scalar(b) for b in breaks]
        overrides = {as_scalar(k): as_scalar(v) for k, v in (overrides or {}).items()}
        values = []
        for i, x in enumerate(breaks):
            if x in overrides:
                values.append(overrides[x])
            elif i == 0:
                values.append(polys[0](x))
            elif i == len(breaks) - 1:
                values.append(polys[-1](x))
            else:
                values.append(polys[i](x) if right_continuous else polys[i - 1](x))
        return cls(breaks, polys, values, name)

    # -- evaluation -------------------------------------------------------
    @property
    def lo(self) -> Scalar:
        return self.breaks[0]

    @property
    def hi(self) -> Scalar:
        return self.breaks[-1]

    def contains(self, x) -> bool:
        x = as_scalar(x)
        return self.lo <= x <= self.hi

    def _locate(self, x: Scalar) -> tuple[int, bool]:
        """Index of the break equal to x (True) or of the piece containing x."""
        if not self.contains(x):
            raise ValueError(f"{x} outside domain [{self.lo}, {self.hi}]")
        i = bisect.bisect_left(self.breaks, x)
        if i < len(self.breaks) and self.breaks[i] == x:
            return i, True
        return i - 1, False

    def __call__(self, x) -> Scalar:
        x = as_scalar(x)
        i, at_break = self._locate(x)
        return self.values[i] if at_break else self.polys[i](x)

    def left_limit(self, x) -> Scalar:
        x = as_scalar(x)
        i, at_break = self._locate(x)
        if at_break:
            if i == 0:
                raise ValueError("no left limit at the left end of the domain")
            return self.polys[i - 1](x)
        return self.polys[i](x)

    def right_limit(self, x) -> Scalar:
        x = as_scalar(x)
        i, at_break = self._locate(x)
        if at_break:
            if i == len(self.polys):
                raise ValueError("no right limit at the right end of the domain")
            return self.polys[i](x)
        return self.polys[i](x)

    def limits(self, i: int) -> tuple[Scalar | None, Scalar, Scalar | None]:
        x = self.breaks[i]
        left = self.polys[i - 1](x) if i > 0 else None
        right = self.polys[i](x) if i < len(self.polys) else None
        return left, self.values[i], right

    # -- structure --------------------------------------------------------
    @property
    def pieces(self) -> list[Piece]:
        out = []
        for i, poly in enumerate(self.polys):
            lo, hi = self.breaks[i], self.breaks[i + 1]
            out.append(Piece(lo, hi, poly(lo) == self.values[i], poly(hi) == self.values[i + 1], poly))
        return out

    @property
    def point_overrides(self) -> dict[Scalar, Scalar]:
        """Break values that differ from every adjacent one-sided limit."""
        out = {}
        for i in range(len(self.breaks)):
            left, value, right = self.limits(i)
            if all(lim is None or lim != value for lim in (left, right)):
                out[self.breaks[i]] = value
        return out

    def discontinuities(self) -> list[Discontinuity]:
        out = []
        for i in range(len(self.breaks)):
            left, value, right = self.limits(i)
            if any(lim is not None and lim != value for lim in (left, right)):
                out.append(Discontinuity(self.breaks[i], left, value, right))
        return out

    def is_continuous(self) -> bool:
        return not self.discontinuities()

    def simplified(self) -> "PiecewiseCurve":
        """Merge neighbouring pieces with equal polynomials and no jump between."""
        breaks, polys, values = [self.breaks[0]], [], [self.values[0]]
        for i, poly in enumerate(self.polys):
            x = self.breaks[i + 1]
            if polys and polys[-1] == poly and poly(breaks[-1]) == values[-1]:
                breaks[-1], values[-1] = x, self.values[i + 1]
                continue
            polys.append(poly)
            breaks.append(x)
            values.append(self.values[i + 1])
        return PiecewiseCurve(breaks, polys, values, self.name)

    def restrict(self, lo, hi) -> "PiecewiseCurve":
        lo, hi = as_scalar(lo), as_scalar(hi)
        if not (self.lo <= lo < hi <= self.hi):
            raise ValueError("restriction window must lie inside the domain")
        breaks = [lo] + [b for b in self.breaks if lo < b < hi] + [hi]
        polys, values = [], []
        for j, x in enumerate(breaks):
            values.append(self(x))
            if j + 1 < len(breaks):
                mid = (x + breaks[j + 1]) / 2
                polys.append(self.polys[self._locate(mid)[0]])
        return PiecewiseCurve(breaks, polys, values, self.name)

    def mirrored(self) -> "PiecewiseCurve":
        """The curve ``x -> self(-x)`` on the reflected domain."""
        breaks = [-b for b in reversed(self.breaks)]
        polys = [p.reflect() for p in reversed(self.polys)]
        return PiecewiseCurve(breaks, polys, list(reversed(self.values)), self.name)

    def sample(self, step) -> list[tuple[Scalar, Scalar]]:
        step = as_scalar(step)
        out = []
        x = self.lo
        while x <= self.hi:
            out.append((x, self(x)))
            x = x + step
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "domain": [str(self.lo), str(self.hi)],
            "pieces": [
                {
                    "lo": str(p.lo),
                    "hi": str(p.hi),
                    "lo_closed": p.lo_closed,
                    "hi_closed": p.hi_closed,
                    "coeffs": [str(c) for c in p.poly.coeffs()],
                }
                for p in self.pieces
            ],
            "point_overrides": {str(k): str(v) for k, v in self.point_overrides.items()},
        }

    def __repr__(self):
        return f"PiecewiseCurve({self.name!r}, [{self.lo}, {self.hi}], {len(self.polys)} pieces)"


def concat(curves: Sequence[PiecewiseCurve], name: str = "") -> PiecewiseCurve:
    """Glue curves whose domains meet end to end (left curve's value wins)."""
    breaks, polys, values = list(curves[0].breaks), list(curves[0].polys), list(curves[0].values)
    for cur in curves[1:]:
        if cur.lo != breaks[-1]:
            raise ValueError("curves do not meet")
        breaks += cur.breaks[1:]
        polys += cur.polys
        values += cur.values[1:]
    return PiecewiseCurve(breaks, polys, values, name)


def _common_breaks(f: PiecewiseCurve, g: PiecewiseCurve) -> list[Scalar]:
    lo, hi = max(f.lo, g.lo), min(f.hi, g.hi)
    if lo > hi:
        raise ValueError("curves have disjoint domains")
    return sorted({lo, hi} | {b for b in f.breaks + g.breaks if lo < b < hi})


def pointwise_max(f: PiecewiseCurve, g: PiecewiseCurve, name: str = "") -> PiecewiseCurve:
    """Exact upper envelope of two curves on the intersection of their domains."""
    base = _common_breaks(f, g)
    breaks, polys, values = [base[0]], [], [max(f(base[0]), g(base[0]))]
    for lo, hi in zip(base, base[1:]):
        mid = (lo + hi) / 2
        pf, pg = f.polys[f._locate(mid)[0]], g.polys[g._locate(mid)[0]]
        cuts = [r for r in (pf - pg).roots() if lo < r < hi]
        edges = [lo] + cuts + [hi]
        for a, b in zip(edges, edges[1:]):
            m = (a + b) / 2
            polys.append(pf if pf(m) >= pg(m) else pg)
            if b != hi:
                breaks.append(b)
                values.append(polys[-1](b))
        breaks.append(hi)
        values.append(max(f(hi), g(hi)))
    return PiecewiseCurve(breaks, polys, values, name).simplified()


@dataclass(frozen=True)
class Comparison:
    holds: bool
    witness: Scalar | None = None  # a point where the inequality fails (or its limit point)
    detail: str = ""


def _interval_min_ok(h: Poly, lo: Scalar, hi: Scalar, strict: bool) -> tuple[bool, Scalar]:
    """Decide h >= 0 (or h > 0) on the open interval (lo, hi) for deg h <= 2."""
    hl, hh = h(lo), h(hi)
    if hl < 0:
        return False, lo
    if hh < 0:
        return False, hi
    if h.c2 > 0:
        v = -h.c1 / (2 * h.c2)
        if lo < v < hi:
            hv = h(v)
            if hv < 0 or (strict and hv == 0):
                return False, v
    # a non-constant polynomial that is >= 0 at both ends and has no bad
    # vertex is positive inside; only h == 0 fails the strict test
    if strict and h.is_zero():
        return False, (lo + hi) / 2
    return True, lo


def _compare(f: PiecewiseCurve, g: PiecewiseCurve, strict: bool) -> Comparison:
    base = _common_breaks(f, g)
    for x in base:
        d = g(x) - f(x)
        if d < 0 or (strict and d == 0):
            return Comparison(False, x, f"f({x}) = {f(x)} vs g = {g(x)}")
    for lo, hi in zip(base, base[1:]):
        mid = (lo + hi) / 2
        h = g.polys[g._locate(mid)[0]] - f.polys[f._locate(mid)[0]]
        ok, where = _interval_min_ok(h, lo, hi, strict)
        if not ok:
            return Comparison(False, where, f"fails on ({lo}, {hi})")
    return Comparison(True)


def curve_leq(f: PiecewiseCurve, g: PiecewiseCurve) -> Comparison:
    """Exact test of ``f <= g`` on the common domain."""
    return _compare(f, g, strict=False)


def curve_lt(f: PiecewiseCurve, g: PiecewiseCurve) -> Comparison:
    """Exact test of ``f < g`` on the common domain."""
    return _compare(f, g, strict=True)


# -- concrete curves --------------------------------------------------------

def make_xi() -> PiecewiseCurve:
    """Piecewise bound Xi on [0, 1] for ch2/ch0 in terms of the slope."""
    q = Fraction
    polys = [
        Poly(0, -1, 1),
        Poly(q(-3, 8), q(3, 4)),
        Poly(q(-1, 8), q(1, 4)),
        Poly(q(-1, 2), 0, 1),
    ]
    return PiecewiseCurve.from_pieces([0, q(1, 4), q(1, 2), q(3, 4), 1], polys, name="xi")


_XI = make_xi()


def xi(t) -> Scalar:
    return _XI(t)


def xi_abs(mu) -> Scalar:
    """Xi extended evenly to [-1, 1]."""
    return _XI(abs(as_scalar(mu)))


def upsilon_value(x) -> Scalar:
    """Direct formula: ``n^2/2`` at integers, else linear on half-unit intervals."""
    x = as_scalar(x)
    k = x.floor()
    frac = x - k
    if frac == 0:
        return Scalar(Fraction(k * k, 2))
    if frac <= HALF:
        return (k + 1) * x - Scalar(Fraction((k + 1) ** 2, 2))
    return k * x - Scalar(Fraction(k * k, 2))


def make_upsilon(lo, hi) -> PiecewiseCurve:
    """Upsilon on the window [lo, hi] with explicit values at the integers."""
    lo, hi = as_scalar(lo), as_scalar(hi)
    breaks = {lo, hi}
    for k in range(lo.floor(), hi.ceil() + 1):
        for b in (Scalar(k), Scalar(k) + HALF):
            if lo < b < hi:
                breaks.add(b)
    breaks = sorted(breaks)
    polys = []
    for a, b in zip(breaks, breaks[1:]):
        mid = (a + b) / 2
        k = mid.floor()
        if mid - k < HALF:
            polys.append(Poly(Fraction(-((k + 1) ** 2), 2), k + 1))
        else:
            polys.append(Poly(Fraction(-(k * k), 2), k))
    values = [upsilon_value(b) for b in breaks]
    return PiecewiseCurve(breaks, polys, values, name="upsilon")


def upsilon_tilde_value(x) -> Scalar:
    """``max(Upsilon(x), floor(|x|) |x| / 2)`` for |x| >= 1, Upsilon otherwise."""
    x = as_scalar(x)
    u = upsilon_value(x)
    ax = abs(x)
    if ax < 1:
        return u
    return max(u, ax.floor() * ax / 2)


def make_upsilon_tilde(lo, hi) -> PiecewiseCurve:
    """Upsilon-tilde on [lo, hi]; it is even, so the negative side is mirrored."""
    lo, hi = as_scalar(lo), as_scalar(hi)
    top = max(abs(lo), abs(hi), Scalar(2))
    right = _upsilon_tilde_nonneg(top)
    left = right.mirrored()
    # at x = 0 both halves agree; the positive half keeps its own values
    full = concat([left.restrict(-top, 0), right])
    full = PiecewiseCurve(full.breaks, full.polys, full.values, "upsilon_tilde")
    return full.restrict(lo, hi) if (lo, hi) != (-top, top) else full


def _upsilon_tilde_nonneg(top: Scalar) -> PiecewiseCurve:
    hi = Scalar(top.ceil())
    ups = make_upsilon(0, hi)
    head = ups.restrict(0, 1)
    n_max = hi.floor()
    blue_breaks = [Scalar(n) for n in range(1, n_max + 1)]
    blue_polys = [Poly(0, Fraction(n, 2)) for n in range(1, n_max)]
    # blue pieces are closed on the left: value at n is n*n/2
    blue = PiecewiseCurve.from_pieces(blue_breaks, blue_polys, right_continuous=True)
    tail = pointwise_max(ups.restrict(1, hi), blue)
    whole = concat([head, tail])
    return whole.restrict(0, top) if top != hi else whole


def is_star_shaped(curve: PiecewiseCurve, grid: Iterable) -> Comparison:
    """Check the star-shaped property of a curve on grid points.

    For every grid ``beta != 0`` and ``alpha > 0`` the segment from
    ``(beta, f(beta))`` to ``(0, alpha)`` must stay above the graph at grid
    points between them.  The condition is affine and increasing in alpha,
    so the alpha -> 0 limit (checked non-strictly) is the binding case; all
    positive grid alphas are checked as well.
    """
    pts = sorted(set(as_scalar(g) for g in grid))
    if not all(p.is_rational for p in pts):
        raise ValueError("star-shaped check expects rational grid points")
    vals = [curve(p).to_fraction() if curve(p).is_rational else None for p in pts]
    if any(v is None for v in vals):
        raise ValueError("curve values at grid points must be rational")
    fr = [p.to_fraction() for p in pts]
    den = math.lcm(*(v.denominator for v in fr + vals))
    ints = [int(v * den) for v in fr + vals]
    # products below stay under 3 * bound^2, so int64 is exact when bound < 2^30
    dtype = np.int64 if max(map(abs, ints)) < 2**30 else object
    xs = np.array(ints[: len(fr)], dtype=dtype)
    fs = np.array(ints[len(fr):], dtype=dtype)
    al = np.array([0] + [int(v) for v in xs if v > 0], dtype=dtype)
    for j, beta in enumerate(xs):
        if beta == 0:
            continue
        if beta > 0:
            mask = (xs >= 0) & (xs <= beta)
            s, u = beta, xs[mask]
        else:
            mask = (xs <= 0) & (xs >= beta)
            s, u = -beta, -xs[mask]
        fx = fs[mask]
        # alpha (s - u) + f(beta) u >= f(x) s, scaled by den
        lhs = al[:, None] * (s - u)[None, :] + fs[j] * u[None, :]
        rhs = (fx * s)[None, :]
        bad = np.argwhere(lhs < rhs)
        if len(bad):
            ai, xi_ = bad[0]
            xbad = u[xi_] if beta > 0 else -u[xi_]
            return Comparison(
                False,
                Scalar(Fraction(int(beta), den)),
                f"beta={Fraction(int(beta), den)}, alpha={Fraction(int(al[ai]), den)}, "
                f"x={Fraction(int(xbad), den)}",
            )
    return Comparison(True)


def rational_grid(lo, hi, step) -> list[Scalar]:
    lo, hi, step = as_scalar(lo), as_scalar(hi), as_scalar(step)
    n = ((hi - lo) / step).floor()
    return [lo + step * i for i in range(n + 1)]


def _rational_inside(x: Scalar, toward: Scalar) -> Fraction:
    """x itself if rational, otherwise a nearby rational between x and toward."""
    if x.is_rational:
        return x.p
    gap = abs(toward - x)
    den = 1
    while True:
        den *= 2
        cand = Fraction(round(float(x) * den), den)
        s = Scalar(cand)
        if (x < s < toward or toward < s < x) and abs(s - x) < gap / 4:
            return cand


def interior_points(lo, hi, n: int) -> list[Scalar]:
    """n equally spaced rationals strictly inside (lo, hi); the ends may be surds."""
    lo, hi = as_scalar(lo), as_scalar(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    a, b = _rational_inside(lo, hi), _rational_inside(hi, lo)
    return [Scalar(a + (b - a) * Fraction(k, n + 1)) for k in range(1, n + 1)]


def omega(x, y) -> Scalar:
    """Upper bound for ``h^0`` of a semistable factor with ``(ch2, H ch1) = (x, y)``.

    Requires ``y > 0``.  With ``nu = x / y``: ``y + x`` for ``nu > -1``;
    ``y/(2n+1) + x/(2n+1)^2`` for ``-n-1 < nu < -n``; ``y/(4n)`` at ``nu = -n``.
    """
    x, y = as_scalar(x), as_scalar(y)
    if y <= 0:
        raise ValueError("omega needs y > 0")
    nu = x / y
    if nu > -1:
        return y + x
    n = (-nu).floor()
    if nu == -n:
        return y / (4 * n)
    m = 2 * n + 1
    return y / m + x / (m * m)


def omega_vec(v) -> Scalar:
    return omega(v.x, v.y)


def curve_from_function(
    fn: Callable, breaks: Sequence, name: str = "", convex_pieces: Sequence = ()
) -> PiecewiseCurve:
    """Recover an exact piecewise-linear curve from a function linear between breaks.

    Each piece is fitted through two interior points and checked at a third;
    break values come from ``fn`` itself.  Pieces whose left end is listed in
    ``convex_pieces`` are known to be convex and are replaced by the secant
    through their end values, which bounds the function from above there.
    """
    breaks = sorted(set(as_scalar(b) for b in breaks))
    convex = {as_scalar(c) for c in convex_pieces}
    polys = []
    for a, b in zip(breaks, breaks[1:]):
        if a in convex:
            ya, yb = fn(a), fn(b)
            slope = (yb - ya) / (b - a)
            polys.append(Poly(ya - slope * a, slope))
            continue
        w = b - a
        x1, x2, x3 = a + w / 4, a + w / 2, a + 3 * w / 4
        y1, y2, y3 = fn(x1), fn(x2), fn(x3)
        slope = (y3 - y1) / (x3 - x1)
        poly = Poly(y1 - slope * x1, slope)
        if poly(x2) != y2:
            raise ValueError(f"function is not linear on ({a}, {b})")
        polys.append(poly)
    values = [fn(x) for x in breaks]
    return PiecewiseCurve(breaks, polys, values, name)
