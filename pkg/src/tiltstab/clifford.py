"""Clifford-type bounds for ``h^0(F)/rank(F)`` of stable bundles on the curve C.

The HN polygon of ``iota_* F`` (for BN stability, drawn in the plane
``(ch2, H ch1)``) lies in the triangle ``O P Q`` where ``P`` is the class of
``iota_* F`` and ``Q`` is cut out by the slope bounds of the first wall.  The
number of sections is bounded by ``Omega(O P1) + Omega(P1 P)`` maximised over
points ``P1`` of the triangle.

Three routes are provided:

* :func:`clifford_bound` follows the case analysis: per range of ``t`` it
  evaluates a fixed list of named candidate points and, where the case
  analysis replaces an exact value by a linear majorant, uses that majorant;
* :func:`polygon_max` maximises over *all* vertices of the arrangement of
  special rays (an exact optimiser independent of the case split);
* :func:`clifford_bound_bruteforce` searches two-segment paths over a grid
  of segment slopes and three-segment convex paths through a rational
  lattice in the triangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .bounds import PiecewiseCurve, curve_from_function, omega, xi
from .chern import GeometryData, PlanarPoint, get_geometry
from .exactnum import Scalar, as_scalar, parse_scalar
from .walls import bn_lower_bound, bn_stability_threshold, bn_upper_bound, type_switch

q = Fraction
ORIGIN = PlanarPoint(0, 0)


# -- geometry of the triangle ----------------------------------------------

@dataclass(frozen=True)
class PolygonInstance:
    t: Scalar
    geometry: str
    P: PlanarPoint
    Q: PlanarPoint | None
    nu_p: Scalar
    nu_plus: Scalar
    nu_minus: Scalar
    bn_stable: bool


def polygon_instance(t, geom) -> PolygonInstance:
    """Points P (per unit rank) and Q for the given t."""
    t = as_scalar(t)
    geom = get_geometry(geom)
    c = geom.curve
    P = PlanarPoint(c.t_scale * (t - c.bn_offset), c.t_scale)
    nu_p = t - c.bn_offset
    stable = t <= bn_stability_threshold(geom)
    if stable:
        return PolygonInstance(t, geom.name, P, None, nu_p, nu_p, nu_p, True)
    nu_plus, nu_minus = bn_upper_bound(t, geom), bn_lower_bound(t, geom)
    yq = (P.x - nu_minus * P.y) / (nu_plus - nu_minus)
    return PolygonInstance(t, geom.name, P, PlanarPoint(nu_plus * yq, yq), nu_p, nu_plus, nu_minus, False)


def meet(p0: PlanarPoint, nu0, p1: PlanarPoint, nu1) -> PlanarPoint | None:
    """Intersection of the lines ``x - x0 = nu0 (y - y0)`` and ``x - x1 = nu1 (y - y1)``."""
    nu0, nu1 = as_scalar(nu0), as_scalar(nu1)
    if nu0 == nu1:
        return None
    y = (p1.x - p0.x + nu0 * p0.y - nu1 * p1.y) / (nu0 - nu1)
    return PlanarPoint(p0.x + nu0 * (y - p0.y), y)


def _cross(o: PlanarPoint, a: PlanarPoint, b: PlanarPoint) -> Scalar:
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


def in_triangle(pt: PlanarPoint, a: PlanarPoint, b: PlanarPoint, c: PlanarPoint) -> bool:
    """Closed-triangle membership by exact orientation tests."""
    s = [_cross(a, b, pt).sign(), _cross(b, c, pt).sign(), _cross(c, a, pt).sign()]
    return not (-1 in s and 1 in s)


def two_step_value(p1: PlanarPoint, P: PlanarPoint) -> Scalar | None:
    """``Omega(O P1) + Omega(P1 P)``, or None when a segment is not admissible."""
    if p1.y <= 0 or P.y - p1.y <= 0:
        return None
    return omega(p1.x, p1.y) + omega(P.x - p1.x, P.y - p1.y)


def path_value(points: list[PlanarPoint]) -> Scalar | None:
    """Sum of Omega over consecutive segments of a convex path from O."""
    total = Scalar(0)
    prev = ORIGIN
    last_nu = None
    for pt in points:
        dx, dy = pt.x - prev.x, pt.y - prev.y
        if dy <= 0:
            return None
        nu = dx / dy
        if last_nu is not None and nu > last_nu:
            return None
        total = total + omega(dx, dy)
        prev, last_nu = pt, nu
    return total


# -- named candidates used by the case analysis ----------------------------

def _locate_named(inst: PolygonInstance, spec: tuple) -> PlanarPoint | None:
    kind = spec[0]
    P, Q = inst.P, inst.Q
    if kind == "Q":
        return Q
    if kind == "P":
        return P
    if kind == "QP_O":  # on QP, O-ray of slope -n
        return meet(P, inst.nu_minus, ORIGIN, -spec[1])
    if kind == "OQ_P":  # on OQ, P-ray of slope -n
        return meet(ORIGIN, inst.nu_plus, P, -spec[1])
    if kind == "O_P":  # O-ray of slope -m and P-ray of slope -n
        return meet(ORIGIN, -spec[1], P, -spec[2])
    raise ValueError(f"unknown candidate kind {kind}")


@dataclass(frozen=True)
class CaseSpec:
    index: int
    lo: Scalar
    lo_closed: bool
    hi: Scalar
    hi_closed: bool
    labels: tuple  # (label, geometry spec, majorant or None)
    printed: tuple  # printed bound as a tuple of (slope, intercept) lines; the bound is their max

    def contains(self, t: Scalar) -> bool:
        left = self.lo < t or (self.lo_closed and t == self.lo)
        right = t < self.hi or (self.hi_closed and t == self.hi)
        return left and right


def _lin(slope, intercept) -> Callable[[Scalar], Scalar]:
    slope, intercept = as_scalar(slope), as_scalar(intercept)
    return lambda t: slope * t + intercept


def _cases(geom: GeometryData) -> list[CaseSpec]:
    S = Scalar
    sw = type_switch(geom)
    if geom.name == "triple":
        maj2 = (q(10, 19), q(145, 152))
        maj3 = (q(33, 38), q(69, 76))
        maj4 = (q(231, 32), q(-375, 64))
        maj5 = (q(233, 32), q(-191, 32))
        return [
            CaseSpec(1, S(0), True, S(q(1, 6)), False, (("Q", ("Q",), None),), ((q(12, 25), q(24, 25)),)),
            CaseSpec(2, S(q(1, 6)), True, S(q(1, 4)), False,
                     (("Q", ("Q",), None), ("A", ("QP_O", 2), maj2)),
                     ((q(8, 9), q(8, 9)), maj2)),
            CaseSpec(3, S(q(1, 4)), True, S(q(1, 2)), True,
                     (("Q", ("Q",), None), ("A", ("QP_O", 2), maj3), ("B", ("QP_O", 1), maj3)),
                     ((4, 0), maj3)),
            CaseSpec(4, S(q(3, 2)), True, S(q(11, 6)), True,
                     (("Q", ("Q",), None), ("A", ("QP_O", 1), None), ("B", ("OQ_P", 2), maj4),
                      ("C", ("O_P", 1, 2), None)),
                     ((4, 0), maj4)),
            CaseSpec(5, S(q(11, 6)), False, sw, True,
                     (("B", ("OQ_P", 2), maj5), ("C", ("O_P", 1, 2), None)),
                     (maj5,)),
            CaseSpec(6, sw, True, S(q(23, 12)), True,
                     (("Q", ("Q",), None), ("A", ("QP_O", 1), None)),
                     ((q(192, 25), q(-168, 25)),)),
            CaseSpec(7, S(q(23, 12)), True, S(2), True,
                     (("Q", ("Q",), None), ("A", ("QP_O", 1), None)),
                     ((12, -15),)),
        ]
    maj2 = (q(85, 246), q(481, 492))
    maj3 = (q(17, 38), q(147, 152))
    maj4 = (q(63, 82), q(153, 164))
    maj6 = (q(133, 18), q(-114, 18))
    ef = (("E", ("O_P", 2, 3), None), ("F", ("O_P", 1, 3), None))
    return [
        CaseSpec(1, S(0), True, S(q(1, 8)), False, (("Q", ("Q",), None),), ((q(16, 49), q(48, 49)),)),
        CaseSpec(2, S(q(1, 8)), True, S(q(1, 6)), False,
                 (("Q", ("Q",), None), ("A", ("QP_O", 3), maj2)),
                 ((q(12, 25), q(24, 25)), maj2)),
        CaseSpec(3, S(q(1, 6)), True, S(q(1, 4)), False,
                 (("Q", ("Q",), None), ("A", ("QP_O", 3), None), ("B", ("QP_O", 2), maj3)),
                 ((q(8, 9), q(8, 9)), maj3)),
        CaseSpec(4, S(q(1, 4)), True, S(q(1, 2)), True,
                 (("Q", ("Q",), None), ("A", ("QP_O", 3), None), ("B", ("QP_O", 2), None),
                  ("C", ("QP_O", 1), maj4)),
                 ((4, 0), maj4)),
        CaseSpec(5, S(q(3, 2)), True, S(q(15, 8)), True,
                 (("Q", ("Q",), None), ("B", ("QP_O", 2), None), ("C", ("QP_O", 1), None),
                  ("D", ("OQ_P", 3), None)) + ef,
                 ((4, 0),)),
        CaseSpec(6, S(q(15, 8)), False, sw, True, (("D", ("OQ_P", 3), maj6),) + ef, (maj6,)),
        CaseSpec(7, sw, True, S(q(31, 16)), True, (("Q", ("Q",), None),) + ef,
                 ((q(236, 49), q(-148, 21)),)),
        CaseSpec(8, S(q(31, 16)), True, S(2), True, (("Q", ("Q",), None),) + ef, ((16, -23),)),
    ]


_CASE_CACHE: dict[str, list[CaseSpec]] = {}


def clifford_cases(geom) -> list[CaseSpec]:
    geom = get_geometry(geom)
    if geom.name not in _CASE_CACHE:
        _CASE_CACHE[geom.name] = _cases(geom)
    return _CASE_CACHE[geom.name]


def cases_containing(t, geom) -> list[CaseSpec]:
    t = as_scalar(t)
    found = [c for c in clifford_cases(geom) if c.contains(t)]
    if not found:
        raise ValueError(f"t = {t} lies outside [0, 1/2] and [3/2, 2]")
    return found


def printed_bound(t, geom) -> Scalar:
    """The closed-form bound as stated case by case (min where two cases overlap)."""
    t = as_scalar(t)
    vals = [max(as_scalar(a) * t + as_scalar(b) for a, b in c.printed) for c in cases_containing(t, geom)]
    return min(vals)


@dataclass(frozen=True)
class Candidate:
    label: str
    point: PlanarPoint | None
    exact: Scalar | None  # Omega(O P1) + Omega(P1 P) at the point
    bound: Scalar | None  # the value the case analysis uses (majorant if any)
    majorant: tuple | None = None
    note: str = ""

    @property
    def majorant_ok(self) -> bool:
        return self.exact is None or self.bound is None or self.bound >= self.exact


@dataclass(frozen=True)
class CliffordBound:
    t: Scalar
    bound: Scalar
    case: int
    argmax_label: str
    candidates: tuple[Candidate, ...] = ()
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "t": str(self.t),
            "bound": str(self.bound),
            "case": self.case,
            "argmax": self.argmax_label,
            "candidates": [
                {
                    "label": c.label,
                    "point": None if c.point is None else c.point.to_json(),
                    "exact": None if c.exact is None else str(c.exact),
                    "bound": None if c.bound is None else str(c.bound),
                    "note": c.note,
                }
                for c in self.candidates
            ],
            "notes": list(self.notes),
        }


def _case_bound(t: Scalar, case: CaseSpec, inst: PolygonInstance) -> CliffordBound:
    if inst.bn_stable:
        val = omega(inst.P.x, inst.P.y)
        cand = Candidate("OP", inst.P, val, val)
        return CliffordBound(t, val, case.index, "OP", (cand,))
    cands = []
    tri = (ORIGIN, inst.Q, inst.P)
    for label, spec, maj in case.labels:
        pt = _locate_named(inst, spec)
        if pt is None or not in_triangle(pt, *tri):
            cands.append(Candidate(label, pt, None, None, maj, "outside the triangle"))
            continue
        exact = two_step_value(pt, inst.P)
        if exact is None:
            cands.append(Candidate(label, pt, None, None, maj, "degenerate segment"))
            continue
        bound = _lin(*maj)(t) if maj is not None else exact
        cands.append(Candidate(label, pt, exact, bound, maj))
    usable = [c for c in cands if c.bound is not None]
    if not usable:
        raise ValueError(f"no admissible candidate at t = {t}")
    best = max(usable, key=lambda c: c.bound)
    return CliffordBound(t, best.bound, case.index, best.label, tuple(cands))


def _right_limit_at_zero(geom: GeometryData) -> Scalar:
    # on (0, threshold] the bound is linear, so two samples give the limit
    eps = Scalar(q(1, 1000))
    a = clifford_bound(eps, geom).bound
    b = clifford_bound(2 * eps, geom).bound
    c = clifford_bound(3 * eps, geom).bound
    if c - b != b - a:
        raise ArithmeticError("bound is not linear near t = 0")
    return 2 * a - b


def clifford_bound(t, geom) -> CliffordBound:
    """Upper bound for ``h^0(F)/r`` following the case analysis.

    Where two closed cases share an end point both bounds hold and the
    smaller one is returned.  At ``t = 0`` the right limit of the bound is
    returned (the formula at the single point ``t = 0`` would give 1, since
    the slope of ``iota_* F`` is then an integer).
    """
    t = as_scalar(t)
    geom = get_geometry(geom)
    if t == 0:
        lim = _right_limit_at_zero(geom)
        inst = polygon_instance(t, geom)
        at_zero = omega(inst.P.x, inst.P.y)
        return CliffordBound(
            t, lim, 1, "OP (right limit)", (),
            (f"right limit as t -> 0+; the value of Omega(OP) at t = 0 itself is {at_zero}",),
        )
    inst = polygon_instance(t, geom)
    results = [_case_bound(t, case, inst) for case in cases_containing(t, geom)]
    best = min(results, key=lambda r: r.bound)
    if len(results) > 1:
        others = ", ".join(f"case {r.case}: {r.bound}" for r in results)
        best = CliffordBound(best.t, best.bound, best.case, best.argmax_label, best.candidates,
                             (f"shared end point of two cases ({others}); the smaller bound is used",))
    return best


# -- exact optimiser over the full ray arrangement ---------------------------

@dataclass(frozen=True)
class PolygonOptimum:
    t: Scalar
    value: Scalar
    point: PlanarPoint
    label: str
    candidates: tuple[tuple[str, PlanarPoint, Scalar], ...]


def _integer_slopes(lo: Scalar, hi: Scalar) -> list[int]:
    """Positive n with -n in [lo, hi]."""
    return [n for n in range(1, (-lo).floor() + 1) if lo <= -n <= hi]


def candidate_points(t, geom) -> tuple[PolygonInstance, list[tuple[str, PlanarPoint]]]:
    """Every vertex of the arrangement of special rays inside the triangle.

    Special rays have slope ``nu = -n``; they are drawn from O (inside the
    wedge between OP and OQ) and into P (between QP and OP).  Together with
    the triangle's vertices their pairwise intersections and the points
    where they cross the edges are the only places an optimum can sit.
    """
    inst = polygon_instance(t, geom)
    P = inst.P
    out: list[tuple[str, PlanarPoint]] = [("P", P)]
    if inst.bn_stable:
        return inst, out
    Q = inst.Q
    out.append(("Q", Q))
    o_rays = _integer_slopes(inst.nu_p, inst.nu_plus)
    p_rays = _integer_slopes(inst.nu_minus, inst.nu_p)
    tri = (ORIGIN, Q, P)
    for n in o_rays:
        pt = meet(P, inst.nu_minus, ORIGIN, -n)
        if pt is not None and in_triangle(pt, *tri):
            out.append((f"QP&O[{n}]", pt))
    for n in p_rays:
        pt = meet(ORIGIN, inst.nu_plus, P, -n)
        if pt is not None and in_triangle(pt, *tri):
            out.append((f"OQ&P[{n}]", pt))
    for m in o_rays:
        for n in p_rays:
            pt = meet(ORIGIN, -m, P, -n)
            if pt is not None and in_triangle(pt, *tri):
                out.append((f"O[{m}]&P[{n}]", pt))
    return inst, out


def polygon_max(t, geom) -> PolygonOptimum:
    """Exact maximum of ``Omega(O P1) + Omega(P1 P)`` over the closed triangle.

    ``P1 = P`` stands for the one-segment polygon ``Omega(O P)``.
    """
    t = as_scalar(t)
    inst, pts = candidate_points(t, geom)
    scored = []
    for label, pt in pts:
        if label == "P":
            val = omega(inst.P.x, inst.P.y)
        else:
            val = two_step_value(pt, inst.P)
            if val is None:
                continue
        scored.append((label, pt, val))
    label, pt, val = max(scored, key=lambda s: s[2])
    return PolygonOptimum(t, val, pt, label, tuple(scored))


# -- brute force over lattice paths ------------------------------------------

def _omega_frac(x: Fraction, y: Fraction) -> Fraction:
    nu = x / y
    if nu > -1:
        return y + x
    n = (-nu).__floor__()
    if nu == -n:
        return y / (4 * n)
    m = 2 * n + 1
    return y / m + x / (m * m)


def _omega_table(inst: PolygonInstance, n: int):
    """Omega of every lattice vector ``(a Q + b P) / n`` with ``|a|, |b| <= n``."""
    size = 2 * n + 1
    exact: dict[tuple[int, int], object] = {}
    approx = np.full((size, size), np.nan)
    Q, P = inst.Q, inst.P
    rational = all(v.is_rational for v in (Q.x, Q.y, P.x, P.y))
    if rational:
        qx, qy, px, py = (v.to_fraction() for v in (Q.x, Q.y, P.x, P.y))
        f = _omega_frac
    else:
        qx, qy, px, py = Q.x, Q.y, P.x, P.y
        f = omega
    for a in range(-n, n + 1):
        for b in range(-n, n + 1):
            y = a * qy + b * py
            if y <= 0:
                continue
            val = f(a * qx + b * px, y) / n
            exact[(a, b)] = val
            approx[a + n, b + n] = float(val)
    return exact, approx


def _slope_weight(nu: Scalar) -> Scalar:
    """``Omega(x, y) / y`` for a segment of slope ``nu = x / y``."""
    if nu > -1:
        return 1 + nu
    n = (-nu).floor()
    if nu == -n:
        return Scalar(q(1, 4 * n))
    m = 2 * n + 1
    return Scalar(q(1, m)) + nu / (m * m)


def _slope_grid(lo: Scalar, hi: Scalar, n: int) -> list[Scalar]:
    """Multiples of 1/n in [lo, hi] together with both ends."""
    k0, k1 = (lo * n).ceil(), (hi * n).floor()
    return sorted({lo, hi} | {Scalar(q(k, n)) for k in range(k0, k1 + 1)})


def _slope_pair_search(inst: PolygonInstance, n: int) -> Scalar:
    """Best two-segment path ``O -> P1 -> P`` with both slopes on the grid.

    A segment of height y and slope nu contributes ``y w(nu)``, and the
    heights are fixed by the slopes, so each pair is a closed-form value.
    The grid holds every integer slope and the edge slopes exactly, which
    matters because Omega jumps up on integer slopes.
    """
    P = inst.P
    g1 = _slope_grid(inst.nu_p, inst.nu_plus, n)
    g2 = _slope_grid(inst.nu_minus, inst.nu_p, n)
    w1 = np.array([float(_slope_weight(v)) for v in g1])
    w2 = np.array([float(_slope_weight(v)) for v in g2])
    a = np.array([float(v) for v in g1])[:, None]
    b = np.array([float(v) for v in g2])[None, :]
    px, py = float(P.x), float(P.y)
    with np.errstate(divide="ignore", invalid="ignore"):
        y1 = (px - b * py) / (a - b)
        tot = y1 * w1[:, None] + (py - y1) * w2[None, :]
    ok = np.isfinite(tot) & (y1 > 1e-12 * py) & (py - y1 > 1e-12 * py)
    tot = np.where(ok, tot, -np.inf)
    best = omega(P.x, P.y)
    if not ok.any():
        return best
    top = float(tot.max())
    for i, j in np.argwhere(tot >= top - 1e-9 * max(1.0, abs(top))):
        nu1, nu2 = g1[i], g2[j]
        if nu1 == nu2:
            continue
        h = (P.x - nu2 * P.y) / (nu1 - nu2)
        if h <= 0 or P.y - h <= 0:
            continue
        best = max(best, h * _slope_weight(nu1) + (P.y - h) * _slope_weight(nu2))
    return best


def clifford_bound_bruteforce(t, geom, grid_n: int = 64, segments: int = 3) -> Scalar:
    """Lower estimate of the polygon maximum by exhaustive grid search.

    Two searches are combined.  Two-segment paths are enumerated over pairs
    of segment slopes on the grid of multiples of ``1/grid_n`` (see
    :func:`_slope_pair_search`).  Convex paths with up to ``segments``
    pieces are enumerated through the lattice ``(i Q + j P) / grid_n`` with
    ``i, j >= 0`` and ``i + j <= grid_n``; convexity (non-increasing nu along
    the path) is decided exactly with integer cross products in the lattice
    basis.  Both searches screen in floating point and re-evaluate the
    leading paths exactly.
    """
    t = as_scalar(t)
    inst = polygon_instance(t, geom)
    if inst.bn_stable:
        return omega(inst.P.x, inst.P.y)
    n = grid_n
    exact, approx = _omega_table(inst, n)
    # in the basis (Q, P): nu(u) >= nu(v) iff orient * cross(u, v) >= 0
    orient = (inst.Q.x * inst.P.y - inst.P.x * inst.Q.y).sign()
    I, J = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    keep = I + J <= n
    I, J = I[keep], J[keep]
    paths: list[tuple[float, tuple]] = [(approx[n, 2 * n], ((0, n),))]

    # two segments: O -> A -> P
    v1 = approx[I + n, J + n]
    v2 = approx[-I + n, (n - J) + n]
    ok = np.isfinite(v1) & np.isfinite(v2) & (orient * (I * (n - J) + J * I) >= 0)
    tot2 = np.where(ok, v1 + v2, -np.inf)
    k = int(np.argmax(tot2))
    paths.append((float(tot2[k]), ((int(I[k]), int(J[k])), (0, n))))

    if segments >= 3:
        for k in range(len(I)):
            ia, ja = int(I[k]), int(J[k])
            va = approx[ia + n, ja + n]
            if not np.isfinite(va):
                continue
            da, db = I - ia, J - ja  # A -> B
            vb = approx[da + n, db + n]
            vc = approx[-I + n, (n - J) + n]  # B -> P
            c1 = ia * db - ja * da
            c2 = da * (n - J) + db * I
            ok = np.isfinite(vb) & np.isfinite(vc) & (orient * c1 >= 0) & (orient * c2 >= 0)
            if not ok.any():
                continue
            tot = np.where(ok, va + vb + vc, -np.inf)
            j = int(np.argmax(tot))
            paths.append((float(tot[j]), ((ia, ja), (int(I[j]), int(J[j])), (0, n))))

    top = max(v for v, _ in paths)
    tol = 1e-9 * max(1.0, abs(top))
    best = None
    for v, verts in paths:
        if v < top - tol:
            continue
        total, prev = 0, (0, 0)
        for vert in verts:
            # the last vertex (0, n) is P itself
            total += exact[(vert[0] - prev[0], vert[1] - prev[1])]
            prev = vert
        best = total if best is None else max(best, total)
    return max(as_scalar(best), _slope_pair_search(inst, n))


# -- restriction to the surface T --------------------------------------------

def restriction_bound(mu, geom) -> Scalar:
    """Upper bound for ``ch2 / H^2 ch0`` of a sheaf on T with slope ``mu`` in (0, 1/2].

    Riemann-Roch on T plus the Clifford bounds for ``F|_C`` (at ``t = mu``)
    and ``F^v(2H_T)|_C`` (at ``t = 2 - mu``).
    """
    mu = as_scalar(mu)
    geom = get_geometry(geom)
    if not (0 <= mu <= Scalar(q(1, 2))):
        raise ValueError("mu must lie in (0, 1/2]")
    s = geom.surface
    total = clifford_bound(mu, geom).bound + clifford_bound(2 - mu, geom).bound
    return mu - Scalar(q(s.chi_const, s.HT2)) + total / s.HT2


def clifford_breaks(geom) -> list[Scalar]:
    """Points of [0, 1/2] and [3/2, 2] where the case-analysis bound may kink."""
    geom = get_geometry(geom)
    out = set()
    for case in clifford_cases(geom):
        out |= {case.lo, case.hi}
        lines = [m for _, _, m in case.labels if m is not None] + list(case.printed)
        for i, (a1, b1) in enumerate(lines):
            for a2, b2 in lines[i + 1:]:
                if a1 != a2:
                    x = (as_scalar(b2) - as_scalar(b1)) / (as_scalar(a1) - as_scalar(a2))
                    if case.lo < x < case.hi:
                        out.add(x)
    thr = bn_stability_threshold(geom)
    out.add(thr)
    return sorted(out)


def restriction_breaks(geom) -> list[Scalar]:
    half = Scalar(q(1, 2))
    pts = {Scalar(0), half}
    for b in clifford_breaks(geom):
        if 0 <= b <= half:
            pts.add(b)
        if Scalar(q(3, 2)) <= b <= 2:
            pts.add(2 - b)
    return sorted(pts)


def _is_linear(fn, a: Scalar, b: Scalar) -> bool:
    w = b - a
    y1, y2, y3 = fn(a + w / 4), fn(a + w / 2), fn(a + 3 * w / 4)
    return 2 * y2 == y1 + y3


def nonlinear_restriction_pieces(geom) -> list[tuple[Scalar, Scalar]]:
    """Pieces of [0, 1/2] on which the restriction bound is not linear.

    This happens where a case of the Clifford bound is attained at a point
    with no linear majorant (the two-step value at D for the double cover
    near t = 15/8).  Such values are convex in t, so the bound is convex on
    these pieces and lies below its secant.
    """
    geom = get_geometry(geom)
    fn = lambda m: restriction_bound(m, geom)  # noqa: E731
    br = restriction_breaks(geom)
    out = []
    for a, b in zip(br, br[1:]):
        if _is_linear(fn, a, b):
            continue
        # second differences on a fine grid must be non-negative
        pts = [a + (b - a) * Fraction(k, 16) for k in range(1, 16)]
        ys = [fn(x) for x in pts]
        if any(ys[i - 1] + ys[i + 1] < 2 * ys[i] for i in range(1, len(ys) - 1)):
            raise ArithmeticError(f"restriction bound is neither linear nor convex on ({a}, {b})")
        out.append((a, b))
    return out


def restriction_curve(geom) -> PiecewiseCurve:
    """The restriction bound on [0, 1/2] as an exact piecewise-linear curve.

    The value at 0 is the right limit (the bound itself is only claimed on
    (0, 1/2]).  On the pieces reported by :func:`nonlinear_restriction_pieces`
    the curve is the secant, an upper bound for the true value.
    """
    geom = get_geometry(geom)
    convex = [a for a, _ in nonlinear_restriction_pieces(geom)]
    return curve_from_function(
        lambda m: restriction_bound(m, geom), restriction_breaks(geom), "restriction", convex
    )


@dataclass(frozen=True)
class PrintedLine:
    lo: Scalar
    lo_closed: bool
    hi: Scalar
    hi_closed: bool
    slope: Scalar
    intercept: Scalar

    def contains(self, mu: Scalar) -> bool:
        left = self.lo < mu or (self.lo_closed and mu == self.lo)
        right = mu < self.hi or (self.hi_closed and mu == self.hi)
        return left and right

    def __call__(self, mu) -> Scalar:
        return self.slope * as_scalar(mu) + self.intercept


def _pl(lo, lc, hi, hc, slope, intercept) -> PrintedLine:
    return PrintedLine(as_scalar(lo), lc, as_scalar(hi), hc, as_scalar(slope), as_scalar(intercept))


def restriction_table(geom) -> list[PrintedLine]:
    """The stated piecewise-linear bound for ``ch2 / H^2 ch0`` on T."""
    geom = get_geometry(geom)
    if geom.name == "triple":
        thr = parse_scalar("2-sqrt(14)/2")
        return [
            _pl(0, False, q(1, 12), True, q(-23, 25), q(-13, 75)),
            _pl(q(1, 12), True, thr, True, q(-1, 5), q(-7, 30)),
            _pl(thr, True, q(1, 6), False, q(-641, 4800), q(-1157, 4800)),
            _pl(q(1, 6), True, q(89, 496), True, q(-421, 3648), q(-595, 2432)),
            _pl(q(89, 496), True, q(37, 206), True, q(-95, 1728), q(-883, 3456)),
            _pl(q(37, 206), True, q(1, 4), False, q(13, 27), q(-19, 54)),
            _pl(q(1, 4), True, q(69, 238), True, q(109, 228), q(-53, 152)),
            _pl(q(69, 238), True, q(1, 2), True, 1, q(-1, 2)),
        ]
    thr = parse_scalar("(5-sqrt(23))/2")
    return [
        _pl(0, False, q(1, 16), True, q(-143, 49), q(-23, 98)),
        _pl(q(1, 16), True, thr, True, q(-6, 49), q(-1081, 588)),
        _pl(thr, True, q(1, 8), False, q(-2701, 3528), q(-127, 882)),
        _pl(q(1, 8), True, q(217, 1654), True, q(85, 984), q(-503, 1968)),
        _pl(q(217, 1654), True, q(1, 6), False, q(3, 25), q(-13, 50)),
        _pl(q(1, 6), True, q(107, 604), True, q(17, 152), q(-157, 608)),
        _pl(q(107, 604), True, q(1, 4), False, q(2, 9), q(-5, 18)),
        _pl(q(1, 4), True, q(153, 530), True, q(63, 328), q(-175, 656)),
        _pl(q(153, 530), True, q(1, 2), True, 1, q(-1, 2)),
    ]


def printed_restriction(mu, geom) -> Scalar:
    """The tabulated bound at mu (the smaller line where two closed lines meet)."""
    mu = as_scalar(mu)
    vals = [ln(mu) for ln in restriction_table(geom) if ln.contains(mu)]
    if not vals:
        raise ValueError(f"mu = {mu} outside (0, 1/2]")
    return min(vals)


# -- Bogomolov-type check ---------------------------------------------------

@dataclass(frozen=True)
class StrongBGResult:
    holds: bool
    margin: Scalar  # Xi(|mu|) - ch2/ch0; non-negative exactly when the bound holds
    mu: Scalar


def strong_bg_check(v, geom=None, level: str = "threefold") -> StrongBGResult:
    """Whether ``ch2 / ch0 <= Xi(|mu|)`` for a class of slope in [-1, 1].

    On the threefold ``v`` is a :class:`ChernVector3` with ch2 read as
    ``H ch2``; on the surface it is a :class:`ChernVector2`.  Both are in
    H-degrees, so the ratios are the normalised ones.
    """
    if level not in ("threefold", "surfaceT"):
        raise ValueError("level must be 'threefold' or 'surfaceT'")
    if v.r == 0:
        raise ValueError("need non-zero rank")
    m = v.a / v.r
    if abs(m) > 1:
        raise ValueError("slope must lie in [-1, 1]")
    margin = xi(abs(m)) - v.b / v.r
    return StrongBGResult(margin >= 0, margin, m)
