"""Chern characters in H-degree coordinates and the geometry registry.

Classes on the threefold ``X`` are stored as ``(H^3 ch0, H^2 ch1, H ch2, ch3)``,
classes on the surface ``T`` as ``(H^2 ch0, H ch1, ch2)`` and classes on the
curve ``C`` as ``(rank, degree)``.  Keeping everything in H-degrees means the
twists and slopes below never need the degree ``H^3`` explicitly.

Two planar conventions appear downstream and are easy to swap by accident:

* the slope plane ``(mu, ch2 / H^2 ch0)`` used for Bogomolov-type bounds;
* the polygon plane ``(ch2, H ch1)`` used for HN polygons, where the
  slope of a segment is ``nu = x / y``.

:func:`slope_point` and :func:`polygon_point` are the only places that build
points in those planes from Chern vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction

from .exactnum import Scalar, as_scalar

INF = math.inf


@dataclass(frozen=True)
class PlanarPoint:
    x: Scalar
    y: Scalar

    def __post_init__(self):
        object.__setattr__(self, "x", as_scalar(self.x))
        object.__setattr__(self, "y", as_scalar(self.y))

    def __add__(self, other: "PlanarPoint") -> "PlanarPoint":
        return PlanarPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "PlanarPoint") -> "PlanarPoint":
        return PlanarPoint(self.x - other.x, self.y - other.y)

    def scale(self, k) -> "PlanarPoint":
        return PlanarPoint(self.x * k, self.y * k)

    def to_json(self) -> dict:
        return {"x": str(self.x), "y": str(self.y)}


def _coerce_fields(obj):
    for f in fields(obj):
        object.__setattr__(obj, f.name, as_scalar(getattr(obj, f.name)))


@dataclass(frozen=True)
class ChernVector3:
    """``(H^3 ch0, H^2 ch1, H ch2, ch3)`` on the threefold."""

    r: Scalar
    a: Scalar
    b: Scalar
    c: Scalar

    def __post_init__(self):
        _coerce_fields(self)

    def __add__(self, other):
        return ChernVector3(self.r + other.r, self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other):
        return ChernVector3(self.r - other.r, self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self):
        return ChernVector3(-self.r, -self.a, -self.b, -self.c)

    def scale(self, k) -> "ChernVector3":
        return ChernVector3(self.r * k, self.a * k, self.b * k, self.c * k)

    def as_tuple(self):
        return (self.r, self.a, self.b, self.c)


@dataclass(frozen=True)
class ChernVector2:
    """``(H^2 ch0, H ch1, ch2)`` on a surface."""

    r: Scalar
    a: Scalar
    b: Scalar

    def __post_init__(self):
        _coerce_fields(self)

    def __add__(self, other):
        return ChernVector2(self.r + other.r, self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return ChernVector2(self.r - other.r, self.a - other.a, self.b - other.b)

    def scale(self, k) -> "ChernVector2":
        return ChernVector2(self.r * k, self.a * k, self.b * k)

    def as_tuple(self):
        return (self.r, self.a, self.b)


@dataclass(frozen=True)
class ChernVector1:
    """``(rank, degree)`` of a sheaf on the curve."""

    r: Scalar
    d: Scalar

    def __post_init__(self):
        _coerce_fields(self)

    @property
    def mu(self) -> Scalar:
        return self.d / self.r


@dataclass(frozen=True)
class ThreefoldData:
    d: int  # H^3
    e: Fraction  # H . td_2
    td2_coeff: Fraction  # td_2 = td2_coeff * H^2


@dataclass(frozen=True)
class SurfaceData:
    HT2: int  # H_T^2
    KT_coeff: int  # K_T = KT_coeff * H_T
    chi_const: int  # chi(F) = r * (mu - chi_const) ... after dividing by rank
    restriction_mult: int  # deg(F|_C) = restriction_mult * H_T . ch1


@dataclass(frozen=True)
class CurveData:
    genus: int
    t_scale: int  # t = mu / t_scale
    pushforward_c1: int  # H_S . ch1(iota_* F) = pushforward_c1 * rank
    pushforward_shift: int  # ch2(iota_* F) = rank * (mu - pushforward_shift)
    wall_width: int  # width bound for walls of iota_* F
    bn_offset: int  # nu_BN(iota_* F) = t - bn_offset


@dataclass(frozen=True)
class GeometryData:
    name: str
    threefold: ThreefoldData
    surface: SurfaceData
    curve: CurveData
    gamma: Fraction
    delta_stated: Fraction
    HS2: int = 2  # the degree-one surface is P^1 x P^1 with H_S^2 = 2

    @property
    def d(self) -> int:
        return self.threefold.d

    @property
    def e(self) -> Fraction:
        return self.threefold.e

    @property
    def type_b_anchor(self) -> int:
        """Left end of the widest possible wall ending on the jump at x = 2."""
        return 2 - self.curve.wall_width


TRIPLE = GeometryData(
    name="triple",
    threefold=ThreefoldData(d=3, e=Fraction(7, 2), td2_coeff=Fraction(7, 6)),
    surface=SurfaceData(HT2=6, KT_coeff=-2, chi_const=11, restriction_mult=2),
    curve=CurveData(
        genus=25, t_scale=12, pushforward_c1=6, pushforward_shift=36, wall_width=6, bn_offset=3
    ),
    gamma=Fraction(2, 9),
    delta_stated=Fraction(25, 18),
)

DOUBLE = GeometryData(
    name="double",
    threefold=ThreefoldData(d=2, e=Fraction(11, 3), td2_coeff=Fraction(11, 6)),
    surface=SurfaceData(HT2=4, KT_coeff=-2, chi_const=10, restriction_mult=4),
    curve=CurveData(
        genus=49, t_scale=16, pushforward_c1=8, pushforward_shift=64, wall_width=8, bn_offset=4
    ),
    gamma=Fraction(1, 3),
    delta_stated=Fraction(13, 6),
)

GEOMETRIES = {"triple": TRIPLE, "double": DOUBLE}


def get_geometry(key) -> GeometryData:
    if isinstance(key, GeometryData):
        return key
    try:
        return GEOMETRIES[key]
    except KeyError:
        raise KeyError(f"unknown variety {key!r}; expected one of {sorted(GEOMETRIES)}") from None


def twist3(v: ChernVector3, beta) -> ChernVector3:
    """``ch^beta = e^{-beta H} ch`` in H-degree coordinates."""
    beta = as_scalar(beta)
    b2 = beta * beta
    return ChernVector3(
        v.r,
        v.a - beta * v.r,
        v.b - beta * v.a + b2 * v.r / 2,
        v.c - beta * v.b + b2 * v.a / 2 - b2 * beta * v.r / 6,
    )


def twist2(v: ChernVector2, beta) -> ChernVector2:
    beta = as_scalar(beta)
    return ChernVector2(v.r, v.a - beta * v.r, v.b - beta * v.a + beta * beta * v.r / 2)


def _ratio(num: Scalar, den: Scalar):
    return INF if den == 0 else num / den


def mu(v):
    """Slope ``H ch1 / ch0`` measured in H-degrees."""
    return _ratio(v.a, v.r)


def nu_bn(v):
    """Brill-Noether slope ``ch2 / H ch1`` (or ``H ch2 / H^2 ch1`` on X)."""
    return _ratio(v.b, v.a)


def discriminant(v) -> Scalar:
    """``(H ch1)^2 - 2 H^2 ch0 ch2`` in H-degrees; invariant under twisting."""
    return v.a * v.a - 2 * v.r * v.b


def slope_point(v) -> PlanarPoint:
    """``(mu, ch2 / ch0)`` with ch0 measured by H-degree."""
    if v.r == 0:
        raise ValueError("slope point needs positive rank")
    return PlanarPoint(v.a / v.r, v.b / v.r)


def polygon_point(v: ChernVector2) -> PlanarPoint:
    """``(ch2, H ch1)``: the plane in which HN polygons are drawn."""
    return PlanarPoint(v.b, v.a)


def grr_pushforward(f: ChernVector1, geom: GeometryData) -> ChernVector2:
    """Chern character of ``iota_* F`` on the surface S, in H-degrees.

    ``H_S . ch1 = H_S^2 * pushforward_c1 * rank`` and
    ``ch2 = rank * (mu - pushforward_shift)``.
    """
    geom = get_geometry(geom)
    c = geom.curve
    return ChernVector2(0, geom.HS2 * c.pushforward_c1 * f.r, f.d - c.pushforward_shift * f.r)


def curve_t(f: ChernVector1, geom: GeometryData) -> Scalar:
    return f.mu / get_geometry(geom).curve.t_scale


def restrict_to_curve(f: ChernVector2, geom: GeometryData, dualize: bool = False) -> ChernVector1:
    """Restriction of a sheaf on T to the curve C (or of ``F^v(2H_T)``)."""
    geom = get_geometry(geom)
    s = geom.surface
    rank = f.r / s.HT2
    deg = s.restriction_mult * (2 * f.r - f.a if dualize else f.a)
    return ChernVector1(rank, deg)
