"""Bogomolov-Gieseker type inequalities involving ch3 on the threefold.

The quadratic form is

    Q(E) = (2 alpha - beta^2) (Delta(E) + 3 gamma r'^2)
           + 2 b' (2 b' - 3 gamma r') - 6 a' (c' - gamma a')

with ``(r', a', b', c')`` the beta-twisted Chern vector in H-degrees and
``Gamma = gamma H^2`` (so ``Gamma.H / H^3 = gamma`` and ``Gamma ch1 = gamma a'``).
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .chern import ChernVector3, GeometryData, discriminant, get_geometry, twist3
from .exactnum import Scalar, as_scalar


class DeltaDiscrepancyWarning(UserWarning):
    """The literal max formula for delta disagrees with the tabulated value."""


@dataclass(frozen=True)
class QGammaParams:
    alpha: Scalar
    beta: Scalar
    gamma_coeff: Scalar
    gammaH2_dot_H: Scalar  # Gamma.H = gamma * d

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma_coeff", "gammaH2_dot_H"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.gammaH2_dot_H < 0:
            raise ValueError("Gamma.H must be non-negative")

    @classmethod
    def make(cls, alpha, beta, geom, gamma=None) -> "QGammaParams":
        geom = get_geometry(geom)
        g = as_scalar(geom.gamma if gamma is None else gamma)
        return cls(alpha, beta, g, g * geom.d)


def q_gamma(v: ChernVector3, params: QGammaParams, geom=None) -> Scalar:
    """Exact value of the quadratic form at ``(alpha, beta)``."""
    g = params.gamma_coeff
    if geom is not None and params.gammaH2_dot_H != g * get_geometry(geom).d:
        raise ValueError("Gamma.H does not match gamma * H^3")
    w = twist3(v, params.beta)
    r, a, b, c = w.as_tuple()
    s = 2 * params.alpha - params.beta * params.beta
    return s * (discriminant(w) + 3 * g * r * r) + 2 * b * (2 * b - 3 * g * r) - 6 * a * (c - g * a)


def reduction_region(alpha, beta) -> bool:
    """``alpha > beta^2/2 + (beta - [beta])([beta] + 1 - beta)/2`` (strict)."""
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    fl = beta.floor()
    return alpha > beta * beta / 2 + (beta - fl) * (fl + 1 - beta) / 2


# -- the kernel of the weak central charge ----------------------------------

def weak_kernel_basis(alpha, beta) -> tuple[ChernVector3, ChernVector3]:
    """Basis of the kernel of ``H^2 ch1^beta + i (H ch2 - alpha H^3 ch0)``."""
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    return ChernVector3(1, beta, alpha, 0), ChernVector3(0, 0, 0, 1)


def _polarize(form: Callable, u, v) -> Scalar:
    return (form(u + v) - form(u) - form(v)) / 2


def gram_matrix(form: Callable, basis) -> list[list[Scalar]]:
    return [[_polarize(form, u, v) if i != j else form(u) for j, v in enumerate(basis)]
            for i, u in enumerate(basis)]


@dataclass(frozen=True)
class SemiNegativityResult:
    holds: bool
    gram: tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
    witness: ChernVector3 | None = None

    def __bool__(self):
        return self.holds


def _positive_direction(m) -> tuple[Scalar, Scalar] | None:
    """Coefficients ``(x, y)`` with ``m(x, y) > 0``, or None if m <= 0."""
    (m11, m12), (_, m22) = m
    if m11 > 0:
        return Scalar(1), Scalar(0)
    if m22 > 0:
        return Scalar(0), Scalar(1)
    if m11 * m22 - m12 * m12 >= 0:
        return None
    if m11 != 0:
        return -m12 / m11, Scalar(1)
    # m11 == 0 and m12 != 0: value 2 m12 x + m22 equals 1
    return (1 - m22) / (2 * m12), Scalar(1)


def q_kernel_seminegativity(alpha, beta, params: QGammaParams | None = None, geom=None,
                            form: Callable | None = None, samples: int = 0,
                            seed: int = 0) -> SemiNegativityResult:
    """Decide exactly whether the form is ``<= 0`` on the weak kernel.

    ``form`` defaults to :func:`q_gamma` at ``(alpha, beta)`` and can be
    replaced to test a modified form.  The decision uses the 2x2 Gram matrix
    (diagonal entries ``<= 0`` and determinant ``>= 0``); ``samples`` extra
    random kernel vectors are evaluated as a consistency check.
    """
    alpha, beta = as_scalar(alpha), as_scalar(beta)
    if not alpha > beta * beta / 2:
        raise ValueError("need alpha > beta^2 / 2")
    if params is None:
        params = QGammaParams.make(alpha, beta, geom if geom is not None else "triple")
    if form is None:
        form = lambda v: q_gamma(v, params)  # noqa: E731
    basis = weak_kernel_basis(alpha, beta)
    m = gram_matrix(form, basis)
    gram = ((m[0][0], m[0][1]), (m[1][0], m[1][1]))
    direction = _positive_direction(gram)
    if direction is not None:
        x, y = direction
        return SemiNegativityResult(False, gram, basis[0].scale(x) + basis[1].scale(y))
    if samples:
        import random

        rng = random.Random(seed)
        for _ in range(samples):
            x, y = (Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(2))
            w = basis[0].scale(x) + basis[1].scale(y)
            if form(w) > 0:
                return SemiNegativityResult(False, gram, w)
    return SemiNegativityResult(True, gram)


# -- delta and gamma -----------------------------------------------------------

@dataclass(frozen=True)
class DeltaReport:
    value: Scalar  # the value used downstream
    literal: Scalar
    stated: Scalar
    terms: tuple[Scalar, ...]
    discrepancy: bool

    def to_json(self) -> dict:
        return {
            "value": str(self.value),
            "literal": str(self.literal),
            "stated": str(self.stated),
            "terms": [str(t) for t in self.terms],
            "discrepancy": self.discrepancy,
        }


def delta_terms(geom) -> tuple[Scalar, ...]:
    """The five quantities whose maximum defines delta, as printed."""
    geom = get_geometry(geom)
    d, e = Fraction(geom.d), geom.e
    return tuple(
        Scalar(x)
        for x in (4 / d, e / d, Fraction(26) / (3 * d) - e / d - Fraction(1, 3), (57 - 7 * e) / (13 * d), (16 - 3 * e) / d)
    )


def delta_report(geom, use_stated: bool = True) -> DeltaReport:
    geom = get_geometry(geom)
    terms = delta_terms(geom)
    literal = max(terms)
    stated = Scalar(geom.delta_stated)
    disc = literal != stated
    if disc:
        warnings.warn(
            f"{geom.name}: max formula gives delta = {literal}, tabulated value is {stated}",
            DeltaDiscrepancyWarning,
            stacklevel=2,
        )
    return DeltaReport(stated if use_stated else literal, literal, stated, terms, disc)


def delta_x(geom, use_stated: bool = True) -> Scalar:
    return delta_report(geom, use_stated).value


def gamma_from_delta(geom) -> Scalar:
    """``Gamma = delta H^2 - td_2`` as a multiple of ``H^2``."""
    geom = get_geometry(geom)
    return Scalar(geom.delta_stated - geom.threefold.td2_coeff)


# -- the ch2-ch3 inequality chain ----------------------------------------------

CASES = ("mu_outside", "mu_half_3q", "mu_3q_1", "nu_zero")


@dataclass(frozen=True)
class CertificateReport:
    case: str
    holds: bool
    q_lower: Scalar  # lower bound for Q from the hom(O, E) estimates
    substituted: Scalar  # after the slope constraint of the case (scaled as in the chain)
    A: Scalar | None = None
    B: Scalar | None = None
    C: Scalar | None = None
    linear_factor: Scalar | None = None  # A a + (2A - B) b
    remainder: Scalar | None = None  # (4A - 2B + C) b^2
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        s = lambda x: None if x is None else str(x)  # noqa: E731
        return {
            "case": self.case,
            "holds": self.holds,
            "q_lower": s(self.q_lower),
            "substituted": s(self.substituted),
            "A": s(self.A),
            "B": s(self.B),
            "C": s(self.C),
            "linear_factor": s(self.linear_factor),
            "remainder": s(self.remainder),
            "checks": self.checks,
        }


def chain_coefficients(geom, case: str, delta=None, slope_constraint: str = "printed"):
    """``(A, B, C, scale)`` with ``scale * Q >= C b^2 - B a b + A a^2`` in a case.

    ``slope_constraint`` selects, for ``mu_half_3q``, the substitution
    ``r <= 2a - 8b`` as used in the chain (``"printed"``) or the weaker
    ``r <= 2a - 8b/3`` that the bound ``b/r <= 3 mu/4 - 3/8`` gives
    (``"derived"``).
    """
    geom = get_geometry(geom)
    d = Scalar(geom.d)
    delta = as_scalar(geom.delta_stated if delta is None else delta)
    g = delta - Scalar(geom.e) / d  # Gamma.H / H^3
    if case == "mu_outside":
        return 6 * (delta - 3 / d), 6 * g + 16 / d, Scalar(4), 1
    if case == "mu_half_3q":
        k = Scalar(8) if slope_constraint == "printed" else Scalar(Fraction(8, 3))
        # r -> 2a - k b in -6 g r b - 6 r a / d
        return 6 * delta - 24 / d, 12 * g + 16 / d - 6 * k / d, 4 + 6 * k * g, 1
    if case == "mu_3q_1":
        return 30 * delta - 102 / d, 42 * g + 56 / d, 20 + 24 * g, 5
    raise ValueError(f"case {case!r} has no quadratic chain")


def ch2ch3_certificate(v: ChernVector3, geom, case: str, delta=None,
                       slope_constraint: str = "printed") -> CertificateReport:
    """Replay the lower-bound chain for ``Q(v)`` at ``alpha = beta = 0``.

    The vector must satisfy ``a >= 0`` and ``0 <= 2b <= a`` together with the
    slope constraint of the case:

    * ``mu_outside``: ``r <= a``;
    * ``mu_half_3q``: ``r <= 2a - 8b`` (or ``2a - 8b/3``, see
      :func:`chain_coefficients`);
    * ``mu_3q_1``: ``5 r <= 7a - 4b``;
    * ``nu_zero``: ``b = 0``; here ch3 is taken from ``v``.

    The substituted quadratic is non-negative either through the factored
    form ``(a - 2b)(A a + (2A - B) b) + (4A - 2B + C) b^2`` or because the
    binary form is positive semi-definite; either closes the chain.
    """
    geom = get_geometry(geom)
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}; expected one of {CASES}")
    r, a, b, c = v.as_tuple()
    if a < 0 or b < 0 or 2 * b > a:
        raise ValueError("need a >= 0 and 0 <= 2b <= a")
    d = Scalar(geom.d)
    delta = as_scalar(geom.delta_stated if delta is None else delta)
    e = Scalar(geom.e)
    g = delta - e / d

    if case == "nu_zero":
        if b != 0:
            raise ValueError("case nu_zero needs H ch2 = 0")
        # chi(E) <= (4/d) a gives c <= (4/d - e/d) a
        lower = -6 * a * ((4 / d - e / d) * a - g * a)
        actual = q_gamma(v, QGammaParams(0, 0, g, g * d))
        ok_c = c + e / d * a <= 4 / d * a
        checks = {"ch3_bound": ok_c, "lower_nonneg": lower >= 0, "chain": (not ok_c) or actual >= lower}
        return CertificateReport(case, all(checks.values()), lower, lower, checks=checks)

    q_lower = 4 * b * b - 16 / d * a * b + 6 * (delta - 2 / d) * a * a - 6 * g * r * b - 6 / d * r * a
    A, B, C, scale = chain_coefficients(geom, case, delta, slope_constraint)
    if case == "mu_outside":
        ok = r <= a
    elif case == "mu_half_3q":
        k = Scalar(8) if slope_constraint == "printed" else Scalar(Fraction(8, 3))
        ok = r <= 2 * a - k * b
    else:
        ok = 5 * r <= 7 * a - 4 * b
    if not ok:
        raise ValueError(f"vector violates the slope constraint of case {case}")
    substituted = C * b * b - B * a * b + A * a * a
    linear = A * a + (2 * A - B) * b
    remainder = (4 * A - 2 * B + C) * b * b
    checks = {
        "chain": scale * q_lower >= substituted,
        "identity": (a - 2 * b) * linear + remainder == substituted,
        "linear_factor_nonneg": linear >= 0,
        "remainder_nonneg": remainder >= 0,
        # C b^2 - B a b + A a^2 >= 0 for all (a, b) also closes the argument
        "form_psd": A >= 0 and C >= 0 and B * B <= 4 * A * C,
    }
    factored = checks["linear_factor_nonneg"] and checks["remainder_nonneg"]
    holds = checks["chain"] and checks["identity"] and (factored or checks["form_psd"])
    return CertificateReport(case, holds, q_lower, substituted, A, B, C, linear, remainder, checks)


# -- weighted projective spaces ------------------------------------------------

@dataclass(frozen=True)
class WeightTuple:
    weights: tuple[int, ...]
    m: int

    def to_json(self) -> dict:
        return {"weights": list(self.weights), "m": self.m}


def weight_conditions(w) -> tuple[bool, int]:
    """Check both numerical conditions; returns ``(ok, m)``."""
    w = tuple(sorted(w))
    big = [x for x in w if x > 1]
    for i, x in enumerate(big):
        if any(y % x == 0 for j, y in enumerate(big) if j != i):
            return False, 0
    L = math.lcm(*w)
    s = sum(w)
    if s % L:
        return False, 0
    m = s // L
    return m >= 2, m


def _divisors(n: int) -> list[int]:
    small = [k for k in range(1, math.isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def enumerate_weight_tuples(max_weight: int = 30) -> list[WeightTuple]:
    """All sorted 5-tuples of weights ``<= max_weight`` meeting both conditions.

    Every weight divides ``L = lcm`` and ``sum = m L`` with ``m >= 2`` forces
    ``L <= 5 max_weight / 2``, so it suffices to run over such ``L`` and
    multisets of its divisors.
    """
    if max_weight < 4:
        raise ValueError("max_weight must be at least 4")
    found = []
    for L in range(1, 5 * max_weight // 2 + 1):
        divs = [x for x in _divisors(L) if x <= max_weight]
        for n_ones in range(5, -1, -1):
            k = 5 - n_ones
            # weights > 1 are pairwise non-dividing, hence distinct
            for big in itertools.combinations([x for x in divs if x > 1], k):
                if any(y % x == 0 for x, y in itertools.combinations(big, 2)):
                    continue
                w = (1,) * n_ones + big
                if math.lcm(*w) != L:
                    continue
                s = sum(w)
                if s % L == 0 and s // L >= 2:
                    found.append(WeightTuple(w, s // L))
    return sorted(found, key=lambda t: t.weights)
