"""Numerical side of the stability conditions ``(Z^{a,b}_{beta,alpha}, A_{beta,alpha})``.

Hearts and semistable objects are not modelled.  What is checked here is
the shape of the central charge, the parameter region ``U_gamma`` and the
support property: negative definiteness of ``K Delta + Nabla`` on the
kernel of ``Z``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chern import ChernVector3, discriminant, twist3
from .exactnum import Scalar, as_scalar


@dataclass(frozen=True)
class StabParams:
    alpha: Scalar
    beta: Scalar
    a: Scalar
    b: Scalar
    gamma: Scalar

    def __post_init__(self):
        for name in ("alpha", "beta", "a", "b", "gamma"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("alpha", "beta", "a", "b", "gamma")}


@dataclass(frozen=True)
class CentralChargeValue:
    re: Scalar
    im: Scalar

    def __add__(self, other):
        return CentralChargeValue(self.re + other.re, self.im + other.im)

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}


def central_charge(v: ChernVector3, p: StabParams, geom=None) -> CentralChargeValue:
    """``-ch3^b + b H ch2^b + a H^2 ch1^b + i (H ch2^b - alpha^2 H^3 ch0^b / 2)``.

    H-degree coordinates make the value independent of the variety; ``geom``
    is accepted for a uniform signature.
    """
    r, a1, b2, c3 = twist3(v, p.beta).as_tuple()
    return CentralChargeValue(-c3 + p.b * b2 + p.a * a1, b2 - p.alpha * p.alpha * r / 2)


def in_u_gamma(p: StabParams) -> bool:
    if not p.alpha > 0:
        return False
    frac = p.beta - p.beta.floor() - Scalar(1) / 2
    if not p.alpha * p.alpha + frac * frac > Scalar(1) / 4:
        return False
    return p.a > p.alpha * p.alpha / 6 + abs(p.b) * p.alpha / 2 + p.gamma


def kernel_basis(p: StabParams, twisted: bool = False) -> tuple[ChernVector3, ChernVector3]:
    """Basis of ``ker Z`` (in twisted coordinates if ``twisted``).

    In twisted coordinates the basis is ``(1, 0, alpha^2/2, b alpha^2/2)`` and
    ``(0, 1, 0, a)``.
    """
    al2 = p.alpha * p.alpha
    u = ChernVector3(1, 0, al2 / 2, p.b * al2 / 2)
    w = ChernVector3(0, 1, 0, p.a)
    if twisted:
        return u, w
    return twist3(u, -p.beta), twist3(w, -p.beta)


def nabla_bar(v: ChernVector3, p: StabParams, geom=None) -> Scalar:
    r, a, b, c = twist3(v, p.beta).as_tuple()
    g = p.gamma
    return 3 * g * p.alpha * p.alpha * r * r + 2 * b * (2 * b - 3 * g * r) - 6 * a * (c - g * a)


def q_k_form(v: ChernVector3, K, p: StabParams, geom=None) -> Scalar:
    """``K Delta(v) + Nabla(v)``."""
    return as_scalar(K) * discriminant(v) + nabla_bar(v, p)


@dataclass(frozen=True)
class KernelMatrix:
    """2x2 symmetric matrix whose entries are ``const + coeff * K``."""

    entries: tuple[tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]], ...]

    def at(self, K) -> list[list[Scalar]]:
        K = as_scalar(K)
        return [[c + k * K for c, k in row] for row in self.entries]

    def det_coefficients(self) -> tuple[Scalar, Scalar, Scalar]:
        """``(c0, c1, c2)`` with ``det = c0 + c1 K + c2 K^2``."""
        (a0, a1), (b0, b1) = self.entries[0]
        (_, _), (d0, d1) = self.entries[1]
        return a0 * d0 - b0 * b0, a0 * d1 + a1 * d0 - 2 * b0 * b1, a1 * d1 - b1 * b1

    def is_negative_definite(self, K) -> bool:
        m = self.at(K)
        return m[0][0] < 0 and m[0][0] * m[1][1] - m[0][1] * m[1][0] > 0

    def to_json(self) -> list:
        return [[{"const": str(c), "K": str(k)} for c, k in row] for row in self.entries]


def kernel_matrix(p: StabParams) -> KernelMatrix:
    """Matrix of ``K Delta + Nabla`` on :func:`kernel_basis`."""
    if not p.alpha > 0:
        raise ValueError("alpha must be positive")
    al2 = p.alpha * p.alpha
    off = (-3 * p.b * al2 / 2, Scalar(0))
    return KernelMatrix(
        (
            ((al2 * al2, -al2), off),
            (off, (-6 * (p.a - p.gamma), Scalar(1))),
        )
    )


def support_interval(p: StabParams) -> tuple[Scalar, Scalar]:
    """Open interval of K for which the kernel matrix is negative definite.

    Its ends are the roots of
    ``-K^2 + (6(a - gamma) + alpha^2) K - 6(a - gamma) alpha^2 - 9 b^2 alpha^2 / 4``.
    Parameters must be rational so that the roots are exact.
    """
    if not in_u_gamma(p):
        raise ValueError("parameters are outside U_gamma")
    al2 = p.alpha * p.alpha
    A = 6 * (p.a - p.gamma)
    disc = (A - al2) * (A - al2) - 9 * p.b * p.b * al2
    if not disc.is_rational:
        raise ValueError("support_interval needs rational parameters")
    if disc <= 0:
        raise ValueError("empty interval")
    root = Scalar.sqrt(disc)
    s = A + al2
    return (s - root) / 2, (s + root) / 2
