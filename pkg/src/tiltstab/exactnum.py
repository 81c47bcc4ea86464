"""Exact arithmetic in real quadratic fields Q(sqrt(n)).

A :class:`Scalar` is ``p + q*sqrt(n)`` with rational ``p, q`` and a squarefree
radicand ``n``.  Rational numbers are scalars with ``q == 0`` (and ``n == 0``).
Two irrational scalars can only be combined when they share the radicand.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational


class IncompatibleRadicands(ValueError):
    """Raised when two scalars with different radicands meet."""


@lru_cache(maxsize=4096)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n == k*k*m`` and ``m`` squarefree (n >= 0)."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 0
    k, m = 1, 1
    rest = n
    p = 2
    # after stripping primes up to the cube root, the cofactor is a prime,
    # a product of two distinct primes, or a prime square
    while p * p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        k *= p ** (e // 2)
        m *= p ** (e % 2)
        p += 1 if p == 2 else 2
    r = math.isqrt(rest)
    if r * r == rest:
        k *= r
    else:
        m *= rest
    return k, m


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot convert {value!r} to a rational")


_ZERO = Fraction(0)


class Scalar:
    """An element ``p + q*sqrt(n)`` of a real quadratic field."""

    __slots__ = ("p", "q", "n")

    def __init__(self, p=0, q=0, n: int = 0):
        p = _frac(p)
        q = _frac(q)
        n = int(n)
        if q == 0 or n == 0:
            q, n = Fraction(0), 0
        else:
            k, m = squarefree_decompose(n)
            q *= k
            n = m
            if n == 1:
                p, q, n = p + q, Fraction(0), 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _rational(cls, p: Fraction) -> "Scalar":
        # skips normalisation; only for values already known to be rational
        out = object.__new__(cls)
        object.__setattr__(out, "p", p)
        object.__setattr__(out, "q", _ZERO)
        object.__setattr__(out, "n", 0)
        return out

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, int):
            return cls._rational(Fraction(value))
        if isinstance(value, str):
            return parse_scalar(value)
        if isinstance(value, float):
            raise TypeError("floats are not exact; pass a Fraction or string")
        return cls(value)

    @classmethod
    def sqrt(cls, value) -> "Scalar":
        """Square root of a non-negative rational."""
        r = _frac(value.to_fraction() if isinstance(value, Scalar) else value)
        if r < 0:
            raise ValueError("square root of a negative number")
        num, den = r.numerator, r.denominator
        k, m = squarefree_decompose(num * den)
        return cls(0, Fraction(k, den), m) if m != 1 else cls(Fraction(k, den))

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def to_fraction(self) -> Fraction:
        if self.q != 0:
            raise ValueError(f"{self} is irrational")
        return self.p

    def conjugate(self) -> "Scalar":
        return Scalar(self.p, -self.q, self.n)

    def _radicand(self, other: "Scalar") -> int:
        if self.n and other.n and self.n != other.n:
            raise IncompatibleRadicands(f"sqrt({self.n}) vs sqrt({other.n})")
        return self.n or other.n

    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not (self.n or other.n):
            return Scalar._rational(self.p + other.p)
        return Scalar(self.p + other.p, self.q + other.q, self._radicand(other))

    __radd__ = __add__

    def __neg__(self):
        if not self.n:
            return Scalar._rational(-self.p)
        return Scalar(-self.p, -self.q, self.n)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not (self.n or other.n):
            return Scalar._rational(self.p - other.p)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not (self.n or other.n):
            return Scalar._rational(self.p * other.p)
        n = self._radicand(other)
        return Scalar(
            self.p * other.p + self.q * other.q * n,
            self.p * other.q + self.q * other.p,
            n,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.n

    def __truediv__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if other.q == 0:
            if other.p == 0:
                raise ZeroDivisionError("division by zero")
            if not self.n:
                return Scalar._rational(self.p / other.p)
            return Scalar(self.p / other.p, self.q / other.p, self.n)
        num = self * other.conjugate()
        d = other.norm()
        return Scalar(num.p / d, num.q / d, num.n)

    def __rtruediv__(self, other):
        return Scalar.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return Scalar(1) / (self ** (-k))
        out = Scalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def sign(self) -> int:
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with q^2 n (never equal, sqrt(n) irrational)
        return sp if self.p * self.p > self.q * self.q * self.n else sq

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int:
        if isinstance(other, float) and math.isinf(other):
            return -1 if other > 0 else 1
        other = Scalar.coerce(other)
        if not (self.n or other.n):
            return (self.p > other.p) - (self.p < other.p)
        return (self - other).sign()

    def __eq__(self, other):
        if isinstance(other, (float, str)):
            return False
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.p == other.p and self.q == other.q and self.n == other.n

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.n))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.n)

    def floor(self) -> int:
        if self.q == 0:
            return math.floor(self.p)
        f = math.floor(float(self))
        while Scalar(f) > self:
            f -= 1
        while Scalar(f + 1) <= self:
            f += 1
        return f

    def ceil(self) -> int:
        return -((-self).floor())

    def __floor__(self):
        return self.floor()

    def __ceil__(self):
        return self.ceil()

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        root = f"sqrt({self.n})"
        if self.q == 1:
            surd = root
        elif self.q == -1:
            surd = "-" + root
        else:
            surd = f"{self.q}*{root}"
        if self.p == 0:
            return surd
        sep = "" if surd.startswith("-") else "+"
        return f"{self.p}{sep}{surd}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def to_json(self) -> dict:
        return {"p": str(self.p), "q": str(self.q), "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> "Scalar":
        return cls(Fraction(data["p"]), Fraction(data["q"]), int(data["n"]))


def _eval_node(node) -> Scalar:
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ValueError(f"unsupported literal {node.value!r}")
        if isinstance(node.value, float):
            # decimal literals are read exactly as written
            return Scalar(Fraction(repr(node.value)))
        return Scalar(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        val = _eval_node(node.operand)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp):
        left, right = _eval_node(node.left), _eval_node(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
        if isinstance(node.op, ast.Pow) and right.is_rational and right.p.denominator == 1:
            return left ** int(right.p)
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id == "sqrt"
        and len(node.args) == 1
        and not node.keywords
    ):
        return Scalar.sqrt(_eval_node(node.args[0]))
    raise ValueError(f"unsupported expression: {ast.dump(node)}")


def parse_scalar(text: str) -> Scalar:
    """Parse expressions such as ``"3/4"``, ``"2-sqrt(14)/2"`` or ``"1/2+3*sqrt(23)"``."""
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"malformed scalar {text!r}") from exc
    return _eval_node(tree)


def as_scalar(value) -> Scalar:
    return Scalar.coerce(value)

