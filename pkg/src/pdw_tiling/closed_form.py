"""Exact numbers of the form ``q * sqrt(r)`` and angles ``arccos`` of them.

Enough arithmetic to carry the cosine-law chain for the twelve-tile solution
without floating point: every cosine and sine that appears is a rational
multiple of the square root of a rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _squarefree_split(n: int) -> tuple:
    """n = k*k*r with r squarefree; returns (k, r)."""
    k, r, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        if n % p == 0:
            n //= p
            r *= p
        p += 1
    return k, r * n


@dataclass(frozen=True)
class Surd:
    coef: Fraction
    rad: int = 1

    def __post_init__(self):
        coef, rad = Fraction(self.coef), int(self.rad)
        if rad < 1:
            raise ValueError("radicand must be positive")
        k, r = _squarefree_split(rad)
        coef *= k
        if coef == 0:
            r = 1
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "rad", r)

    @classmethod
    def sqrt(cls, q) -> "Surd":
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative number")
        # sqrt(n/d) = sqrt(n*d)/d
        return cls(Fraction(1, q.denominator), q.numerator * q.denominator)

    @classmethod
    def coerce(cls, x) -> "Surd":
        return x if isinstance(x, Surd) else cls(Fraction(x))

    def square(self) -> Fraction:
        return self.coef * self.coef * self.rad

    def __float__(self):
        return float(self.coef) * math.sqrt(self.rad)

    def __neg__(self):
        return Surd(-self.coef, self.rad)

    def __add__(self, other):
        other = Surd.coerce(other)
        if other.coef == 0:
            return self
        if self.coef == 0:
            return other
        if self.rad != other.rad:
            raise ValueError(f"cannot add surds with radicands {self.rad}, {other.rad}")
        return Surd(self.coef + other.coef, self.rad)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-Surd.coerce(other))

    def __rsub__(self, other):
        return Surd.coerce(other) - self

    def __mul__(self, other):
        other = Surd.coerce(other)
        return Surd(self.coef * other.coef, self.rad * other.rad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Surd.coerce(other)
        if other.coef == 0:
            raise ZeroDivisionError
        # a / b = a * b / b^2
        return Surd(self.coef * other.coef / other.square(), self.rad * other.rad)

    def __rtruediv__(self, other):
        return Surd.coerce(other) / self

    def sign(self) -> int:
        return (self.coef > 0) - (self.coef < 0)

    def __str__(self):
        if self.rad == 1:
            return str(self.coef)
        # q*sqrt(r) written as p/(s*sqrt(r)) when that is tidier
        inv = self.coef * self.rad
        if abs(inv.numerator) == 1 and self.coef.numerator != inv.numerator:
            sign = "-" if inv < 0 else ""
            return f"{sign}1/({inv.denominator}*sqrt({self.rad}))" if inv.denominator != 1 \
                else f"{sign}1/sqrt({self.rad})"
        if inv.denominator != 1 and self.coef.denominator % self.rad == 0:
            return f"{inv.numerator}/({inv.denominator}*sqrt({self.rad}))"
        num = {1: "", -1: "-"}.get(self.coef.numerator, f"{self.coef.numerator}*")
        den = "" if self.coef.denominator == 1 else f"/{self.coef.denominator}"
        return f"{num}sqrt({self.rad}){den}"


def sqrt1m(c: Surd) -> Surd:
    """sqrt(1 - c^2), the sine of arccos(c)."""
    return Surd.sqrt(1 - Surd.coerce(c).square())


_EXACT_COS = {
    Fraction(0): Fraction(1), Fraction(1, 3): Fraction(1, 2), Fraction(1, 2): Fraction(0),
    Fraction(2, 3): Fraction(-1, 2), Fraction(1): Fraction(-1),
}


def cos_pi(q) -> Surd | None:
    """Exact cos(q*pi) where it is a surd of the supported form, else None."""
    q = Fraction(q) % 2
    if q > 1:
        q = 2 - q
    if q in _EXACT_COS:
        return Surd(_EXACT_COS[q])
    if q in (Fraction(1, 6), Fraction(5, 6)):
        return Surd(Fraction(1, 2) if q < Fraction(1, 2) else Fraction(-1, 2), 3)
    if q in (Fraction(1, 4), Fraction(3, 4)):
        return Surd(Fraction(1, 2) if q < Fraction(1, 2) else Fraction(-1, 2), 2)
    return None


def sin_pi(q) -> Surd | None:
    return cos_pi(Fraction(1, 2) - Fraction(q))


@dataclass(frozen=True)
class ClosedForm:
    """Either ``pi_coeff * pi`` or ``arccos(cos_value)``."""

    pi_coeff: Fraction | None = None
    cos_value: Surd | None = None

    @classmethod
    def pi(cls, q) -> "ClosedForm":
        return cls(pi_coeff=Fraction(q))

    @classmethod
    def arccos(cls, c) -> "ClosedForm":
        c = Surd.coerce(c)
        if abs(float(c)) > 1:
            raise ValueError(f"arccos argument {c} outside [-1, 1]")
        return cls(cos_value=c)

    @property
    def value(self) -> float:
        if self.pi_coeff is not None:
            return float(self.pi_coeff) * math.pi
        return math.acos(max(-1.0, min(1.0, float(self.cos_value))))

    @property
    def cos(self) -> Surd | None:
        if self.cos_value is not None:
            return self.cos_value
        return cos_pi(self.pi_coeff)

    def __float__(self):
        return self.value

    def __str__(self):
        if self.pi_coeff is not None:
            q = self.pi_coeff
            if q == 0:
                return "0"
            num = {1: "", -1: "-"}.get(q.numerator, f"{q.numerator}*")
            den = "" if q.denominator == 1 else f"/{q.denominator}"
            return f"{num}pi{den}"
        return f"acos({self.cos_value})"
