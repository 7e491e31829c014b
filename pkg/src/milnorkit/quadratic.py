"""Exact arithmetic in Q(√D) for a fixed squarefree D > 1.

Elements are a + b√D with rational a, b. Signs are decided by comparing
squares, so no floating point is ever involved.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return (f, D) with n = f^2 * D and D squarefree (n >= 1)."""
    if n < 1:
        raise ValueError("need a positive integer")
    f, D = 1, 1
    p = 2
    m = n
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            D *= p
        p += 1
    D *= m
    return f, D


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


@dataclass(frozen=True)
class QuadraticNumber:
    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.D < 2 or squarefree_decomposition(self.D)[0] != 1:
            raise ValueError(f"D={self.D} is not a squarefree integer > 1")

    @classmethod
    def rational(cls, q, D: int) -> "QuadraticNumber":
        return cls(Fraction(q), Fraction(0), D)

    def _lift(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            if other.D != self.D:
                raise ValueError("mixing different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber.rational(other, self.D)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.D)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadraticNumber(self.a * o.a + self.D * self.b * o.b,
                               self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def sign(self) -> int:
        """Exact sign of a + b√D."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the term with larger square wins
        diff = self.a * self.a - self.D * self.b * self.b
        return sa if diff > 0 else sb

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def is_integral_pair(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def to_json(self):
        """Integer pair [a, b] when possible, else pair of "p/q" strings."""
        if self.is_integral_pair():
            return [int(self.a), int(self.b)]
        return [str(self.a), str(self.b)]

    def __str__(self):
        parts = []
        if self.a or not self.b:
            parts.append(str(self.a))
        if self.b:
            coef = "" if abs(self.b) == 1 else str(abs(self.b))
            sym = f"{coef}√{self.D}"
            if parts:
                parts.append(("+ " if self.b > 0 else "- ") + sym)
            else:
                parts.append(sym if self.b > 0 else "-" + sym)
        return " ".join(parts)

    def __float__(self):  # display only
        return float(self.a) + float(self.b) * self.D ** 0.5
