"""Moebius function, Witt ranks N_w(k) and the derived rank formulas.

The symbol often written phi in the rank formula N_w(k) is the Moebius
function, *not* Euler's totient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial


def moebius(d: int) -> int:
    if d < 1:
        raise ValueError(f"moebius is defined for d >= 1, got {d}")
    result = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1
    if d > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def witt_sum(w: int, k: int) -> int:
    """The divisor sum  sum_{d | w} mu(d) k^(w/d)  (always divisible by w)."""
    return sum(moebius(d) * k ** (w // d) for d in divisors(w))


def witt_rank(w: int, k: int) -> int:
    """Rank N_w(k) of the weight-w layer of the free Lie ring on k letters."""
    if w < 1 or k < 1:
        raise ValueError(f"witt_rank needs w >= 1 and k >= 1, got w={w}, k={k}")
    total = witt_sum(w, k)
    q, r = divmod(total, w)
    assert r == 0, f"Witt divisor sum {total} not divisible by {w}"
    return q


def milnor_module_rank(k: int, n: int) -> int:
    """k*N_n(k) - N_{n+1}(k): rank of the length-(n+1) Milnor module on k components."""
    if n < 2:
        raise ValueError(f"Milnor modules C_n are only defined for n >= 2 (got n={n})")
    if k < 2:
        raise ValueError(f"need at least two components (got k={k})")
    return k * witt_rank(n, k) - witt_rank(n + 1, k)


def m_growth_floor(n: int) -> Fraction:
    """Exact n^(n-1)/n!, the asymptotic floor for the relabeling-orbit count."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return Fraction(n ** (n - 1), factorial(n))


@dataclass(frozen=True)
class WittTable:
    k: int
    max_weight: int
    ranks: dict[int, int] = field(compare=True)

    @classmethod
    def build(cls, k: int, max_weight: int) -> "WittTable":
        if max_weight < 1:
            raise ValueError("max_weight must be positive")
        return cls(k, max_weight, {w: witt_rank(w, k) for w in range(1, max_weight + 1)})

    def to_json(self) -> dict:
        return {"k": self.k, "max_weight": self.max_weight,
                "ranks": {str(w): r for w, r in self.ranks.items()}}
