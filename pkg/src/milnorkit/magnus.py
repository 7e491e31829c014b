"""Truncated Magnus expansion x_i -> 1 + X_i of free groups.

Series are sparse maps monomial -> integer, where a monomial is a tuple of
generator ids of length <= degree_cap. Coefficients below the cap are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping

from .freegroup import FreeWord

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class TruncatedSeries:
    k: int
    degree_cap: int
    coefficients: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {m: c for m, c in self.coefficients.items() if c and len(m) <= self.degree_cap}
        object.__setattr__(self, "coefficients", clean)

    @classmethod
    def one(cls, k: int, degree_cap: int) -> "TruncatedSeries":
        return cls(k, degree_cap, {(): 1})

    def __getitem__(self, m: Iterable[int]) -> int:
        return self.coefficients.get(tuple(m), 0)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        cap = min(self.degree_cap, other.degree_cap)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.coefficients.items():
            room = cap - len(m1)
            if room < 0:
                continue
            for m2, c2 in other.coefficients.items():
                if len(m2) <= room:
                    m = m1 + m2
                    out[m] = out.get(m, 0) + c1 * c2
        return TruncatedSeries(self.k, cap, out)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        out = dict(self.coefficients)
        for m, c in other.coefficients.items():
            out[m] = out.get(m, 0) - c
        return TruncatedSeries(self.k, min(self.degree_cap, other.degree_cap), out)

    def homogeneous(self, degree: int) -> dict[Monomial, int]:
        return {m: c for m, c in self.coefficients.items() if len(m) == degree}

    def inverse(self) -> "TruncatedSeries":
        """Inverse of a series with constant term 1: sum_j (1 - S)^j."""
        if self[()] != 1:
            raise ValueError("only series with constant term 1 are inverted")
        one = TruncatedSeries.one(self.k, self.degree_cap)
        nil = one - self
        out, power = one, one
        for _ in range(self.degree_cap):
            power = power * nil
            out = TruncatedSeries(self.k, self.degree_cap,
                                  _add(out.coefficients, power.coefficients))
        return out

    def sorted_items(self) -> list[tuple[Monomial, int]]:
        return sorted(self.coefficients.items(), key=lambda mc: (len(mc[0]), mc[0]))

    def to_json(self) -> dict[str, int]:
        return {" ".join(str(g + 1) for g in m): c for m, c in self.sorted_items()}


def _add(a: Mapping[Monomial, int], b: Mapping[Monomial, int]) -> dict[Monomial, int]:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0) + c
    return out


def letter_series(gen: int, exp: int, k: int, degree_cap: int) -> dict[Monomial, int]:
    """Coefficients of (1 + X)^exp, the negative case truncated at degree_cap."""
    out = {}
    for j in range(degree_cap + 1):
        if exp >= 0:
            c = comb(exp, j)
        else:
            c = (-1) ** j * comb(-exp + j - 1, j)
        if c:
            out[(gen,) * j] = c
    return out


def _times_letter(coeffs: dict[Monomial, int], gen: int, exp: int, cap: int) -> dict[Monomial, int]:
    factor = letter_series(gen, exp, 0, cap)
    out: dict[Monomial, int] = {}
    for m, c in coeffs.items():
        room = cap - len(m)
        for tail, f in factor.items():
            if len(tail) <= room:
                key = m + tail
                out[key] = out.get(key, 0) + c * f
    return {m: c for m, c in out.items() if c}


def magnus_expand(w: FreeWord, k: int, degree_cap: int) -> TruncatedSeries:
    if degree_cap < 1:
        raise ValueError("degree_cap must be positive")
    coeffs: dict[Monomial, int] = {(): 1}
    for gen, exp in w.letters:
        if not 0 <= gen < k:
            raise ValueError(f"generator x{gen + 1} out of range for alphabet of size {k}")
        coeffs = _times_letter(coeffs, gen, exp, degree_cap)
    return TruncatedSeries(k, degree_cap, coeffs)


class Identity:
    """Depth marker for the empty word (it lies in every term of the series)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "IDENTITY"


IDENTITY = Identity()


@dataclass(frozen=True)
class AtLeast:
    """Depth marker: the word lies in F_bound, but the cap hides anything further."""

    bound: int

    def __repr__(self):
        return f"AT_LEAST({self.bound})"


def lcs_depth(w: FreeWord, k: int, degree_cap: int) -> int | AtLeast | Identity:
    """Lower-central-series depth q (w in F_q minus F_{q+1}) as seen through the cap."""
    if w.is_identity():
        return IDENTITY
    s = magnus_expand(w, k, degree_cap)
    low = min((len(m) for m in s.coefficients if m), default=None)
    if low is None:
        return AtLeast(degree_cap + 1)
    return low


def depth_at_least(depth: int | AtLeast | Identity, q: int) -> bool:
    if depth is IDENTITY:
        return True
    if isinstance(depth, AtLeast):
        return depth.bound >= q
    return depth >= q


def leading_lie_part(w: FreeWord, k: int, q: int):
    """Degree-q part of the expansion of w in F_q, in Lyndon coordinates."""
    from .lie import LieElement

    if w.is_identity():
        return LieElement.zero(k, q)
    s = magnus_expand(w, k, q)
    if any(len(m) < q for m in s.coefficients if m):
        raise ValueError(f"word {w} is not in F_{q}")
    return LieElement.from_polynomial(k, q, s.homogeneous(q))
