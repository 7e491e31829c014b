"""Free-group words and Hall basic commutators.

Generator ids are dense 0-based integers internally. The text form uses the
1-based tokens ``x1, x2, ...`` with capitals for inverses, e.g. ``X1X2x1x2``
is generator 0 inverse, generator 1 inverse, generator 0, generator 1.

Commutators follow ``[a, b] = a^-1 b^-1 a b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

Letter = tuple[int, int]  # (generator id, nonzero exponent)


def reduce(letters: Iterable[Letter]) -> "FreeWord":
    """Freely reduce a raw letter sequence (merging powers, cancelling inverses)."""
    stack: list[list[int]] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return FreeWord(tuple((g, e) for g, e in stack))


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for i, (g, e) in enumerate(self.letters):
            if e == 0 or g < 0:
                raise ValueError(f"bad letter {(g, e)}")
            if i and self.letters[i - 1][0] == g:
                raise ValueError("FreeWord must be freely reduced; use reduce()")

    @classmethod
    def gen(cls, i: int, exp: int = 1) -> "FreeWord":
        return cls(((i, exp),)) if exp else cls()

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        text = text.replace(" ", "")
        if text in ("", "1", "e"):
            return cls()
        tokens = re.findall(r"([xX])(\d+)", text)
        if "".join(a + b for a, b in tokens) != text:
            raise ValueError(f"cannot parse word {text!r}; expected tokens x<i> / X<i>")
        letters = []
        for sym, idx in tokens:
            i = int(idx)
            if i < 1:
                raise ValueError("generator indices in text start at 1")
            letters.append((i - 1, 1 if sym == "x" else -1))
        return reduce(letters)

    def __str__(self) -> str:
        out = []
        for g, e in self.letters:
            out.append((("x" if e > 0 else "X") + str(g + 1)) * abs(e))
        return "".join(out)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return reduce(self.letters + other.letters)

    def __pow__(self, n: int) -> "FreeWord":
        base = self if n >= 0 else self.inverse()
        out = FreeWord()
        for _ in range(abs(n)):
            out = out * base
        return out

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def exponent_sum(self, gen: int) -> int:
        return sum(e for g, e in self.letters if g == gen)

    def relabel(self, perm: Sequence[int]) -> "FreeWord":
        return reduce((perm[g], e) for g, e in self.letters)

    def syllables(self) -> list[Letter]:
        """Letters expanded to unit exponents."""
        out = []
        for g, e in self.letters:
            out.extend([(g, 1 if e > 0 else -1)] * abs(e))
        return out


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    return reduce(a.inverse().letters + b.inverse().letters + a.letters + b.letters)


def conjugate(w: FreeWord, g: FreeWord) -> FreeWord:
    """g^-1 w g."""
    return g.inverse() * w * g


@dataclass(frozen=True)
class BasicCommutator:
    """A Hall basic commutator: a leaf (generator) or a bracket of two basic ones.

    ``ordinal`` is the position in the fixed total order of ``hall_basis``.
    """

    generator: int | None
    left: "BasicCommutator | None" = field(default=None, repr=False)
    right: "BasicCommutator | None" = field(default=None, repr=False)
    weight: int = 1
    ordinal: int = 0

    @property
    def is_leaf(self) -> bool:
        return self.generator is not None

    def __str__(self) -> str:
        if self.is_leaf:
            return f"x{self.generator + 1}"
        return f"[{self.left},{self.right}]"

    def expand(self) -> FreeWord:
        return expand(self)


def hall_basis(k: int, max_weight: int) -> list[BasicCommutator]:
    """Basic commutators of weight <= max_weight on k generators, in order.

    Weight 1 is x1 < ... < xk. A bracket [a, b] is basic when a, b are basic,
    a < b, weight(a) + weight(b) is the target weight, and a >= c whenever
    b = [c, d]. Inside one weight the order is lexicographic on
    (weight(a), ordinal(a), ordinal(b)).
    """
    if k < 1 or max_weight < 1:
        raise ValueError("hall_basis needs k >= 1 and max_weight >= 1")
    return list(_hall_basis(k, max_weight))


@lru_cache(maxsize=None)
def _hall_basis(k: int, max_weight: int) -> tuple[BasicCommutator, ...]:
    basis = [BasicCommutator(generator=i, weight=1, ordinal=i) for i in range(k)]
    by_weight = {1: list(basis)}
    for w in range(2, max_weight + 1):
        cands = []
        for wa in range(1, w):
            wb = w - wa
            for a in by_weight[wa]:
                for b in by_weight[wb]:
                    if not a.ordinal < b.ordinal:
                        continue
                    if not b.is_leaf and a.ordinal < b.left.ordinal:
                        continue
                    cands.append((wa, a.ordinal, b.ordinal, a, b))
        cands.sort(key=lambda c: c[:3])
        start = len(basis)
        layer = [BasicCommutator(None, a, b, w, start + i) for i, (*_, a, b) in enumerate(cands)]
        by_weight[w] = layer
        basis.extend(layer)
    return tuple(basis)


def expand(c: BasicCommutator) -> FreeWord:
    if c.is_leaf:
        return FreeWord.gen(c.generator)
    return commutator(expand(c.left), expand(c.right))
