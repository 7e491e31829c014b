"""Labelled Milnor classes over coset labels and their coinvariants.

A labelled class is an element x of D_n(k) together with k distinct coset
labels: generator x_i stands for the meridian attached to label i. Classes
are compared in the coinvariants of the group action on labels.

Normal forms work block by block. The content blocks of x are independent
summands, each supported on a subset S of the labels, so each block is
restricted to S and its label set is moved to a canonical representative
of its orbit:

* trace > 2: labels are sorted by the invariant order of an order witness,
  the least label is translated to the origin and a power of A fixes the
  scale <h_max - h_min, u> into [1, lambda). The action on label sets of size
  at least 2 is free and order preserving, so no signs arise.
* A of finite order: the lexicographically least anchored image over the
  finite set of powers is used, and the block is reduced modulo the relations
  g.y - y coming from the (finite) stabilizer of the canonical label set.

Anything else is reported as UNRESOLVED rather than guessed.
"""
from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import intmat
from .bundle import (ONE, Monodromy, OrderWitness, SolGroupElement, bundle_check, check_condition1,
                     check_condition2, check_condition3, coset_action, sol_inverse, sol_mul)
from .lie import (_bracketing, _lyndon, lyndon_coordinates, milnor_module, poly_relabel,
                  relabel_action, relabel_orbit_count, word_content)

Vec = tuple[int, int]


@dataclass(frozen=True)
class LabeledMilnorClass:
    n: int
    labels: tuple[Vec, ...]
    element: tuple[int, ...]

    def __post_init__(self):
        labels = tuple((int(a), int(b)) for a, b in self.labels)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "element", tuple(int(x) for x in self.element))
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if len(labels) < 2:
            raise ValueError("a labelled class needs at least two labels")
        if len(set(labels)) != len(labels):
            raise ValueError(f"labels are not distinct: {labels}")
        r = self.module.rank
        if len(self.element) != r:
            raise ValueError(f"D_{self.n}({len(labels)}) has rank {r}, element has {len(self.element)} coordinates")

    @property
    def k(self) -> int:
        return len(self.labels)

    @property
    def module(self):
        return milnor_module(len(self.labels), self.n)

    def is_zero(self) -> bool:
        return not any(self.element)

    def act(self, A: Monodromy, g: SolGroupElement) -> "LabeledMilnorClass":
        """Left translate every label; the element is untouched."""
        return LabeledMilnorClass(self.n, tuple(coset_action(A, g, v) for v in self.labels), self.element)

    def permute(self, perm: Sequence[int]) -> "LabeledMilnorClass":
        """Same class with label i moved to position perm[i]."""
        labels = [None] * self.k
        for i, p in enumerate(perm):
            labels[p] = self.labels[i]
        return LabeledMilnorClass(self.n, tuple(labels),
                                  tuple(relabel_action(perm, self.module, self.element)))

    def to_json(self) -> dict:
        return {"n": self.n, "labels": [list(v) for v in self.labels], "element": list(self.element)}

    @classmethod
    def from_json(cls, data: dict) -> "LabeledMilnorClass":
        return cls(int(data["n"]), tuple(tuple(v) for v in data["labels"]), tuple(data["element"]))

    @classmethod
    def load(cls, path: str | Path) -> "LabeledMilnorClass":
        return cls.from_json(json.loads(Path(path).read_text()))


def triple_linking_class(labels: Sequence[Vec], coefficient: int = 1) -> LabeledMilnorClass:
    """coefficient times the generator of D_2(3) placed on three labels."""
    return LabeledMilnorClass(2, tuple(labels), (coefficient,))


# --- restriction of content blocks ---------------------------------------------

@functools.lru_cache(maxsize=None)
def _transported_word(k: int, n: int, j: int, mapping: tuple[int, ...], s: int) -> tuple[tuple[int, int], ...]:
    poly = poly_relabel(dict(_bracketing(_lyndon(k, n)[j])), mapping)
    return tuple((jj, c) for jj, c in enumerate(lyndon_coordinates(s, n, poly)) if c)


def _transport(k: int, n: int, entries: dict[int, int], mapping: tuple[int, ...], s: int) -> list[int]:
    """Move ambient entries of Z^k (x) L_n(k) to Z^s (x) L_n(s) along mapping."""
    N, Ns = len(_lyndon(k, n)), len(_lyndon(s, n))
    out = [0] * (s * Ns)
    for idx, c in entries.items():
        i, j = divmod(idx, N)
        base = mapping[i] * Ns
        for jj, cj in _transported_word(k, n, j, mapping, s):
            out[base + jj] += c * cj
    return out


def content_blocks(c: LabeledMilnorClass) -> dict[tuple[int, ...], dict[int, int]]:
    """Nonzero ambient entries of the element grouped by multidegree."""
    mod = c.module
    amb = mod.to_ambient(c.element)
    N = len(mod.words)
    out: dict[tuple[int, ...], dict[int, int]] = {}
    for idx, x in enumerate(amb):
        if x:
            i, j = divmod(idx, N)
            alpha = list(word_content(mod.words[j], mod.k))
            alpha[i] += 1
            out.setdefault(tuple(alpha), {})[idx] = x
    return out


def _full_support_rows(s: int, n: int) -> list[int]:
    return [r for r, a in enumerate(milnor_module(s, n).row_content) if all(a)]


# --- canonical label sets ------------------------------------------------------

def _canonical_free(labels: Sequence[Vec], A: Monodromy,
                    w: OrderWitness) -> tuple[tuple[Vec, ...], SolGroupElement]:
    """Orbit representative of a label set (size >= 2) for trace > 2, in increasing order,
    with the group element carrying the set onto it."""
    ordered = w.sort(labels)
    lo, hi = ordered[0], ordered[-1]
    shifted = [(v[0] - lo[0], v[1] - lo[1]) for v in ordered]
    s = w.pairing((hi[0] - lo[0], hi[1] - lo[1]))
    lam, lam_inv = w.lam, w.lam.conjugate()  # lambda * conjugate = det = 1
    m = 0
    while s >= lam:
        s, m = s * lam_inv, m - 1
    while s < 1:
        s, m = s * lam, m + 1
    P = A.power(m)
    base = P.apply(lo)
    return tuple(P.apply(v) for v in shifted), SolGroupElement((-base[0], -base[1]), m)


def matrix_order(A: Monodromy, limit: int = 12) -> int | None:
    """Order of A in SL(2,Z) if finite (elliptic orders divide 4 or 6)."""
    P = A
    for j in range(1, limit + 1):
        if (P.a, P.b, P.c, P.d) == (1, 0, 0, 1):
            return j
        P = P @ A
    return None


def _canonical_finite(labels: Sequence[Vec], A: Monodromy,
                      period: int) -> tuple[tuple[Vec, ...], SolGroupElement]:
    """Lexicographically least image with least label at the origin, over all powers."""
    best = None
    for m in range(period):
        P = A.power(m)
        img = sorted(P.apply(v) for v in labels)
        lo = img[0]
        cand = tuple((v[0] - lo[0], v[1] - lo[1]) for v in img)
        if best is None or cand < best[0]:
            best = (cand, SolGroupElement((-lo[0], -lo[1]), m))
    return best


# --- stabilizers -------------------------------------------------------------------

@dataclass(frozen=True)
class StabilizerResult:
    kind: str  # TRIVIAL_CERTIFIED | TRIVIAL_UP_TO_BOUNDS | NONTRIVIAL
    elements: tuple[SolGroupElement, ...]
    bounds: tuple[int, int]
    reason: str = ""

    def to_json(self) -> dict:
        return {"status": self.kind, "elements": [g.to_json() for g in self.elements],
                "bounds": {"m": self.bounds[0], "translation": self.bounds[1]}, "reason": self.reason}


DEFAULT_BOUNDS = (12, 200)


def stabilizer_search(labels: Sequence[Vec], A: Monodromy,
                      bounds: tuple[int, int] = DEFAULT_BOUNDS) -> StabilizerResult:
    """Group elements within bounds mapping the label set onto itself."""
    m_range, t_range = bounds
    if m_range < 0 or t_range < 0:
        raise ValueError(f"bounds must be nonnegative, got {bounds}")
    labels = [tuple(v) for v in labels]
    if not labels:
        raise ValueError("need at least one label")
    if len(set(labels)) != len(labels):
        raise ValueError("labels are not distinct")
    if len(labels) >= 2 and A.trace > 2 and check_condition1(A).holds and check_condition2(A).holds:
        return StabilizerResult("TRIVIAL_CERTIFIED", (ONE,), bounds,
                                "invariant order: an order-preserving bijection of a finite set is the "
                                "identity, and no nonzero power of A fixes a nonzero difference")
    target = set(labels)
    found = []
    for m in sorted(range(-m_range, m_range + 1), key=lambda x: (abs(x), -x)):
        P = A.power(m)
        first = P.apply(labels[0])
        for d in labels:
            v = (d[0] - first[0], d[1] - first[1])
            if max(abs(v[0]), abs(v[1])) > t_range:
                continue
            g = SolGroupElement(v, m)
            if {coset_action(A, g, x) for x in labels} == target:
                found.append(g)
    kind = "NONTRIVIAL" if any(g != ONE for g in found) else "TRIVIAL_UP_TO_BOUNDS"
    return StabilizerResult(kind, tuple(found), bounds)


def _exact_stabilizer(canon: Sequence[Vec], A: Monodromy, period: int) -> list[SolGroupElement]:
    target = set(canon)
    out = []
    for m in range(period):
        P = A.power(m)
        first = P.apply(canon[0])
        for d in canon:
            g = SolGroupElement((d[0] - first[0], d[1] - first[1]), m)
            if {coset_action(A, g, x) for x in canon} == target:
                out.append(g)
    return out


def _label_permutation(A: Monodromy, g: SolGroupElement, labels: Sequence[Vec]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(labels)}
    return tuple(pos[coset_action(A, g, v)] for v in labels)


# --- normal forms ----------------------------------------------------------------

@dataclass(frozen=True)
class Torsion:
    kind: str  # FREE | ZERO | ORDER_DIVIDES | UNRESOLVED
    order: int | None = None
    witness: SolGroupElement | None = None  # acts by -1 on the canonical term
    witness_on_input: SolGroupElement | None = None  # the same element conjugated to the input labels

    def __str__(self):
        return f"ORDER_DIVIDES({self.order})" if self.kind == "ORDER_DIVIDES" else self.kind

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.order is not None:
            out["order"] = self.order
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.witness_on_input is not None:
            out["witness_on_input"] = self.witness_on_input.to_json()
        return out


@dataclass(frozen=True)
class CoinvariantClass:
    """Normal form: a sum of classes on canonical label sets, one per orbit of supports."""

    n: int
    terms: tuple[LabeledMilnorClass, ...]
    torsion: Torsion
    regime: str  # FREE_ACTION | FINITE_ORDER | UNRESOLVED
    level: str = "C_BAR"
    term_torsion: tuple[Torsion, ...] = field(default=())

    @property
    def key(self) -> tuple:
        return (self.n, tuple((t.labels, t.element) for t in self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict:
        return {"n": self.n, "regime": self.regime, "level": self.level,
                "terms": [t.to_json() for t in self.terms],
                "torsion": self.torsion.to_json(),
                "term_torsion": [t.to_json() for t in self.term_torsion]}


@functools.lru_cache(maxsize=256)
def _conditions_hold(A: Monodromy) -> bool:
    return bundle_check(A).all_conditions


def _regime(A: Monodromy) -> tuple[str, int | None]:
    if A.trace > 2:
        return "FREE_ACTION", None
    period = matrix_order(A)
    if period is not None:
        return "FINITE_ORDER", period
    return "UNRESOLVED", None


def _vector_order(x: Sequence[int], lattice: list[list[int]]) -> int | None:
    """Order of x modulo a lattice (None if infinite)."""
    if not lattice:
        return None
    if intmat.rank(lattice + [list(x)]) > len(lattice):
        return None
    d = 1
    while True:
        if not any(intmat.reduce_mod_lattice([d * c for c in x], lattice)):
            return d
        d += 1


def orbit_normal_form(c: LabeledMilnorClass, A: Monodromy, witness: OrderWitness | None = None) -> CoinvariantClass:
    regime, period = _regime(A)
    if regime == "FREE_ACTION" and witness is None:
        from .bundle import order_witness
        witness = order_witness(A)
    if regime == "UNRESOLVED":
        return CoinvariantClass(c.n, (), Torsion("UNRESOLVED"), "UNRESOLVED", "UNRESOLVED")
    k, n = c.k, c.n
    sums: dict[tuple[Vec, ...], list[int]] = {}
    movers: dict[tuple[Vec, ...], SolGroupElement] = {}
    for alpha, entries in content_blocks(c).items():
        support = [i for i in range(k) if alpha[i]]
        sub = [c.labels[i] for i in support]
        if regime == "FREE_ACTION":
            canon, g = _canonical_free(sub, A, witness)
        else:
            canon, g = _canonical_finite(sub, A, period)
        pos = {v: p for p, v in enumerate(canon)}
        mapping = [0] * k
        for i in support:
            mapping[i] = pos[coset_action(A, g, c.labels[i])]
        s = len(canon)
        amb = _transport(k, n, entries, tuple(mapping), s)
        coords = milnor_module(s, n).from_ambient(amb)
        movers.setdefault(canon, g)
        acc = sums.setdefault(canon, [0] * len(coords))
        for r, x in enumerate(coords):
            acc[r] += x

    terms, tors = [], []
    for canon in sorted(sums):
        x = sums[canon]
        t = Torsion("FREE")
        if regime == "FINITE_ORDER":
            x, t = _reduce_by_stabilizer(canon, x, A, period, n)
            if t.witness is not None:
                g = movers[canon]
                back = sol_mul(A, sol_inverse(A, g), sol_mul(A, t.witness, g))
                t = Torsion(t.kind, t.order, t.witness, back)
        if any(x):
            terms.append(LabeledMilnorClass(n, canon, tuple(x)))
            tors.append(t)
    if not terms:
        total = Torsion("ZERO")
    elif all(t.kind == "ORDER_DIVIDES" for t in tors):
        order = math.lcm(*(t.order for t in tors))
        single = tors[0] if len(tors) == 1 else Torsion("ORDER_DIVIDES")
        total = Torsion("ORDER_DIVIDES", order, single.witness, single.witness_on_input)
    else:
        total = Torsion("FREE")
    level = "C_BAR" if regime == "FREE_ACTION" and _conditions_hold(A) else "COINVARIANT-LEVEL"
    return CoinvariantClass(n, tuple(terms), total, regime, level, tuple(tors))


def _reduce_by_stabilizer(canon, x, A, period, n):
    mod = milnor_module(len(canon), n)
    stab = [g for g in _exact_stabilizer(canon, A, period) if g != ONE]
    rels = []
    for g in stab:
        perm = _label_permutation(A, g, canon)
        for j in _full_support_rows(len(canon), n):
            e = [int(i == j) for i in range(mod.rank)]
            img = relabel_action(perm, mod, e)
            rel = [a - b for a, b in zip(img, e)]
            if any(rel):
                rels.append(rel)
    lattice = intmat.hermite_rows(rels, mod.rank) if rels else []
    y = intmat.reduce_mod_lattice(x, lattice) if lattice else list(x)
    order = _vector_order(x, lattice)
    if order is None:
        return y, Torsion("FREE")
    witness = None
    for g in stab:
        img = relabel_action(_label_permutation(A, g, canon), mod, x)
        if all(a == -b for a, b in zip(img, x)):
            witness = g
            break
    return y, Torsion("ORDER_DIVIDES", order, witness)


# --- reports ---------------------------------------------------------------------

@dataclass(frozen=True)
class RankBound:
    n: int
    conditions: dict
    bound: int | None
    flag: str  # EXACT | LOWER_BOUND | NOT_APPLICABLE
    failing: str | None = None

    def to_json(self) -> dict:
        return {"n": self.n, "conditions": self.conditions,
                "bound": self.bound if self.bound is not None else "NOT_APPLICABLE",
                "orbit_count_flag": self.flag, "failing": self.failing}


def cbar_rank_lower_bound(A: Monodromy, n: int, j_max: int = 50) -> RankBound:
    """Lower bound M(n+1) for the free rank of the quotient at level n, when it applies."""
    if n < 2:
        raise ValueError("n must be at least 2")
    c1, c2, c3 = check_condition1(A), check_condition2(A, j_max), check_condition3(A)
    conditions = {"cond1": {"holds": c1.holds, "h1": c1.h1},
                  "cond2": {"holds": c2.holds, "status": str(c2)},
                  "cond3": {"holds": c3.holds, "reason": c3.reason,
                            "witness": c3.witness.to_json() if c3.witness else None}}
    failing = None
    if not c1.holds:
        failing = "cond1"
    elif not c2.holds:
        failing = f"cond2 fails at j = {c2.j}"
    elif c3.holds is not True:
        failing = "cond3 not certified"
    if failing:
        return RankBound(n, conditions, None, "NOT_APPLICABLE", failing)
    oc = relabel_orbit_count(n + 1)
    return RankBound(n, conditions, oc.count, oc.flag)


def distinguish(c1: LabeledMilnorClass, c2: LabeledMilnorClass, A: Monodromy,
                witness: OrderWitness | None = None) -> str:
    """DISTINCT, EQUAL_IN_COINVARIANTS or UNRESOLVED."""
    f1, f2 = orbit_normal_form(c1, A, witness), orbit_normal_form(c2, A, witness)
    if "UNRESOLVED" in (f1.regime, f2.regime):
        return "UNRESOLVED"
    if c1.n != c2.n:
        if f1.is_zero() and f2.is_zero():
            return "EQUAL_IN_COINVARIANTS"
        return "DISTINCT"
    if f1.key == f2.key:
        return "EQUAL_IN_COINVARIANTS"
    # coinvariants surject onto the quotient; distinctness transfers only in the free regime
    return "DISTINCT" if f1.regime == "FREE_ACTION" else "UNRESOLVED"


TORSION_LABELS: tuple[Vec, ...] = ((0, 0), (1, 0), (-1, 0))


def torsion_example(A: Monodromy) -> dict:
    c = triple_linking_class(TORSION_LABELS)
    nf = orbit_normal_form(c, A)
    stab = stabilizer_search(TORSION_LABELS, A, (4, 4))
    return {"class": c.to_json(), "normal_form": nf.to_json(), "stabilizer": stab.to_json()}


def family_size_report(A: Monodromy, n_max: int, j_max: int = 50) -> dict:
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    rows = [cbar_rank_lower_bound(A, n, j_max) for n in range(2, n_max + 1)]
    every = all(r.bound is not None and r.bound >= 1 for r in rows)
    out = {"matrix": A.rows(), "rows": [r.to_json() for r in rows],
           "bounds_at_least_one_for_every_tested_n": every}
    if every:
        out["remark"] = ("every tested level contributes a free summand; the number of relabelling "
                         "orbits grows at least like n^(n-1)/n!")
    if any(r.bound is None for r in rows) and matrix_order(A) is not None:
        out["torsion_example"] = torsion_example(A)
    return out
