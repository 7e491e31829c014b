"""Links in S^3: braid closures, Wirtinger presentations, Milnor invariants.

Sign conventions (used by every +-1 expectation in the tests):

* Braid letter ``s<i>`` (sigma_i) is a crossing of sign +1 in which the strand
  at position i passes over the strand at position i+1; ``S<i>`` is the
  mirror crossing, sign -1, right strand over.
* A crossing with over-arc c, sign e, under-strand entering on arc a and
  leaving on arc b carries the Wirtinger relation  b = c^-e a c^e.
* The longitude of a component is the product, in traversal order from the
  start of its first arc, of c^e over its undercrossings, followed by
  meridian^(-writhe) so that it is null-homologous.
* Commutators are [a, b] = a^-1 b^-1 a b (see ``freegroup``).

With these choices the linking number is the sum of signs of crossings where
component i passes under component j, and mu(1 2) of the closure of s1 s1 is +1.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

from .freegroup import FreeWord, reduce
from .magnus import AtLeast, Identity, TruncatedSeries, lcs_depth, letter_series, magnus_expand

MultiIndex = tuple[int, ...]  # 0-based component labels


# --- input types --------------------------------------------------------------

@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise ValueError(f"generator index {x} out of range for {self.strands} strands")

    @classmethod
    def parse(cls, text: str, strands: int | None = None) -> "BraidWord":
        tokens = text.split()
        letters = []
        for tok in tokens:
            mt = re.fullmatch(r"([sS])(\d+)", tok)
            if not mt:
                raise ValueError(f"bad braid token {tok!r}; expected s<i> or S<i>")
            i = int(mt.group(2))
            letters.append(i if mt.group(1) == "s" else -i)
        if strands is None:
            strands = max((abs(x) for x in letters), default=0) + 1
        return cls(strands, tuple(letters))

    def __str__(self) -> str:
        return " ".join(("s" if x > 0 else "S") + str(abs(x)) for x in self.letters)

    def permutation(self) -> list[int]:
        """perm[p] = bottom position reached by the strand starting at top position p."""
        pos = list(range(self.strands))  # pos[q] = top strand currently at position q
        for x in self.letters:
            i = abs(x) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        perm = [0] * self.strands
        for q, p in enumerate(pos):
            perm[p] = q
        return perm


@dataclass(frozen=True)
class Crossing:
    out: int
    inp: int
    over: int
    sign: int

    def to_json(self) -> dict:
        return {"out": self.out, "in": self.inp, "over": self.over, "sign": self.sign}


@dataclass(frozen=True)
class LinkPresentation:
    """Wirtinger data of an oriented, ordered link diagram.

    ``arcs[i]`` lists the arcs of component i in traversal order; its first
    arc carries the distinguished meridian x_{i+1}.
    """

    arcs: tuple[tuple[int, ...], ...]
    crossings: tuple[Crossing, ...]
    name: str = ""
    provenance: str = ""
    _under: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        comp_of = {}
        for i, comp in enumerate(self.arcs):
            if not comp:
                raise ValueError(f"component {i + 1} has no arcs")
            for a in comp:
                if a in comp_of:
                    raise ValueError(f"arc {a} listed twice")
                comp_of[a] = i
        by_in = {}
        for c in self.crossings:
            if c.sign not in (1, -1):
                raise ValueError(f"crossing sign must be +1 or -1, got {c.sign}")
            for a in (c.out, c.inp, c.over):
                if a not in comp_of:
                    raise ValueError(f"crossing refers to unknown arc {a}")
            if comp_of[c.out] != comp_of[c.inp]:
                raise ValueError("a crossing's in- and out-arcs must lie on one component")
            if c.inp in by_in:
                raise ValueError(f"arc {c.inp} ends at two undercrossings")
            by_in[c.inp] = c
        under = []
        for comp in self.arcs:
            r = len(comp)
            seq = []
            for j in range(r):
                a, b = comp[j], comp[(j + 1) % r]
                c = by_in.get(a)
                if c is None:
                    if r == 1:
                        continue
                    raise ValueError(f"inconsistent presentation: arc {a} has no defining relation")
                if c.out != b:
                    raise ValueError(f"arc {a} is followed by {c.out}, not {b}, in the crossing data")
                seq.append(c)
            under.append(tuple(seq))
        used = {c.inp for t in under for c in t}
        if used != set(by_in):
            raise ValueError("some crossings are not reached by traversing the components")
        object.__setattr__(self, "_under", tuple(under))

    @property
    def components(self) -> int:
        return len(self.arcs)

    def component_of(self) -> dict[int, int]:
        return {a: i for i, comp in enumerate(self.arcs) for a in comp}

    def undercrossings(self, i: int) -> tuple[Crossing, ...]:
        """Undercrossings of component i, in traversal order from the start of its first arc.

        The crossing closing the cycle (back onto the first arc) comes last.
        """
        return self._under[i]

    def writhe(self, i: int) -> int:
        comp = self.component_of()
        return sum(c.sign for c in self._under[i] if comp[c.over] == i)

    def linking_number(self, i: int, j: int) -> int:
        """Signed count of crossings where component i passes under component j."""
        comp = self.component_of()
        return sum(c.sign for c in self._under[i] if comp[c.over] == j)

    def permute_components(self, perm: Sequence[int]) -> "LinkPresentation":
        """Component i becomes component perm[i]."""
        new = [None] * self.components
        for i, p in enumerate(perm):
            new[p] = self.arcs[i]
        return LinkPresentation(tuple(new), self.crossings, self.name, self.provenance)

    def split_union_unknot(self) -> "LinkPresentation":
        """Adjoin a split unknotted component as the last component."""
        fresh = 1 + max(a for comp in self.arcs for a in comp)
        return LinkPresentation(self.arcs + ((fresh,),), self.crossings, self.name, self.provenance)

    def to_json(self) -> dict:
        out = {"components": self.components,
               "arcs": [list(c) for c in self.arcs],
               "crossings": [c.to_json() for c in self.crossings]}
        if self.name:
            out["name"] = self.name
        if self.provenance:
            out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json(cls, data: dict) -> "LinkPresentation":
        arcs = tuple(tuple(int(a) for a in comp) for comp in data["arcs"])
        if "components" in data and int(data["components"]) != len(arcs):
            raise ValueError("'components' disagrees with the number of arc lists")
        crossings = tuple(Crossing(int(c["out"]), int(c["in"]), int(c["over"]), int(c["sign"]))
                          for c in data.get("crossings", []))
        return cls(arcs, crossings, data.get("name", ""), data.get("provenance", ""))

    @classmethod
    def load(cls, path: str | Path) -> "LinkPresentation":
        return cls.from_json(json.loads(Path(path).read_text()))


def unlink(m: int) -> LinkPresentation:
    return LinkPresentation(tuple((i,) for i in range(m)), (), name=f"unlink({m})",
                            provenance="m disjoint round circles, no crossings")


def braid_to_wirtinger(b: BraidWord, name: str = "") -> LinkPresentation:
    """Wirtinger presentation of the closure of a braid.

    Components are the cycles of the strand permutation, ordered by their least
    (1-based top) strand position; each starts on the arc at the top of that strand.
    """
    s = b.strands
    arc_at = list(range(s))
    strand_at = list(range(s))
    strand_arcs = [[p] for p in range(s)]
    raw = []
    nxt = s
    for x in b.letters:
        i = abs(x) - 1
        left, right = arc_at[i], arc_at[i + 1]
        new = nxt
        nxt += 1
        if x > 0:
            raw.append((new, right, left, 1))
            strand_arcs[strand_at[i + 1]].append(new)
            arc_at[i], arc_at[i + 1] = new, left
        else:
            raw.append((new, left, right, -1))
            strand_arcs[strand_at[i]].append(new)
            arc_at[i], arc_at[i + 1] = right, new
        strand_at[i], strand_at[i + 1] = strand_at[i + 1], strand_at[i]

    parent = list(range(nxt))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in range(s):
        ra, rb = find(arc_at[p]), find(p)
        if ra != rb:
            parent[ra] = rb

    perm = b.permutation()
    seen = [False] * s
    comps = []
    for p0 in range(s):
        if seen[p0]:
            continue
        seq = []
        p = p0
        while not seen[p]:
            seen[p] = True
            for a in strand_arcs[p]:
                a = find(a)
                if not seq or seq[-1] != a:
                    seq.append(a)
            p = perm[p]
        if len(seq) > 1 and seq[-1] == seq[0]:
            seq.pop()
        comps.append(seq)
    relabel = {}
    for comp in comps:
        for a in comp:
            relabel[a] = len(relabel)
    arcs = tuple(tuple(relabel[a] for a in comp) for comp in comps)
    crossings = tuple(Crossing(relabel[find(o)], relabel[find(i)], relabel[find(c)], e)
                      for (o, i, c, e) in raw)
    return LinkPresentation(arcs, crossings, name=name or f"closure of {b or 'empty braid'}",
                            provenance=f"braid closure: {b.strands} strands, word '{b}'")


def pure_braid_generator(i: int, j: int) -> list[int]:
    """A_{ij} (1-based, i < j): strand j encircles strand i."""
    if not 1 <= i < j:
        raise ValueError("need 1 <= i < j")
    up = list(range(j - 1, i, -1))
    return up + [i, i] + [-x for x in reversed(up)]


def milnor_braid(w: FreeWord, m: int | None = None) -> BraidWord:
    """Pure braid on m+1 strands whose last strand follows w (x_i -> A_{i,m+1})."""
    m = (max(w.generators()) + 1) if m is None else m
    if m < 1 or any(g >= m for g in w.generators()):
        raise ValueError("word uses generators outside x1..xm")
    letters: list[int] = []
    for g, e in w.syllables():
        a = pure_braid_generator(g + 1, m + 1)
        letters.extend(a if e > 0 else [-x for x in reversed(a)])
    return BraidWord(m + 1, tuple(letters))


# --- longitudes ---------------------------------------------------------------

def _check_q(q: int) -> None:
    if q < 2:
        raise ValueError("truncation length q must be >= 2")


def chen_milnor_longitudes(p: LinkPresentation, q: int) -> list[FreeWord]:
    """Longitudes as words in the meridians x_1..x_m, correct modulo F_q."""
    _check_q(q)
    comp = p.component_of()
    approx = {a: FreeWord.gen(comp[a]) for a in comp}
    for _ in range(q - 1):
        new = {}
        for i, arcs in enumerate(p.arcs):
            x = FreeWord.gen(i)
            w = FreeWord()
            new[arcs[0]] = x
            for c in p.undercrossings(i):
                w = w * approx[c.over] ** c.sign
                if c.out != arcs[0]:
                    new[c.out] = w.inverse() * x * w
        approx = new
    out = []
    for i in range(p.components):
        w = FreeWord()
        for c in p.undercrossings(i):
            w = w * approx[c.over] ** c.sign
        out.append(w * FreeWord.gen(i, -p.writhe(i)))
    return out


def _series_power(s: TruncatedSeries, sinv: TruncatedSeries, e: int) -> TruncatedSeries:
    return s if e > 0 else sinv


def longitude_series(p: LinkPresentation, q: int) -> list[TruncatedSeries]:
    """Magnus expansions (cap q-1) of the Chen-Milnor longitudes modulo F_q.

    Same recursion as ``chen_milnor_longitudes`` carried out on truncated
    series, which avoids the exponential growth of the words.
    """
    _check_q(q)
    m, cap = p.components, q - 1
    comp = p.component_of()
    gens = [TruncatedSeries(m, cap, letter_series(i, 1, m, cap)) for i in range(m)]
    gens_inv = [TruncatedSeries(m, cap, letter_series(i, -1, m, cap)) for i in range(m)]
    one = TruncatedSeries.one(m, cap)
    ser = {a: gens[comp[a]] for a in comp}
    inv = {a: gens_inv[comp[a]] for a in comp}
    for _ in range(q - 1):
        nser, ninv = {}, {}
        for i, arcs in enumerate(p.arcs):
            w, winv = one, one
            nser[arcs[0]], ninv[arcs[0]] = gens[i], gens_inv[i]
            for c in p.undercrossings(i):
                if c.sign > 0:
                    w, winv = w * ser[c.over], inv[c.over] * winv
                else:
                    w, winv = w * inv[c.over], ser[c.over] * winv
                if c.out != arcs[0]:
                    nser[c.out] = winv * gens[i] * w
                    ninv[c.out] = winv * gens_inv[i] * w
        ser, inv = nser, ninv
    out = []
    for i in range(p.components):
        w = one
        for c in p.undercrossings(i):
            w = w * (ser[c.over] if c.sign > 0 else inv[c.over])
        corr = TruncatedSeries(m, cap, letter_series(i, -p.writhe(i), m, cap))
        out.append(w * corr)
    return out


# --- invariants -----------------------------------------------------------------

@dataclass(frozen=True)
class MilnorTable:
    """mu-bar(I) for every multi-index I of one length, as (residue, Delta)."""

    components: int
    length: int
    entries: dict[MultiIndex, tuple[int, int]]
    undetermined: frozenset = frozenset()

    def entry(self, index: Sequence[int] | str) -> tuple[int, int]:
        """(mu, Delta); sequences are 0-based, strings such as "123" 1-based."""
        return self.entries[_parse_index(index)]

    def mu(self, index: Sequence[int] | str) -> int:
        return self.entry(index)[0]

    def nonzero(self) -> dict[MultiIndex, tuple[int, int]]:
        return {i: v for i, v in self.entries.items() if v[0]}

    def relabel(self, perm: Sequence[int]) -> "MilnorTable":
        return MilnorTable(self.components, self.length,
                           {tuple(perm[i] for i in I): v for I, v in self.entries.items()},
                           frozenset(tuple(perm[i] for i in I) for I in self.undetermined))

    def agrees(self, other: "MilnorTable") -> bool:
        """Equal on every entry that both tables determine."""
        if (self.components, self.length) != (other.components, other.length):
            return False
        if set(self.entries) != set(other.entries):
            return False
        skip = self.undetermined | other.undetermined
        return all(v == other.entries[I] for I, v in self.entries.items() if I not in skip)

    def to_json(self) -> dict:
        out = {"length": self.length,
               "entries": {" ".join(str(i + 1) for i in I): {"mu": mu, "delta": d}
                           for I, (mu, d) in sorted(self.entries.items())
                           if I not in self.undetermined}}
        if self.undetermined:
            out["undetermined"] = [" ".join(str(i + 1) for i in I) for I in sorted(self.undetermined)]
        return out


def all_indices(m: int, r: int) -> list[MultiIndex]:
    return list(itertools.product(range(m), repeat=r))


def _proper_cyclic_subindices(index: MultiIndex) -> set[MultiIndex]:
    out = set()
    r = len(index)
    for size in range(2, r):
        for pos in itertools.combinations(range(r), size):
            sub = tuple(index[t] for t in pos)
            for s in range(size):
                out.add(sub[s:] + sub[:s])
    return out


class MilnorInvariants:
    """All invariants of length <= max_length of one presentation."""

    def __init__(self, p: LinkPresentation, max_length: int):
        _check_q(max_length)
        self.presentation = p
        self.max_length = max_length
        self.series = longitude_series(p, max_length)
        self._delta: dict[MultiIndex, int] = {}

    def raw(self, index: Sequence[int]) -> int:
        """Magnus coefficient of X_{i_1}...X_{i_{r-1}} in the longitude of i_r."""
        index = tuple(index)
        if not 2 <= len(index) <= self.max_length:
            raise ValueError(f"multi-index length must be in 2..{self.max_length}")
        return self.series[index[-1]][index[:-1]]

    def delta(self, index: Sequence[int]) -> int:
        index = tuple(index)
        if index not in self._delta:
            g = 0
            for sub in _proper_cyclic_subindices(index):
                g = gcd(g, self.raw(sub))
                if g == 1:
                    break
            self._delta[index] = g
        return self._delta[index]

    def mu_bar(self, index: Sequence[int] | str) -> tuple[int, int]:
        """(mu, Delta); sequences are 0-based, strings such as "123" 1-based."""
        index = _parse_index(index)
        m = self.presentation.components
        if len(index) < 2 or any(not 0 <= i < m for i in index):
            raise ValueError(f"invalid multi-index {index} for a {m}-component link")
        mu, d = self.raw(index), self.delta(index)
        return (mu % d if d else mu), d

    def table(self, length: int) -> MilnorTable:
        m = self.presentation.components
        return MilnorTable(m, length, {I: self.mu_bar(I) for I in all_indices(m, length)})


def _parse_index(index: Sequence[int] | str) -> MultiIndex:
    """Accept 1-based labels as a string '1 2 3' / '123' or a sequence of ints."""
    if isinstance(index, str):
        parts = index.split() if " " in index.strip() else list(index.strip())
        return tuple(int(x) - 1 for x in parts)
    return tuple(index)


def mu_bar(p: LinkPresentation, index: Sequence[int] | str) -> tuple[int, int]:
    """(mu, Delta) for one multi-index. Sequences are 0-based, strings 1-based."""
    I = _parse_index(index)
    if len(I) < 2:
        raise ValueError("multi-index must have length >= 2")
    return MilnorInvariants(p, len(I)).mu_bar(I)


@dataclass(frozen=True)
class FirstNonvanishing:
    length: int
    table: MilnorTable


@dataclass(frozen=True)
class AllVanish:
    max_length: int


def first_nonvanishing(p: LinkPresentation, q_max: int) -> FirstNonvanishing | AllVanish:
    if q_max < 2:
        raise ValueError("q_max must be >= 2")
    m = p.components
    if m < 1:
        return AllVanish(q_max)
    inv = MilnorInvariants(p, q_max)
    for r in range(2, q_max + 1):
        t = inv.table(r)
        if t.nonzero():
            assert all(d == 0 for _, d in t.entries.values()), "Delta must vanish at the first nonvanishing length"
            return FirstNonvanishing(r, t)
    return AllVanish(q_max)


def milnor_link_predict(w: FreeWord, m: int | None = None, max_cap: int = 10) -> MilnorTable:
    """First nonvanishing table of the (m+1)-component link whose last longitude is w.

    Components 1..m form an unlink. An index containing the last label once is
    rotated so that label comes last and read off the expansion of w; indices
    without the last label vanish. Indices repeating the last label depend on
    how the last component is embedded, not just on w: they are forced to 0
    when the Milnor module has no room in that content, and are listed as
    ``undetermined`` otherwise.
    """
    from .lie import milnor_module

    if w.is_identity():
        raise ValueError("w must be a nontrivial word")
    m = (max(w.generators()) + 1) if m is None else m
    depth = lcs_depth(w, m, max_cap)
    if isinstance(depth, (AtLeast, Identity)):
        raise ValueError(f"the depth of w exceeds the cap {max_cap}")
    series = magnus_expand(w, m, depth)
    last = m
    r = depth + 1
    free_contents = set(milnor_module(m + 1, depth).row_content) if depth >= 2 else set()
    entries = {}
    undetermined = set()
    for I in all_indices(m + 1, r):
        if I.count(last) != 1:
            entries[I] = (0, 0)
            content = tuple(I.count(j) for j in range(m + 1))
            if I.count(last) > 1 and content in free_contents:
                undetermined.add(I)
            continue
        s = I.index(last)
        J = I[s + 1:] + I[:s]
        entries[I] = (series[J], 0)
    return MilnorTable(m + 1, r, entries, frozenset(undetermined))


def align_tables(a: MilnorTable, b: MilnorTable) -> tuple[int, ...] | None:
    """A label permutation carrying table a onto table b (on determined entries)."""
    if a.components != b.components or a.length != b.length:
        return None
    for perm in itertools.permutations(range(a.components)):
        if a.relabel(perm).agrees(b):
            return perm
    return None


# --- fixtures -----------------------------------------------------------------

FIXTURE_DIR = Path(__file__).with_name("fixtures")


def load_fixture(name: str, directory: str | Path | None = None) -> LinkPresentation:
    base = Path(directory) if directory else FIXTURE_DIR
    path = base / (name if name.endswith(".json") else name + ".json")
    return LinkPresentation.load(path)


def list_fixtures(directory: str | Path | None = None) -> list[str]:
    base = Path(directory) if directory else FIXTURE_DIR
    return sorted(p.stem for p in base.glob("*.json"))
