"""Free Lie ring on Lyndon bases and the Milnor modules D_n(k).

D_n(k) is the kernel of the bracketing map

    Z^k (x) L_n(k) -> L_{n+1}(k),   x_i (x) l  |->  [x_i, l],

the lattice of possible degree-n longitude data of a k-component link with
vanishing invariants of length <= n. Its rank is k*N_n(k) - N_{n+1}(k).

Everything is multigraded by content (how often each letter occurs), and the
bracketing map preserves content, so kernels are computed block by block.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from . import intmat
from .witt import milnor_module_rank

Word = tuple[int, ...]
Poly = dict[Word, int]


# --- Lyndon words -----------------------------------------------------------

def is_lyndon(w: Sequence[int]) -> bool:
    w = tuple(w)
    return bool(w) and all(w < w[i:] for i in range(1, len(w)))


@lru_cache(maxsize=None)
def _lyndon(k: int, n: int) -> tuple[Word, ...]:
    # Duval's generation, restricted to length exactly n (emitted in lex order).
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            out.append(tuple(w))
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return tuple(out)


def lyndon_basis(k: int, w: int) -> list[Word]:
    if k < 1 or w < 1:
        raise ValueError("lyndon_basis needs k >= 1 and w >= 1")
    return list(_lyndon(k, w))


@lru_cache(maxsize=None)
def _lyndon_index(k: int, n: int) -> dict[Word, int]:
    return {w: i for i, w in enumerate(_lyndon(k, n))}


def standard_factorization(w: Word) -> tuple[Word, Word]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError(f"{w} has no standard factorization")


def word_str(w: Sequence[int]) -> str:
    if all(g < 9 for g in w):
        return "".join(str(g + 1) for g in w)
    return ".".join(str(g + 1) for g in w)


# --- associative polynomials ------------------------------------------------

def poly_bracket(p: Mapping[Word, int], q: Mapping[Word, int]) -> Poly:
    out: Poly = {}
    for a, ca in p.items():
        for b, cb in q.items():
            c = ca * cb
            out[a + b] = out.get(a + b, 0) + c
            out[b + a] = out.get(b + a, 0) - c
    return {w: c for w, c in out.items() if c}


def poly_relabel(p: Mapping[Word, int], perm: Sequence[int]) -> Poly:
    return {tuple(perm[g] for g in w): c for w, c in p.items()}


@lru_cache(maxsize=None)
def _bracketing(w: Word) -> tuple[tuple[Word, int], ...]:
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    return tuple(sorted(poly_bracket(dict(_bracketing(u)), dict(_bracketing(v))).items()))


def standard_bracketing(w: Sequence[int]) -> Poly:
    """Expansion in the free associative algebra of the bracketed Lyndon word."""
    w = tuple(w)
    if not is_lyndon(w):
        raise ValueError(f"{word_str(w)} is not a Lyndon word")
    return dict(_bracketing(w))


def lyndon_coordinates(k: int, degree: int, poly: Mapping[Word, int]) -> list[int]:
    """Coordinates of a homogeneous Lie polynomial in the Lyndon basis.

    The bracketing of a Lyndon word l is l plus lexicographically larger
    words, so peeling off the smallest surviving word is a triangular solve.
    Raises ValueError if ``poly`` is not a Lie polynomial.
    """
    index = _lyndon_index(k, degree)
    coords = [0] * len(index)
    rest = {w: c for w, c in poly.items() if c}
    for w in rest:
        if len(w) != degree or any(not 0 <= g < k for g in w):
            raise ValueError(f"monomial {w} does not belong to degree {degree} on {k} letters")
    while rest:
        w = min(rest)
        c = rest[w]
        if w not in index:
            raise ValueError(f"not a Lie element: leading word {word_str(w)} is not Lyndon")
        coords[index[w]] += c
        for u, cu in _bracketing(w):
            nc = rest.get(u, 0) - c * cu
            if nc:
                rest[u] = nc
            else:
                rest.pop(u, None)
    return coords


@dataclass(frozen=True)
class LieElement:
    k: int
    degree: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != len(_lyndon(self.k, self.degree)):
            raise ValueError("coordinate vector does not match the Lyndon basis size")

    @classmethod
    def zero(cls, k: int, degree: int) -> "LieElement":
        return cls(k, degree, (0,) * len(_lyndon(k, degree)))

    @classmethod
    def generator(cls, k: int, i: int) -> "LieElement":
        return cls(k, 1, tuple(int(j == i) for j in range(k)))

    @classmethod
    def from_polynomial(cls, k: int, degree: int, poly: Mapping[Word, int]) -> "LieElement":
        return cls(k, degree, tuple(lyndon_coordinates(k, degree, poly)))

    def to_polynomial(self) -> Poly:
        out: Poly = {}
        for w, c in zip(_lyndon(self.k, self.degree), self.coords):
            if c:
                for u, cu in _bracketing(w):
                    out[u] = out.get(u, 0) + c * cu
        return {u: c for u, c in out.items() if c}

    def terms(self) -> dict[str, int]:
        return {word_str(w): c for w, c in zip(_lyndon(self.k, self.degree), self.coords) if c}

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "LieElement") -> "LieElement":
        _check_same(self, other)
        return LieElement(self.k, self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "LieElement":
        return LieElement(self.k, self.degree, tuple(-a for a in self.coords))

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __rmul__(self, c: int) -> "LieElement":
        return LieElement(self.k, self.degree, tuple(c * a for a in self.coords))

    def relabel(self, perm: Sequence[int]) -> "LieElement":
        return LieElement.from_polynomial(self.k, self.degree, poly_relabel(self.to_polynomial(), perm))


def _check_same(a: LieElement, b: LieElement) -> None:
    if a.k != b.k:
        raise ValueError(f"alphabet mismatch: {a.k} vs {b.k}")
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")


def lie_bracket(a: LieElement, b: LieElement) -> LieElement:
    if a.k != b.k:
        raise ValueError(f"alphabet mismatch: {a.k} vs {b.k}")
    poly = poly_bracket(a.to_polynomial(), b.to_polynomial())
    return LieElement.from_polynomial(a.k, a.degree + b.degree, poly)


def basic_commutator_lie(c, k: int) -> LieElement:
    """Lie element of the bracket shape of a Hall basic commutator."""
    if c.is_leaf:
        return LieElement.generator(k, c.generator)
    return lie_bracket(basic_commutator_lie(c.left, k), basic_commutator_lie(c.right, k))


# --- Milnor modules ---------------------------------------------------------

def word_content(w: Sequence[int], k: int) -> tuple[int, ...]:
    out = [0] * k
    for g in w:
        out[g] += 1
    return tuple(out)


@dataclass(frozen=True)
class MilnorModule:
    """Canonical integer basis of D_n(k).

    Ambient coordinates are pairs (i, j), flattened to i*N_n(k) + j, standing
    for x_i (x) (bracketed Lyndon word number j of degree n). ``basis`` is the
    reduced Hermite basis of the kernel lattice (positive pivots).
    """

    k: int
    n: int
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]
    row_content: tuple[tuple[int, ...], ...]
    cokernel_torsion: tuple[int, ...] = ()
    cokernel_free_rank: int = 0
    canonical: str = field(default="hermite")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def words(self) -> tuple[Word, ...]:
        return _lyndon(self.k, self.n)

    @property
    def ambient_dim(self) -> int:
        return self.k * len(self.words)

    def ambient_label(self, idx: int) -> tuple[int, Word]:
        i, j = divmod(idx, len(self.words))
        return i, self.words[j]

    def to_ambient(self, coords: Sequence[int]) -> list[int]:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} kernel coordinates, got {len(coords)}")
        return intmat.vecmat(coords, self.basis, self.ambient_dim)

    def from_ambient(self, vec: Sequence[int]) -> list[int]:
        try:
            return intmat.coordinates(self.basis, self.pivots, vec)
        except ValueError:
            raise ValueError("vector is not an element of D_n(k)") from None

    def longitudes(self, coords: Sequence[int]) -> list[LieElement]:
        """Split an element into its k degree-n Lie components l_1, ..., l_k."""
        amb = self.to_ambient(coords)
        N = len(self.words)
        return [LieElement(self.k, self.n, tuple(amb[i * N:(i + 1) * N])) for i in range(self.k)]

    def describe(self, coords: Sequence[int]) -> dict[str, dict[str, int]]:
        return {f"x{i + 1}": l.terms() for i, l in enumerate(self.longitudes(coords)) if not l.is_zero()}


@lru_cache(maxsize=None)
def _bracket_image(k: int, i: int, w: Word) -> tuple[tuple[int, int], ...]:
    poly = poly_bracket({(i,): 1}, dict(_bracketing(w)))
    coords = lyndon_coordinates(k, len(w) + 1, poly)
    return tuple((j, c) for j, c in enumerate(coords) if c)


def bracketing_matrix(k: int, n: int) -> list[list[int]]:
    """Rows: x_i (x) l_j in ambient order; columns: Lyndon words of degree n+1."""
    words = _lyndon(k, n)
    ncols = len(_lyndon(k, n + 1))
    rows = []
    for i in range(k):
        for w in words:
            row = [0] * ncols
            for j, c in _bracket_image(k, i, w):
                row[j] = c
            rows.append(row)
    return rows


def milnor_module(k: int, n: int) -> MilnorModule:
    if n < 2:
        raise ValueError(f"Milnor modules are only defined for n >= 2 (got n={n})")
    if k < 2:
        raise ValueError(f"need k >= 2 components (got k={k})")
    return _milnor_module(k, n)


@lru_cache(maxsize=None)
def _milnor_module(k: int, n: int) -> MilnorModule:
    words = _lyndon(k, n)
    N = len(words)
    upper = _lyndon(k, n + 1)
    upper_content: dict[tuple[int, ...], list[int]] = {}
    for j, w in enumerate(upper):
        upper_content.setdefault(word_content(w, k), []).append(j)
    blocks: dict[tuple[int, ...], list[int]] = {}
    for i in range(k):
        for j, w in enumerate(words):
            c = list(word_content(w, k))
            c[i] += 1
            blocks.setdefault(tuple(c), []).append(i * N + j)

    rows: list[tuple[int, list[int], tuple[int, ...]]] = []
    torsion: list[int] = []
    free_rank = 0
    for alpha, dom in blocks.items():
        cols = upper_content.get(alpha, [])
        colpos = {j: p for p, j in enumerate(cols)}
        sub = []
        for idx in dom:
            i, j = divmod(idx, N)
            row = [0] * len(cols)
            for jj, c in _bracket_image(k, i, words[j]):
                row[colpos[jj]] = c
            sub.append(row)
        for kv in intmat.integer_kernel(sub, len(cols)):
            full = [0] * (k * N)
            for p, idx in enumerate(dom):
                full[idx] = kv[p]
            rows.append((next(t for t, x in enumerate(full) if x), full, alpha))
        if cols:
            diag = intmat.invariant_factors(sub)
            torsion.extend(d for d in diag if d > 1)
            free_rank += len(cols) - sum(1 for d in diag if d)
    rows.sort(key=lambda r: r[0])
    mod = MilnorModule(
        k=k, n=n,
        basis=tuple(tuple(r[1]) for r in rows),
        pivots=tuple(r[0] for r in rows),
        row_content=tuple(r[2] for r in rows),
        cokernel_torsion=tuple(sorted(torsion)),
        cokernel_free_rank=free_rank,
    )
    assert mod.rank == milnor_module_rank(k, n), (k, n, mod.rank)
    return mod


# --- relabeling -------------------------------------------------------------

def _check_perm(perm: Sequence[int], k: int) -> tuple[int, ...]:
    perm = tuple(perm)
    if sorted(perm) != list(range(k)):
        raise ValueError(f"{perm} is not a permutation of 0..{k - 1}")
    return perm


@lru_cache(maxsize=None)
def _relabeled_words(k: int, n: int, perm: tuple[int, ...]) -> tuple[tuple[tuple[int, int], ...], ...]:
    out = []
    for w in _lyndon(k, n):
        coords = lyndon_coordinates(k, n, poly_relabel(dict(_bracketing(w)), perm))
        out.append(tuple((j, c) for j, c in enumerate(coords) if c))
    return tuple(out)


def relabel_ambient(perm: Sequence[int], module: MilnorModule, vec: Sequence[int]) -> list[int]:
    """Apply x_i -> x_perm[i] to an ambient vector of Z^k (x) L_n."""
    perm = _check_perm(perm, module.k)
    images = _relabeled_words(module.k, module.n, perm)
    N = len(module.words)
    out = [0] * len(vec)
    for idx, c in enumerate(vec):
        if c:
            i, j = divmod(idx, N)
            base = perm[i] * N
            for jj, cj in images[j]:
                out[base + jj] += c * cj
    return out


def relabel_action(perm: Sequence[int], module: MilnorModule, v: Sequence[int]) -> list[int]:
    """Relabel generators by ``perm`` (0-based images) on kernel coordinates of D_n(k)."""
    amb = module.to_ambient(v)
    return module.from_ambient(relabel_ambient(perm, module, amb))


def permutation_generators(k: int) -> list[tuple[int, ...]]:
    """A transposition and a k-cycle; together they generate S_k."""
    if k == 1:
        return [(0,)]
    swap = (1, 0) + tuple(range(2, k))
    cycle = tuple((i + 1) % k for i in range(k))
    return [swap] if k == 2 else [swap, cycle]


def _sign_normal(v: Sequence[int]) -> tuple[int, ...]:
    first = next((x for x in v if x), 0)
    return tuple(v) if first >= 0 else tuple(-x for x in v)


def orbit(v: Sequence[int], module: MilnorModule, signed: bool = True) -> list[tuple[int, ...]]:
    """S_k-orbit of an element (kernel coordinates), modulo sign when ``signed``."""
    norm = _sign_normal if signed else tuple
    gens = permutation_generators(module.k)
    start = norm(v)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = norm(relabel_action(g, module, x))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


@dataclass(frozen=True)
class OrbitCount:
    k: int
    count: int
    flag: str  # "EXACT" or "LOWER_BOUND"
    rank: int
    orbit_sizes: tuple[int, ...]
    representatives: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.k - 1, "orbit_count": self.count, "flag": self.flag,
                "rank": self.rank, "orbit_sizes": list(self.orbit_sizes),
                "representatives": [list(r) for r in self.representatives]}


@lru_cache(maxsize=None)
def relabel_orbit_count(k: int) -> OrbitCount:
    """Operational M(k): signed orbits of S_k on a basis of D_{k-1}(k).

    If the canonical basis is permuted up to sign by S_k the orbit count is
    exact. Otherwise orbits of canonical basis vectors are accepted greedily
    while the union of accepted orbits stays linearly independent; that union
    is an S_k-stable independent signed set, and its orbit count is reported
    as a LOWER_BOUND.
    """
    if k < 3:
        raise ValueError(f"relabel_orbit_count needs k >= 3 (got {k})")
    mod = milnor_module(k, k - 1)
    r = mod.rank
    units = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    closed = True
    parent = list(range(r))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in permutation_generators(k):
        for i, e in enumerate(units):
            img = relabel_action(g, mod, e)
            nz = [j for j, x in enumerate(img) if x]
            if len(nz) != 1 or abs(img[nz[0]]) != 1:
                closed = False
                break
            parent[find(i)] = find(nz[0])
        if not closed:
            break
    if closed:
        groups: dict[int, list[int]] = {}
        for i in range(r):
            groups.setdefault(find(i), []).append(i)
        reps = tuple(units[g[0]] for g in sorted(groups.values()))
        sizes = tuple(len(g) for g in sorted(groups.values()))
        return OrbitCount(k, len(groups), "EXACT", r, sizes, reps)

    accepted: list[tuple[int, ...]] = []
    reps, sizes = [], []
    covered: set[tuple[int, ...]] = set()
    for e in units:
        if e in covered:
            continue
        orb = orbit(e, mod)
        covered.update(orb)
        trial = accepted + list(orb)
        if intmat.rank(trial) == len(trial):
            accepted = trial
            reps.append(e)
            sizes.append(len(orb))
    return OrbitCount(k, len(reps), "LOWER_BOUND", r, tuple(sizes), tuple(reps))
