"""Torus bundles over the circle and their fundamental groups Z^2 ⋊_A Z.

The group is modelled as pairs (v, m) with (v, m)(w, n) = (v + A^m w, m + n).
Left cosets of the fibre-direction generator t = ((0,0), 1) are labelled by
v in Z^2, and an element (w, m) sends the coset labelled v to w + A^m v.

For trace > 2 a left eigen-covector u of A with positive eigenvalue defines
a total order v < w  <=>  <w - v, u> > 0 which every group element preserves:
translations leave differences alone and A^m rescales pairings by lambda^m.
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .intmat import integer_kernel, invariant_factors
from .quadratic import QuadraticNumber, squarefree_decomposition

Vec = tuple[int, int]


@dataclass(frozen=True)
class Monodromy:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"monodromy {self.rows()} does not have determinant 1")

    @classmethod
    def parse(cls, text: str) -> "Monodromy":
        """Parse "a,b;c,d" (rows separated by ';')."""
        try:
            rows = [[int(x) for x in r.split(",")] for r in text.replace(" ", "").split(";")]
        except ValueError:
            raise ValueError(f"cannot parse matrix {text!r}; expected 'a,b;c,d'") from None
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError(f"matrix {text!r} is not 2x2")
        return cls(rows[0][0], rows[0][1], rows[1][0], rows[1][1])

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Monodromy":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self):
        return f"{self.a},{self.b};{self.c},{self.d}"

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: "Monodromy") -> "Monodromy":
        return Monodromy(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                         self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def inverse(self) -> "Monodromy":
        return Monodromy(self.d, -self.b, -self.c, self.a)

    def power(self, m: int) -> "Monodromy":
        return _power(self, m)

    def apply(self, v: Sequence[int]) -> Vec:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])


IDENTITY_MATRIX = Monodromy(1, 0, 0, 1)
MINUS_IDENTITY = Monodromy(-1, 0, 0, -1)


@functools.lru_cache(maxsize=4096)
def _power(A: Monodromy, m: int) -> Monodromy:
    if m < 0:
        return _power(A.inverse(), -m)
    out, base = IDENTITY_MATRIX, A
    while m:
        if m & 1:
            out = out @ base
        base = base @ base
        m >>= 1
    return out


@dataclass(frozen=True)
class SolGroupElement:
    v: Vec
    m: int

    def __post_init__(self):
        object.__setattr__(self, "v", (int(self.v[0]), int(self.v[1])))

    def to_json(self) -> dict:
        return {"v": list(self.v), "m": self.m}

    def __str__(self):
        return f"(({self.v[0]},{self.v[1]}),{self.m})"


ONE = SolGroupElement((0, 0), 0)


def sol_mul(A: Monodromy, g: SolGroupElement, h: SolGroupElement) -> SolGroupElement:
    w = A.power(g.m).apply(h.v)
    return SolGroupElement((g.v[0] + w[0], g.v[1] + w[1]), g.m + h.m)


def sol_inverse(A: Monodromy, g: SolGroupElement) -> SolGroupElement:
    w = A.power(-g.m).apply(g.v)
    return SolGroupElement((-w[0], -w[1]), -g.m)


def coset_action(A: Monodromy, g: SolGroupElement, v: Sequence[int]) -> Vec:
    """Left multiplication of g on the coset labelled v."""
    w = A.power(g.m).apply(v)
    return (g.v[0] + w[0], g.v[1] + w[1])


def random_element(rng: random.Random, m_range: int = 3, v_range: int = 20) -> SolGroupElement:
    return SolGroupElement((rng.randint(-v_range, v_range), rng.randint(-v_range, v_range)),
                           rng.randint(-m_range, m_range))


# --- conditions ------------------------------------------------------------

def check_anosov(A: Monodromy) -> bool:
    """No eigenvalue on the unit circle (so none is a root of unity)."""
    return abs(A.trace) > 2


def check_positive_real_eigs(A: Monodromy) -> bool:
    """Both eigenvalues real, positive and different from 1."""
    return A.trace > 2


@dataclass(frozen=True)
class Condition1:
    holds: bool
    h1: str
    torsion: tuple[int, ...]
    free_rank: int

    def to_json(self) -> dict:
        return {"holds": self.holds, "h1": self.h1, "torsion": list(self.torsion),
                "free_rank": self.free_rank}


def _group_string(torsion: Sequence[int], free_rank: int) -> str:
    parts = [f"Z/{t}" for t in torsion] + ["Z"] * free_rank
    return " ⊕ ".join(parts) if parts else "0"


def check_condition1(A: Monodromy) -> Condition1:
    """H_1 of the bundle and whether the class of t is primitive of infinite order.

    Generators (a, b, t); relations t v t^-1 = A v abelianise to (A - I) v = 0.
    """
    # rows are the images of the basis vectors under A - I
    rel = [[A.a - 1, A.c, 0], [A.b, A.d - 1, 0]]
    factors = invariant_factors(rel)
    nonzero = [f for f in factors if f]
    torsion = tuple(f for f in nonzero if f > 1)
    free_rank = 3 - len(nonzero)
    # Functionals vanishing on the relations span the dual of the free quotient;
    # t is primitive of infinite order iff their values on t have gcd 1.
    transpose = [list(col) for col in zip(*rel)]
    dual = integer_kernel(transpose, len(rel))
    g = 0
    for k in dual:
        g = gcd(g, k[2])
    return Condition1(g == 1, _group_string(torsion, free_rank), torsion, free_rank)


@dataclass(frozen=True)
class CentralizerStatus:
    kind: str  # PROVEN_ALL | HOLDS_UP_TO | FAILS_AT
    j: int | None = None

    @property
    def holds(self) -> bool:
        return self.kind != "FAILS_AT"

    def __str__(self):
        return self.kind if self.j is None else f"{self.kind}({self.j})"

    def to_json(self) -> dict:
        out = {"status": self.kind}
        if self.j is not None:
            out["j"] = self.j
        return out


def det_power_minus_identity(A: Monodromy, j: int) -> int:
    P = A.power(j)
    return (P.a - 1) * (P.d - 1) - P.b * P.c


def check_condition2(A: Monodromy, j_max: int = 50) -> CentralizerStatus:
    """Whether no nontrivial power of A fixes a nonzero vector."""
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    if check_anosov(A):
        return CentralizerStatus("PROVEN_ALL")
    for j in range(1, j_max + 1):
        if det_power_minus_identity(A, j) == 0:
            return CentralizerStatus("FAILS_AT", j)
    return CentralizerStatus("HOLDS_UP_TO", j_max)


# --- the order --------------------------------------------------------------

@dataclass(frozen=True)
class OrderWitness:
    monodromy: Monodromy
    D: int
    u: tuple[QuadraticNumber, QuadraticNumber]
    lam: QuadraticNumber

    def __post_init__(self):
        A = self.monodromy
        u0, u1 = self.u
        left = (u0 * A.a + u1 * A.c, u0 * A.b + u1 * A.d)
        if (left[0] - self.lam * u0).sign() or (left[1] - self.lam * u1).sign():
            raise ValueError("u is not a left eigenvector for lambda")
        if self.lam <= 1:
            raise ValueError("eigenvalue must exceed 1")

    def pairing(self, v: Sequence[int]) -> QuadraticNumber:
        return self.u[0] * v[0] + self.u[1] * v[1]

    def cmp(self, v: Sequence[int], w: Sequence[int]) -> int:
        """Sign of <v - w, u>: -1 when v precedes w."""
        return self.pairing((v[0] - w[0], v[1] - w[1])).sign()

    def sort(self, labels):
        return sorted(labels, key=functools.cmp_to_key(self.cmp))

    def to_json(self) -> dict:
        return {"D": self.D, "u": [x.to_json() for x in self.u], "lambda": self.lam.to_json()}


def order_witness(A: Monodromy) -> OrderWitness:
    """Exact eigen-covector for the eigenvalue lambda > 1 of A (trace > 2)."""
    t = A.trace
    if t <= 2:
        raise ValueError(f"order witness needs trace > 2, got {t}")
    f, D = squarefree_decomposition(t * t - 4)
    # lambda = (t + f sqrt D) / 2 satisfies lambda^2 = t lambda - 1
    lam = QuadraticNumber(Fraction(t, 2), Fraction(f, 2), D)
    if t % 2 == 0:
        u = (QuadraticNumber.rational(A.c, D), lam - A.a)
    else:
        u = (QuadraticNumber.rational(2 * A.c, D), (lam - A.a) * 2)
    return OrderWitness(A, D, u, lam)


@dataclass(frozen=True)
class Condition3:
    holds: bool | None
    reason: str
    witness: OrderWitness | None = None

    def to_json(self) -> dict:
        return {"holds": self.holds, "reason": self.reason}


def check_condition3(A: Monodromy) -> Condition3:
    """Invariant total order on coset labels, certified only via an order witness."""
    if A.trace > 2:
        return Condition3(True, "positive real eigenvalues; exact eigen-covector order", order_witness(A))
    if A.trace < -2:
        return Condition3(None, "real negative eigenvalues; no certificate attempted")
    return Condition3(None, "eigenvalues on the unit circle; no certificate attempted")


def _check_square(M: Sequence[Sequence[int]]):
    n = len(M)
    if n == 0 or n % 2 or any(len(r) != n for r in M):
        raise ValueError("expected a nonempty square matrix of even size")


def eigenvalue_advisory(M: Sequence[Sequence[int]]) -> dict:
    """Eigenvalue tests for a 2g x 2g integer matrix acting on H_1 of a genus g surface.

    PARTIAL: for g >= 2 these tests are necessary conditions on the homological action
    only and certify nothing about the mapping class or the surface group.
    """
    import sympy

    _check_square(M)
    x = sympy.Symbol("x")
    poly = sympy.Matrix(M).charpoly(x).as_expr()
    roots_of_unity = [j for j in range(1, 8 * len(M) * len(M) + 1)
                      if sympy.degree(sympy.gcd(poly, sympy.cyclotomic_poly(j, x)), x) > 0]
    p = sympy.Poly(poly, x)
    real = p.count_roots() == p.degree()
    positive = real and p.count_roots(0, sympy.oo) == p.degree() and p.eval(0) != 0
    return {"status": "PARTIAL", "size": len(M),
            "charpoly": [int(c) for c in p.all_coeffs()],
            "root_of_unity_eigenvalue": [j for j in roots_of_unity],
            "no_root_of_unity_eigenvalue": not roots_of_unity,
            "eigenvalues_real_positive": bool(positive)}


@dataclass(frozen=True)
class BundleReport:
    monodromy: Monodromy
    anosov: bool
    positive_real: bool
    cond1: Condition1
    cond2: CentralizerStatus
    cond3: Condition3

    @property
    def all_conditions(self) -> bool:
        return self.cond1.holds and self.cond2.holds and self.cond3.holds is True

    def to_json(self) -> dict:
        w = self.cond3.witness
        return {"matrix": self.monodromy.rows(), "anosov": self.anosov,
                "positive_real": self.positive_real, "cond1": self.cond1.to_json(),
                "cond2": self.cond2.to_json(), "cond3": self.cond3.to_json(),
                "order_witness": w.to_json() if w else None,
                "all_conditions": self.all_conditions}


def bundle_check(A: Monodromy, j_max: int = 50) -> BundleReport:
    return BundleReport(A, check_anosov(A), check_positive_real_eigs(A), check_condition1(A),
                        check_condition2(A, j_max), check_condition3(A))
