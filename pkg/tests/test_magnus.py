import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from milnorkit.freegroup import FreeWord, commutator, conjugate, hall_basis
from milnorkit.lie import LieElement, basic_commutator_lie, lie_bracket
from milnorkit.magnus import (IDENTITY, AtLeast, TruncatedSeries, depth_at_least, lcs_depth,
                              leading_lie_part, magnus_expand)

from conftest import random_word, words

x1, x2, x3 = (FreeWord.gen(i) for i in range(3))
SYMS = sympy.symbols("X1:4", commutative=False)


def sympy_magnus(w: FreeWord, cap: int) -> dict:
    """Oracle: expand in sympy's noncommutative algebra, then truncate."""
    expr = sympy.Integer(1)
    for g, e in w.letters:
        X = SYMS[g]
        if e > 0:
            factor = (1 + X) ** e
        else:
            factor = sum(((-X) ** j for j in range(cap + 1)), sympy.Integer(0)) ** (-e)
        expr = sympy.expand(expr * factor)
    out = {}
    for term, c in expr.as_coefficients_dict().items():
        mono = []
        for f in ([term] if not isinstance(term, sympy.Mul) else term.args):
            if f == 1:
                continue
            base, exp = f.as_base_exp()
            mono.extend([SYMS.index(base)] * int(exp))
        if len(mono) <= cap and c:
            out[tuple(mono)] = out.get(tuple(mono), 0) + int(c)
    return {m: c for m, c in out.items() if c}


def test_examples():
    assert magnus_expand(x1, 1, 3).coefficients == {(): 1, (0,): 1}
    assert magnus_expand(FreeWord(()), 2, 3).coefficients == {(): 1}
    assert magnus_expand(commutator(x1, x2), 2, 2).coefficients == {(): 1, (0, 1): 1, (1, 0): -1}
    assert magnus_expand(commutator(x1, x2), 2, 2).to_json() == {"": 1, "1 2": 1, "2 1": -1}


def test_inverse_letter_is_truncated_geometric_series():
    s = magnus_expand(x1.inverse(), 1, 4)
    assert s.coefficients == {(): 1, (0,): -1, (0, 0): 1, (0, 0, 0): -1, (0, 0, 0, 0): 1}


def test_out_of_range_generator():
    with pytest.raises(ValueError):
        magnus_expand(x3, 2, 3)


@settings(max_examples=40, deadline=None)
@given(words(3, 7), st.integers(1, 4))
def test_matches_sympy_oracle(w, cap):
    assert magnus_expand(w, 3, cap).coefficients == sympy_magnus(w, cap)


def test_homomorphism_on_random_pairs(rng):
    for _ in range(200):
        u, v = random_word(rng, 3, rng.randint(0, 10)), random_word(rng, 3, rng.randint(0, 10))
        cap = rng.randint(1, 5)
        assert magnus_expand(u * v, 3, cap) == magnus_expand(u, 3, cap) * magnus_expand(v, 3, cap)


@given(words(3, 10))
def test_inverse_series(w):
    s = magnus_expand(w, 3, 4)
    assert magnus_expand(w.inverse(), 3, 4) == s.inverse()
    assert s * s.inverse() == TruncatedSeries.one(3, 4)


def test_depth_examples():
    assert lcs_depth(x1, 2, 4) == 1
    assert lcs_depth(commutator(x1, x2), 2, 4) == 2
    assert lcs_depth(commutator(x2, commutator(x1, x2)), 2, 4) == 3
    assert lcs_depth(FreeWord(()), 2, 4) is IDENTITY
    deep = commutator(x1, commutator(x1, commutator(x1, x2)))
    assert lcs_depth(deep, 2, 3) == AtLeast(4)
    assert depth_at_least(AtLeast(4), 4) and not depth_at_least(3, 4) and depth_at_least(IDENTITY, 9)


def test_depth_conjugation_invariant(rng):
    for c in hall_basis(3, 4):
        w = c.expand()
        for _ in range(3):
            g = random_word(rng, 3, rng.randint(1, 6))
            assert lcs_depth(conjugate(w, g), 3, 5) == lcs_depth(w, 3, 5)


@pytest.mark.parametrize("k,W", [(2, 5), (3, 5)])
def test_leading_part_of_hall_commutators(k, W):
    for c in hall_basis(k, W):
        w = c.expand()
        assert lcs_depth(w, k, W + 1) == c.weight
        assert leading_lie_part(w, k, c.weight) == basic_commutator_lie(c, k)


def test_leading_part_examples():
    assert leading_lie_part(commutator(x1, x2), 2, 2) == lie_bracket(LieElement.generator(2, 0),
                                                                     LieElement.generator(2, 1))
    a = LieElement.generator(2, 0)
    b = LieElement.generator(2, 1)
    assert leading_lie_part(commutator(x1, commutator(x1, x2)), 2, 3) == lie_bracket(a, lie_bracket(a, b))
    assert leading_lie_part(FreeWord(()), 2, 3).is_zero()


def test_leading_part_rejects_shallow_word():
    with pytest.raises(ValueError):
        leading_lie_part(x1, 2, 2)


def test_leading_part_is_additive_on_products():
    u = commutator(x1, commutator(x1, x2))
    v = commutator(x2, commutator(x1, x2))
    assert leading_lie_part(u * v, 2, 3) == leading_lie_part(u, 2, 3) + leading_lie_part(v, 2, 3)
