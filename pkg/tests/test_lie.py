import itertools
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from milnorkit import intmat
from milnorkit.lie import (LieElement, bracketing_matrix, is_lyndon, lie_bracket, lyndon_basis,
                           lyndon_coordinates, milnor_module, orbit, permutation_generators,
                           poly_bracket, relabel_action, relabel_orbit_count, standard_bracketing,
                           standard_factorization)
from milnorkit.witt import milnor_module_rank, witt_rank


def lyndon_bruteforce(k, w):
    out = []
    for word in itertools.product(range(k), repeat=w):
        if all(word < word[i:] + word[:i] for i in range(1, w)):
            out.append(word)
    return out


def lie_elements(k, degree):
    n = witt_rank(degree, k)
    return st.lists(st.integers(-3, 3), min_size=n, max_size=n).map(
        lambda c: LieElement(k, degree, tuple(c)))


def test_lyndon_examples():
    assert lyndon_basis(2, 1) == [(0,), (1,)]
    assert lyndon_basis(2, 2) == [(0, 1)]
    assert lyndon_basis(3, 2) == [(0, 1), (0, 2), (1, 2)]


@pytest.mark.parametrize("k,w", [(k, w) for k in (1, 2, 3, 4) for w in range(1, 7) if k ** w < 5000])
def test_lyndon_basis_matches_bruteforce(k, w):
    basis = lyndon_basis(k, w)
    assert basis == lyndon_bruteforce(k, w)
    assert len(basis) == witt_rank(w, k)
    assert all(is_lyndon(b) for b in basis)


def test_standard_factorization():
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))
    for w in lyndon_basis(3, 5):
        u, v = standard_factorization(w)
        assert is_lyndon(u) and is_lyndon(v) and u < v and u + v == w


def test_bracketing_is_triangular():
    for w in lyndon_basis(3, 5):
        poly = standard_bracketing(w)
        assert poly[w] == 1
        assert min(poly) == w


def test_bracket_examples():
    a, b = LieElement.generator(2, 0), LieElement.generator(2, 1)
    assert lie_bracket(a, a).is_zero()
    assert lie_bracket(a, b).terms() == {"12": 1}
    assert lie_bracket(b, a).terms() == {"12": -1}


def test_bracket_alphabet_mismatch():
    with pytest.raises(ValueError):
        lie_bracket(LieElement.generator(2, 0), LieElement.generator(3, 1))


def test_non_lie_polynomial_rejected():
    with pytest.raises(ValueError):
        lyndon_coordinates(2, 2, {(0, 1): 1})


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_jacobi_and_antisymmetry(data):
    k = data.draw(st.integers(2, 3))
    da, db, dc = (data.draw(st.integers(1, 2)) for _ in range(3))
    a, b, c = data.draw(lie_elements(k, da)), data.draw(lie_elements(k, db)), data.draw(lie_elements(k, dc))
    assert lie_bracket(a, b) == -lie_bracket(b, a)
    jac = (lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a))
           + lie_bracket(c, lie_bracket(a, b)))
    assert jac.is_zero()
    # the bracket is the commutator in the associative algebra
    expected = poly_bracket(a.to_polynomial(), b.to_polynomial())
    assert lie_bracket(a, b).to_polynomial() == expected


@pytest.mark.parametrize("k,n", [(k, n) for k in (2, 3, 4) for n in (2, 3, 4)])
def test_kernel_rank_matches_formula_and_sympy(k, n):
    mod = milnor_module(k, n)
    assert mod.rank == milnor_module_rank(k, n)
    B = bracketing_matrix(k, n)
    assert mod.rank == len(B) - sympy.Matrix(B).rank()


@pytest.mark.parametrize("k,n", [(2, 3), (3, 2), (3, 3), (4, 2), (4, 3)])
def test_kernel_rows_bracket_to_zero(k, n):
    mod = milnor_module(k, n)
    for j in range(mod.rank):
        total = {}
        for i, l in enumerate(mod.longitudes([int(t == j) for t in range(mod.rank)])):
            for w, c in poly_bracket({(i,): 1}, l.to_polynomial()).items():
                total[w] = total.get(w, 0) + c
        assert not any(total.values())


def test_kernel_basis_is_canonical():
    mod = milnor_module(3, 3)
    assert intmat.hermite_rows(mod.basis) == [list(r) for r in mod.basis]
    assert mod.canonical == "hermite"


def test_small_module_examples():
    assert milnor_module(3, 2).rank == 1
    assert milnor_module(2, 2).rank == 0
    assert milnor_module(2, 3).rank == 1
    with pytest.raises(ValueError):
        milnor_module(3, 1)


def test_triple_linking_generator():
    mod = milnor_module(3, 2)
    assert mod.describe([1]) == {"x1": {"23": 1}, "x2": {"13": -1}, "x3": {"12": 1}}


def test_relabel_examples():
    mod = milnor_module(3, 2)
    assert relabel_action((0, 1, 2), mod, [1]) == [1]
    assert relabel_action((0, 2, 1), mod, [1]) == [-1]  # transposition (2 3)
    assert relabel_action((1, 2, 0), mod, [1]) == [1]   # 3-cycle


@pytest.mark.parametrize("k,n", [(3, 3), (4, 2), (4, 3)])
def test_relabel_is_group_action(k, n):
    mod = milnor_module(k, n)
    rng = random.Random(k * 10 + n)
    for _ in range(20):
        p = list(range(k)); rng.shuffle(p)
        q = list(range(k)); rng.shuffle(q)
        v = [rng.randint(-3, 3) for _ in range(mod.rank)]
        pq = [p[q[i]] for i in range(k)]  # first q, then p
        assert relabel_action(p, mod, relabel_action(q, mod, v)) == relabel_action(pq, mod, v)
        assert relabel_action(list(range(k)), mod, v) == v


def test_relabel_rejects_bad_permutation():
    with pytest.raises(ValueError):
        relabel_action((0, 0, 1), milnor_module(3, 2), [1])


def test_permutation_generators_generate():
    for k in (3, 4):
        seen = {tuple(range(k))}
        frontier = list(seen)
        while frontier:
            nxt = []
            for p in frontier:
                for g in permutation_generators(k):
                    q = tuple(g[p[i]] for i in range(k))
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        assert len(seen) == len(list(itertools.permutations(range(k))))


def test_m3():
    oc = relabel_orbit_count(3)
    assert (oc.count, oc.flag, oc.rank) == (1, "EXACT", 1)


def test_m4_is_certified_signed_family():
    oc = relabel_orbit_count(4)
    mod = milnor_module(4, 3)
    assert oc.rank == 4 * witt_rank(3, 4) - witt_rank(4, 4)
    vectors = [v for r in oc.representatives for v in orbit(r, mod)]
    assert len(vectors) == sum(oc.orbit_sizes)
    assert intmat.rank(vectors) == len(vectors)  # independent
    for v in vectors:  # closed under S_4 up to sign
        for g in permutation_generators(4):
            img = tuple(relabel_action(g, mod, v))
            assert img in vectors or tuple(-x for x in img) in vectors
    assert oc.count >= 1


def test_relabel_orbit_count_rejects_small_k():
    with pytest.raises(ValueError):
        relabel_orbit_count(2)
