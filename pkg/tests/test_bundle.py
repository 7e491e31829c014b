import random

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from milnorkit.bundle import (IDENTITY_MATRIX, MINUS_IDENTITY, ONE, Monodromy, SolGroupElement,
                              bundle_check, check_anosov, check_condition1, check_condition2,
                              check_condition3, check_positive_real_eigs, coset_action,
                              det_power_minus_identity, eigenvalue_advisory, order_witness,
                              random_element, sol_inverse, sol_mul)
from milnorkit.quadratic import QuadraticNumber

CAT = Monodromy(2, 3, 1, 2)
HYPERBOLIC = [CAT, Monodromy(2, 1, 1, 1), Monodromy(3, 2, 1, 1), Monodromy(1, 1, 1, 2),
              Monodromy(5, 2, 2, 1), Monodromy(4, 1, 3, 1), Monodromy(7, 4, 5, 3)]
PARABOLIC = Monodromy(1, 1, 0, 1)


def test_parse_and_determinant():
    assert Monodromy.parse("2,3;1,2") == CAT
    with pytest.raises(ValueError):
        Monodromy.parse("1,2;3,4")
    with pytest.raises(ValueError):
        Monodromy.parse("1,2,3")


@pytest.mark.parametrize("A,expected", [(CAT, True), (PARABOLIC, False), (MINUS_IDENTITY, False),
                                        (Monodromy(-2, -3, -1, -2), True)])
def test_anosov(A, expected):
    assert check_anosov(A) is expected


@pytest.mark.parametrize("A,expected", [(CAT, True), (Monodromy(-2, -3, -1, -2), False),
                                        (IDENTITY_MATRIX, False)])
def test_positive_real(A, expected):
    assert check_positive_real_eigs(A) is expected


@pytest.mark.parametrize("A,h1", [(CAT, "Z/2 ⊕ Z"), (MINUS_IDENTITY, "Z/2 ⊕ Z/2 ⊕ Z"),
                                  (PARABOLIC, "Z ⊕ Z"), (IDENTITY_MATRIX, "Z ⊕ Z ⊕ Z")])
def test_condition1_examples(A, h1):
    c = check_condition1(A)
    assert c.holds and c.h1 == h1


@pytest.mark.parametrize("A", HYPERBOLIC + [PARABOLIC, MINUS_IDENTITY, Monodromy(0, -1, 1, 1)])
def test_h1_torsion_matches_sympy(A):
    M = sympy.Matrix([[A.a - 1, A.b], [A.c, A.d - 1]])
    snf = sympy_snf(M, domain=sympy.ZZ)
    factors = [abs(int(snf[i, i])) for i in range(2)]
    c = check_condition1(A)
    assert list(c.torsion) == [f for f in factors if f > 1]
    assert c.free_rank == 1 + factors.count(0)


def test_condition2_examples():
    assert str(check_condition2(CAT)) == "PROVEN_ALL"
    assert str(check_condition2(MINUS_IDENTITY)) == "FAILS_AT(2)"
    assert str(check_condition2(PARABOLIC, 5)) == "FAILS_AT(1)"
    assert str(check_condition2(Monodromy(0, -1, 1, 1), 3)) == "HOLDS_UP_TO(3)"
    assert str(check_condition2(Monodromy(0, -1, 1, 1), 10)) == "FAILS_AT(6)"
    with pytest.raises(ValueError):
        check_condition2(CAT, 0)


@pytest.mark.parametrize("A", HYPERBOLIC + [Monodromy(-2, -3, -1, -2)])
def test_condition2_proof_agrees_with_exhaustive_check(A):
    assert check_condition2(A).kind == "PROVEN_ALL"
    assert all(det_power_minus_identity(A, j) != 0 for j in range(1, 51))


def test_witness_example():
    w = order_witness(CAT)
    assert w.D == 3
    assert w.u == (QuadraticNumber(1, 0, 3), QuadraticNumber(0, 1, 3))
    assert w.lam == QuadraticNumber(2, 1, 3)
    assert w.to_json() == {"D": 3, "u": [[1, 0], [0, 1]], "lambda": [2, 1]}
    assert w.cmp((0, 0), (1, 0)) == -1


def test_witness_rejects_small_trace():
    for A in (PARABOLIC, MINUS_IDENTITY, Monodromy(-2, -3, -1, -2)):
        with pytest.raises(ValueError):
            order_witness(A)


@pytest.mark.parametrize("A", HYPERBOLIC)
def test_witness_is_eigenvector(A):
    w = order_witness(A)
    u0, u1 = w.u
    assert (u0 * A.a + u1 * A.c - w.lam * u0).is_zero()
    assert (u0 * A.b + u1 * A.d - w.lam * u1).is_zero()
    assert w.lam > 1
    assert (w.lam * w.lam - w.lam * A.trace + 1).is_zero()


def test_coset_action_examples():
    assert coset_action(CAT, ONE, (3, -4)) == (3, -4)
    t = SolGroupElement((0, 0), 1)
    assert coset_action(MINUS_IDENTITY, t, (1, 0)) == (-1, 0)
    assert coset_action(CAT, SolGroupElement((1, 0), 0), (0, 0)) == (1, 0)


@pytest.mark.parametrize("A", HYPERBOLIC + [MINUS_IDENTITY, PARABOLIC])
def test_group_law(A):
    rng = random.Random(1)
    for _ in range(1000):
        g, h = random_element(rng), random_element(rng)
        v = (rng.randint(-20, 20), rng.randint(-20, 20))
        assert coset_action(A, sol_mul(A, g, h), v) == coset_action(A, g, coset_action(A, h, v))
    for _ in range(100):
        g = random_element(rng)
        assert sol_mul(A, g, sol_inverse(A, g)) == ONE == sol_mul(A, sol_inverse(A, g), g)


@pytest.mark.parametrize("A", HYPERBOLIC)
def test_order_invariance(A):
    w = order_witness(A)
    rng = random.Random(2)
    for _ in range(1000):
        g = random_element(rng)
        v = (rng.randint(-20, 20), rng.randint(-20, 20))
        x = (rng.randint(-20, 20), rng.randint(-20, 20))
        if v == x:
            continue
        assert w.cmp(coset_action(A, g, v), coset_action(A, g, x)) == w.cmp(v, x)


@pytest.mark.parametrize("A", [CAT, Monodromy(2, 1, 1, 1)])
def test_order_is_total(A):
    # cmp depends only on v - w, so every difference of labels with |coordinates| <= 20 is covered
    w = order_witness(A)
    for d0 in range(-40, 41):
        for d1 in range(-40, 41):
            assert (w.cmp((d0, d1), (0, 0)) == 0) == (d0 == d1 == 0)


def test_condition3():
    assert check_condition3(CAT).holds is True
    assert check_condition3(MINUS_IDENTITY).holds is None
    assert check_condition3(Monodromy(-2, -3, -1, -2)).holds is None


def test_bundle_report():
    r = bundle_check(CAT).to_json()
    assert r["anosov"] and r["positive_real"] and r["all_conditions"]
    assert r["cond1"]["h1"] == "Z/2 ⊕ Z" and r["cond2"] == {"status": "PROVEN_ALL"}
    assert not bundle_check(MINUS_IDENTITY).all_conditions


def test_eigenvalue_advisory_on_larger_matrices():
    a = eigenvalue_advisory([[2, 3], [1, 2]])
    assert a["status"] == "PARTIAL" and a["no_root_of_unity_eigenvalue"] and a["eigenvalues_real_positive"]
    # block sum of a rotation of order 4 and the cat map: has a root of unity eigenvalue
    M = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 2, 3], [0, 0, 1, 2]]
    b = eigenvalue_advisory(M)
    assert not b["no_root_of_unity_eigenvalue"] and 4 in b["root_of_unity_eigenvalue"]
    assert not b["eigenvalues_real_positive"]
    with pytest.raises(ValueError):
        eigenvalue_advisory([[1, 2, 3]])
