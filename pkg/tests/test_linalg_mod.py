import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

import brute
from slorbits.errors import DomainError, NotInSLError, StructureError
from slorbits.linalg_mod import (
    act,
    act_unchecked,
    adjugate,
    det_int,
    det_mod,
    identity,
    mat_mul,
    matrix,
    parse_matrix,
    parse_vector,
    scalar_identity,
    scale_map,
    sl_inverse,
    vector,
)
from slorbits.sl_group import GroupSpec, generators


def rand_matrix(rng, m, n):
    return matrix([[rng.randrange(n) for _ in range(m)] for _ in range(m)], n)


def rand_sl(rng, m, n, steps=12):
    gens = generators(GroupSpec.of(m, n))
    A = identity(m, n)
    for _ in range(steps):
        A = mat_mul(A, rng.choice(gens))
    return A


def test_mat_mul_examples():
    B = matrix([[3, 1], [2, 5]], 7)
    assert mat_mul(identity(2, 7), B) == B
    S = matrix([[1, 1], [0, 1]], 4)
    assert mat_mul(S, S) == matrix([[1, 2], [0, 1]], 4)
    P = matrix([[0, 1], [1, 0]], 2)
    assert mat_mul(P, P) == identity(2, 2)


def test_mat_mul_mismatch():
    with pytest.raises(StructureError):
        mat_mul(identity(2, 4), identity(2, 5))
    with pytest.raises(StructureError):
        mat_mul(identity(2, 4), identity(3, 4))


def test_mat_mul_associative():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randrange(2, 10)
        A, B, C = (rand_matrix(rng, 3, n) for _ in range(3))
        assert mat_mul(mat_mul(A, B), C) == mat_mul(A, mat_mul(B, C))


@pytest.mark.parametrize("rows, n, d", [
    ([[1, 0], [0, 1]], 9, 1),
    ([[2, 1], [3, 2]], 6, 1),
    ([[2, 0], [0, 2]], 4, 0),
])
def test_det_mod_examples(rows, n, d):
    assert det_mod(matrix(rows, n)) == d


def test_det_identity_any_size():
    for m in range(1, 7):
        assert det_mod(identity(m, 11)) == 1


@settings(max_examples=100)
@given(st.integers(1, 7).flatmap(lambda m: st.lists(st.lists(st.integers(-20, 20), min_size=m, max_size=m), min_size=m, max_size=m)))
def test_det_int_matches_cofactor_reference(M):
    # Bareiss for m > 4 vs plain recursive expansion
    assert det_int(M) == brute.det(M)


def test_det_multiplicative_mod_n():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randrange(2, 13)
        m = rng.randrange(1, 5)
        A, B = rand_matrix(rng, m, n), rand_matrix(rng, m, n)
        assert det_mod(mat_mul(A, B)) == det_mod(A) * det_mod(B) % n


def test_adjugate_examples():
    assert adjugate(matrix([[1, 1], [0, 1]], 4)) == matrix([[1, 3], [0, 1]], 4)
    assert adjugate(identity(3, 5)) == identity(3, 5)
    assert adjugate(matrix([[3]], 5)) == identity(1, 5)


def test_adjugate_det2_mod5():
    rng = random.Random(3)
    found = 0
    while found < 20:
        A = rand_matrix(rng, 3, 5)
        if det_mod(A) != 2:
            continue
        found += 1
        assert mat_mul(A, adjugate(A)) == scalar_identity(2, 3, 5)


def test_adjugate_identity_all_2x2_small():
    for n in (2, 3, 4):
        for e in product(range(n), repeat=4):
            A = matrix([e[:2], e[2:]], n)
            assert mat_mul(A, adjugate(A)) == scalar_identity(det_mod(A), 2, n)


def test_adjugate_identity_random_3x3():
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randrange(2, 7)
        A = rand_matrix(rng, 3, n)
        assert mat_mul(A, adjugate(A)) == scalar_identity(det_mod(A), 3, n)


def test_adjugate_identity_5x5_bareiss_path():
    rng = random.Random(5)
    for _ in range(20):
        A = rand_matrix(rng, 5, 6)
        assert mat_mul(A, adjugate(A)) == scalar_identity(det_mod(A), 5, 6)


@pytest.mark.parametrize("rows, n, inv", [
    ([[1, 0], [0, 1]], 7, [[1, 0], [0, 1]]),
    ([[1, 1], [0, 1]], 4, [[1, 3], [0, 1]]),
    ([[2, 1], [3, 2]], 6, [[2, 5], [3, 2]]),
])
def test_sl_inverse_examples(rows, n, inv):
    A = matrix(rows, n)
    B = sl_inverse(A)
    assert B == matrix(inv, n)
    assert mat_mul(A, B) == identity(2, n) == mat_mul(B, A)


def test_sl_inverse_rejects():
    with pytest.raises(NotInSLError) as err:
        sl_inverse(matrix([[2, 0], [0, 2]], 4))
    assert err.value.det == 0


def test_sl_inverse_two_sided_random():
    rng = random.Random(6)
    for _ in range(100):
        m, n = rng.choice([(2, 12), (3, 6), (4, 5), (3, 10)])
        A = rand_sl(rng, m, n)
        B = sl_inverse(A)
        assert mat_mul(A, B) == identity(m, n) == mat_mul(B, A)


def test_act_examples():
    A = matrix([[1, 1], [0, 1]], 4)
    assert act(vector([1, 2], 4), A) == vector([1, 3], 4)
    a = vector([3, 1, 4], 7)
    assert act(a, identity(3, 7)) == a


def test_act_last_unit_vector_picks_last_row():
    rng = random.Random(7)
    for _ in range(30):
        m, n = rng.choice([(2, 5), (3, 4), (4, 3)])
        A = rand_sl(rng, m, n)
        e = vector([0] * (m - 1) + [1], n)
        assert act(e, A).components == A.entries[-1]


def test_act_rejects_non_sl_and_mismatch():
    with pytest.raises(NotInSLError):
        act(vector([1, 0], 4), matrix([[2, 0], [0, 2]], 4))
    with pytest.raises(StructureError):
        act(vector([1, 0, 0], 4), identity(2, 4))
    with pytest.raises(StructureError):
        act(vector([1, 0], 5), identity(2, 4))
    # unchecked variant skips only the membership test
    assert act_unchecked(vector([1, 1], 4), matrix([[2, 0], [0, 2]], 4)) == vector([2, 2], 4)


def test_action_compatibility():
    rng = random.Random(8)
    for _ in range(100):
        m, n = rng.choice([(2, 12), (3, 6), (2, 9)])
        A, B = rand_sl(rng, m, n), rand_sl(rng, m, n)
        a = vector([rng.randrange(n) for _ in range(m)], n)
        assert act(a, mat_mul(A, B)) == act(act(a, A), B)


def test_sl_closed_under_product():
    for M in brute.sl_elements(2, 4)[:20]:
        for N in brute.sl_elements(2, 4)[::7]:
            assert det_mod(mat_mul(matrix(M, 4), matrix(N, 4))) == 1


@pytest.mark.parametrize("pk, j, a, expected", [
    (9, 0, [4, 7], [4, 7]),
    (4, 1, [1, 3], [2, 2]),
    (8, 3, [5, 1, 7], [0, 0, 0]),
])
def test_scale_map_examples(pk, j, a, expected):
    assert scale_map(j, vector(a, pk)) == vector(expected, pk)


def test_scale_map_errors():
    with pytest.raises(DomainError):
        scale_map(1, vector([1, 1], 6))
    with pytest.raises(DomainError):
        scale_map(3, vector([1, 1], 4))


def test_scale_map_commutes_with_action():
    rng = random.Random(9)
    for pk, (p, k) in [(4, (2, 2)), (8, (2, 3)), (9, (3, 2)), (27, (3, 3))]:
        for _ in range(30):
            A = rand_sl(rng, 2, pk)
            a = vector([rng.randrange(pk), rng.randrange(pk)], pk)
            for j in range(k + 1):
                assert act(scale_map(j, a), A) == scale_map(j, act(a, A))


def test_parse_literals():
    assert parse_vector("1,2", 4) == vector([1, 2], 4)
    assert parse_vector("(5, 9)", 4) == vector([1, 1], 4)
    assert parse_matrix("1,1;0,1", 4) == matrix([[1, 1], [0, 1]], 4)
    for bad in ("1,,2", ""):
        with pytest.raises(ValueError):
            parse_vector(bad, 4)
    for bad in ("1,1;0", "a,b;c,d"):
        with pytest.raises(ValueError):
            parse_matrix(bad, 4)


def test_values_are_validated():
    from slorbits.linalg_mod import MatrixModN, VectorModN
    from slorbits.arith import factorize

    with pytest.raises(DomainError):
        VectorModN(factorize(4), (4, 0))
    with pytest.raises(StructureError):
        MatrixModN(factorize(4), ((1, 0),))
