import random

import numpy as np
import pytest

import oracle
from conftest import PROFILES, S_of, to_numpy
from superyang.exactalg import Poly
from superyang.grading import make_profile
from superyang.tensor import (LeggedMatrix, PolyMatrix, elementary, embed_leg, graded_mul, graded_tensor, make_Q,
                              make_R, partial_transpose_t1, permutation_P, single_leg)

TWISTED_K7 = [(M, N) for M in range(0, 8) for N in range(0, 8, 2) if 0 < M + N <= 7]


def test_elementary_action():
    E12 = elementary(1, 2, 3)
    # column 2 is e1 (E12 e2 = e1); column 1 is zero (E12 e1 = 0)
    assert [E12.num.get(i, 1) for i in range(3)] == [1, 0, 0]
    assert all(E12.num.get(i, 0).is_zero() for i in range(3))
    E11 = elementary(1, 1, 3)
    assert E11 * E11 == E11


def test_graded_products_of_units():
    g = make_profile(1, 2).grades
    E = lambda i, j: elementary(i, j, 3, g)  # noqa: E731
    lhs = graded_mul(graded_tensor(E(1, 2), E(3, 3)), graded_tensor(E(2, 1), E(3, 3)))
    assert lhs == graded_tensor(E(1, 1), E(3, 3))
    lhs = graded_mul(graded_tensor(E(1, 3), E(3, 1)), graded_tensor(E(3, 1), E(1, 3)))
    assert lhs == -graded_tensor(E(1, 1), E(3, 3))
    I = LeggedMatrix.identity(2, 3, 1, g)
    assert graded_tensor(E(1, 1) + E(2, 2) + E(3, 3), E(1, 1) + E(2, 2) + E(3, 3)) == I


def test_graded_mul_associative_on_random_units():
    g = make_profile(2, 2).grades
    rng = random.Random(5)
    for _ in range(30):
        mats = []
        for _ in range(3):
            i, j, k, l = (rng.randint(1, 4) for _ in range(4))
            mats.append(graded_tensor(elementary(i, j, 4, g), elementary(k, l, 4, g)))
        A, B, C = mats
        assert (A * B) * C == A * (B * C)


def test_permutation_action():
    p = make_profile(1, 2)
    P = permutation_P(p)
    assert P * P == LeggedMatrix.identity(2, 3, 1, p.grades)
    # P(e1 (x) e3) = e3 (x) e1 and P(e3 (x) e3) = -e3 (x) e3
    assert P.entry((3, 1), (1, 3)) == 1
    assert P.entry((3, 3), (3, 3)) == -1


@pytest.mark.parametrize("M,N", TWISTED_K7)
def test_P_Q_relations(M, N):
    p = make_profile(M, N)
    P, Q = permutation_P(p), make_Q(p)
    I = LeggedMatrix.identity(2, p.K, 1, p.grades)
    assert P * P == I
    assert Q * Q == Q.scale(M - N)
    assert P * Q == Q.scale(p.theta0)
    assert Q * P == Q.scale(p.theta0)


def test_Q_square_examples():
    p12, p22 = make_profile(1, 2), make_profile(2, 2)
    assert make_Q(p12) * make_Q(p12) == -make_Q(p12)
    assert (make_Q(p22) * make_Q(p22)).num.is_zero()


def test_mirror_profile_theta0():
    p = make_profile(2, 1)
    P, Q = permutation_P(p), make_Q(p)
    assert P * Q == -Q
    assert Q * Q == Q


@pytest.mark.parametrize("M,N", PROFILES)
def test_Rprime_is_transposed_R(M, N):
    p = make_profile(M, N)
    R, Rp = make_R(p, "R"), make_R(p, "Rprime")
    assert R.den == Poly.u() - Poly.v() and Rp.den == Poly.u() + Poly.v()
    # R'(u + v) = R^{t1}(-(u + v)): u -> -u turns R(u - v) into R(-u - v)
    R_neg = R.map_polys(Poly.neg_u)
    assert partial_transpose_t1(R_neg, p) == Rp


def test_identity_fixed_by_transposition():
    p = make_profile(3, 2)
    I = LeggedMatrix.identity(1, 5, 1, p.grades)
    assert partial_transpose_t1(I, p) == I


def _random_even_single(p, rng, d=1):
    blocks = {}
    for a in p.indices:
        for b in p.indices:
            if d == 1 and (p.grade(a) + p.grade(b)) % 2:
                continue
            blocks[(a, b)] = PolyMatrix.identity(1, Poly.const(rng.randint(-3, 3)))
    return single_leg(blocks, p.K, d, p)


@pytest.mark.parametrize("M,N", [(1, 2), (2, 2), (3, 2), (1, 4)])
def test_transpose_is_an_antihomomorphism_and_involution(M, N):
    p = make_profile(M, N)
    rng = random.Random(M * 10 + N)
    for _ in range(10):
        A, B = _random_even_single(p, rng), _random_even_single(p, rng)
        t = lambda X: partial_transpose_t1(X, p)  # noqa: E731
        assert t(A * B) == t(B) * t(A)
        assert t(t(A)) == A


@pytest.mark.parametrize("M,N", [(1, 2), (2, 2), (3, 2)])
def test_Q_absorbs_antisymmetric_F(M, N):
    S = S_of(M, N)
    F = S.coefficient(1)
    p = S.profile
    assert partial_transpose_t1(F, p) == -F
    P, Q = permutation_P(p, S.d), make_Q(p, S.d)
    F1, F2 = embed_leg(F, 1, 2), embed_leg(F, 2, 2)
    assert P * F2 == F1 * P
    assert Q * F2 == -(Q * F1)


@pytest.mark.parametrize("M,N", [(1, 2), (2, 2), (3, 2)])
def test_leg_embedding_against_float_oracle(M, N):
    S = S_of(M, N)
    g = oracle.grades(M, N)
    u = 3
    dense = to_numpy(S.matrix, u)
    blocks = oracle.blocks_of(dense, M + N, M + N)
    for leg in (1, 2):
        mine = to_numpy(embed_leg(S.matrix, leg, 2), u)
        assert np.allclose(mine, oracle.place(blocks, g, g, leg))


@pytest.mark.parametrize("M,N", [(1, 2), (2, 2), (2, 4)])
def test_P_and_Q_against_float_oracle(M, N):
    p = make_profile(M, N)
    g = oracle.grades(M, N)
    P = oracle.perm(g, 1)
    Q = oracle.t1(P, M, N, oracle.theta(M, N), M + N)
    assert np.allclose(to_numpy(permutation_P(p), 0), P)
    assert np.allclose(to_numpy(make_Q(p), 0), Q)


def test_even_flag():
    p = make_profile(1, 2)
    assert permutation_P(p).is_even()
    assert not elementary(1, 2, 3, p.grades).is_even()


def test_json_round_trip():
    p = make_profile(1, 2)
    R = make_R(p, "Rprime")
    assert LeggedMatrix.from_json(R.to_json()) == R


def test_shape_mismatch_raises():
    with pytest.raises(ValueError):
        graded_mul(permutation_P(make_profile(1, 2)), permutation_P(make_profile(2, 2)))
    with pytest.raises(IndexError):
        elementary(3, 1, 2)
