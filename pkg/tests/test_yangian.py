import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from conftest import PROFILES, to_numpy
from superyang.exactalg import Poly
from superyang.grading import make_profile
from superyang.tensor import PolyMatrix
from superyang.yangian import (GlRep, character, check_comYMN, check_rtt, defining_rep, direct_sum, dual_rep, eval_T,
                               iso_family, iso_ymn_ynm, perturbed, shifted, tensor_evaluation, validate_gl_rep,
                               zero_rep)

YPROFILES = [(1, 2), (2, 2), (3, 2), (2, 4), (4, 2), (2, 1), (1, 1), (3, 0), (0, 3)]


def yprof(M, N):
    return make_profile(M, N, "yangian")


def catalog(p):
    d = defining_rep(p)
    return [zero_rep(p.K), d, dual_rep(p), character(p.K, "3/2"), shifted(d, -2), direct_sum(d, dual_rep(p))]


@pytest.mark.parametrize("M,N", YPROFILES)
def test_catalog_reps_are_valid(M, N):
    p = yprof(M, N)
    for rep in catalog(p):
        assert validate_gl_rep(rep, p).passed, rep.name


def test_perturbed_rep_is_invalid():
    p = yprof(1, 2)
    bad = perturbed(defining_rep(p), 1, 2)
    rep = validate_gl_rep(bad, p)
    assert not rep.passed and rep.failures


@pytest.mark.parametrize("M,N", YPROFILES)
def test_rtt_and_commutator_on_catalog(M, N):
    p = yprof(M, N)
    for rep in catalog(p):
        if rep.d > 5:
            continue
        T = eval_T(rep, p)
        r1, r2 = check_rtt(T), check_comYMN(T)
        assert r1.passed and r2.passed, rep.name


@pytest.mark.parametrize("M,N", PROFILES)
def test_perturbation_fails_both_forms(M, N):
    p = yprof(M, N)
    T = eval_T(perturbed(defining_rep(p), 1, 2), p)
    r1, r2 = check_rtt(T), check_comYMN(T)
    assert not r1.passed and not r2.passed
    # the failing entry is located
    assert r1.failures[0].entry and r2.failures[0].entry


def test_zero_rep_gives_identity():
    p = yprof(1, 2)
    T = eval_T(zero_rep(3), p)
    assert T.matrix.num == PolyMatrix.identity(3, Poly.u())
    assert check_rtt(T).passed


def test_defining_evaluation_is_the_R_matrix():
    p = yprof(1, 2)
    T = eval_T(defining_rep(p), p)
    # T(u) = I - P/u on C^3 (x) C^3; compare with the oracle
    Pm = oracle.perm(oracle.grades(1, 2), 1)
    assert np.allclose(to_numpy(T.matrix, 2), np.eye(9) - Pm / 2)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(1, 2), (2, 1), (2, 2)]), st.integers(1, 4), st.integers(1, 4),
       st.integers(0, 3), st.integers(0, 3), st.integers(-2, 2))
def test_rtt_and_commutator_verdicts_agree(mn, a, b, i, j, delta):
    p = yprof(*mn)
    K = p.K
    a, b, i, j = (a - 1) % K + 1, (b - 1) % K + 1, i % K, j % K
    T = eval_T(perturbed(defining_rep(p), a, b, i, j, delta), p)
    assert check_rtt(T).passed == check_comYMN(T).passed


def test_graded_antisymmetry_of_the_commutator():
    p = yprof(1, 2)
    T = eval_T(defining_rep(p), p)
    blocks = T.blocks()
    g = p.grade
    for (a, b), X in blocks.items():
        for (c, d), Y in blocks.items():
            Yv = Y.map(Poly.swap)
            s = (-1) ** ((g(a) + g(b)) * (g(c) + g(d)))
            lhs = X @ Yv - (Yv @ X).scale(s)
            rhs = (Yv @ X - (X @ Yv).scale(s)).scale(-s)
            assert (lhs - rhs).is_zero()


@pytest.mark.parametrize("M,N", [(1, 2), (2, 1), (2, 2), (3, 2)])
def test_iso_to_swapped_grading(M, N):
    p = yprof(M, N)
    for rep in (zero_rep(p.K), defining_rep(p)):
        r = iso_ymn_ynm(eval_T(rep, p))
        assert r.passed
        assert r.details["target"] == f"Y({N}|{M})"


def test_iso_applied_twice():
    p = yprof(1, 2)
    T = eval_T(defining_rep(p), p)
    twice = iso_family(iso_family(T))
    assert twice.profile.grades == p.grades
    assert check_comYMN(twice).passed == check_comYMN(T).passed
    bad = eval_T(perturbed(defining_rep(p), 1, 2), p)
    assert check_comYMN(iso_family(iso_family(bad))).passed == check_comYMN(bad).passed


def test_tensor_with_trivial_module():
    p = yprof(1, 2)
    T = eval_T(defining_rep(p), p)
    triv = eval_T(zero_rep(3), p)
    assert tensor_evaluation(T, triv).matrix == T.matrix
    assert tensor_evaluation(triv, T).matrix == T.matrix


@pytest.mark.parametrize("M,N", [(1, 2), (2, 1), (2, 2)])
def test_tensor_of_evaluations_satisfies_rtt(M, N):
    p = yprof(M, N)
    T = eval_T(defining_rep(p), p)
    TT = tensor_evaluation(T, T)
    assert TT.den == Poly.u() ** 2
    assert check_rtt(TT).passed and check_comYMN(TT).passed
    mixed = tensor_evaluation(T, eval_T(dual_rep(p), p))
    assert check_rtt(mixed).passed


def test_tensor_highest_weight_is_the_product():
    # e_K is killed by T^{ab}(u), a < b, in the defining module
    p = yprof(1, 2)
    K = p.K
    T = eval_T(defining_rep(p), p)
    TT = tensor_evaluation(T, T)
    top = (K - 1) * K + (K - 1)
    for a in p.indices:
        lam = T.block(a, a).get(K - 1, K - 1)
        X = TT.block(a, a)
        assert X.get(top, top) == lam * lam
        assert all(X.get(r, top).is_zero() for r in range(K * K) if r != top)
        for b in range(a + 1, K + 1):
            assert all(TT.block(a, b).get(r, top).is_zero() for r in range(K * K))


def test_rep_json_round_trip():
    p = yprof(2, 1)
    rep = defining_rep(p)
    back = GlRep.from_json(rep.to_json())
    assert back.pi == rep.pi and back.grades == rep.grades


def test_random_direct_sums_stay_valid():
    rng = random.Random(3)
    p = yprof(2, 2)
    for _ in range(3):
        r = shifted(defining_rep(p), rng.randint(-3, 3))
        s = direct_sum(r, character(4, rng.randint(-3, 3)))
        assert validate_gl_rep(s, p).passed
        assert check_rtt(eval_T(s, p)).passed


@pytest.mark.parametrize("M,N", PROFILES + [(2, 1)])
def test_rtt_float_oracle(M, N):
    pi = oracle.defining_pi(M, N)
    assert oracle.rtt_residual(pi, M, N, 0.37, -1.21) < 1e-9
    pi[(1, 2)] = pi[(1, 2)] + oracle.unit(1, 1, M + N)
    assert oracle.rtt_residual(pi, M, N, 0.37, -1.21) > 1e-3
