import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superyang.grading import (bar_twisted, bar_yangian, hash_involution, koszul_sign, make_profile,
                               make_root_system, positive_root_clauses, valid_theta_profiles)

TWISTED = [(M, N) for M in range(0, 6) for N in range(0, 6) if 0 < M + N <= 7 and N % 2 == 0]


def test_canonical_profiles():
    p = make_profile(1, 2)
    assert p.grades == (0, 1, 1)
    assert p.theta == (1, 1, -1) and p.theta0 == 1
    assert make_profile(2, 2).theta == (1, 1, 1, -1)


def test_mn_odd_rejected():
    with pytest.raises(ValueError, match="MN odd"):
        make_profile(1, 1)
    with pytest.raises(ValueError):
        make_profile(3, 1)


def test_mirror_profile_has_theta0_minus():
    p = make_profile(2, 1)
    assert p.theta0 == -1


def test_invalid_override_rejected():
    with pytest.raises(ValueError):
        make_profile(1, 2, "twisted", [1, 1, 1])
    assert make_profile(1, 2, "twisted", [1, -1, 1]).theta0 == 1


def test_bar_examples():
    assert bar_yangian(1, 3) == 3 and bar_yangian(2, 3) == 2 and bar_yangian(3, 4) == 2
    p = make_profile(3, 2)
    assert bar_twisted(4, p) == 5 and bar_twisted(5, p) == 4 and bar_twisted(2, p) == 2
    assert bar_twisted(1, make_profile(2, 2)) == 2


def test_koszul_sign_examples():
    assert koszul_sign((1, 1)) == -1
    assert koszul_sign((0, 1), (1, 0)) == 1
    assert koszul_sign((1, 1), (1, 1)) == 1


@pytest.mark.parametrize("M,N", TWISTED)
def test_profile_invariants(M, N):
    p = make_profile(M, N)
    for a in p.indices:
        assert p.bar(p.bar(a)) == a
        assert p.grade(p.bar(a)) == p.grade(a)
        assert bar_yangian(bar_yangian(a, p.K), p.K) == a
        assert (-1) ** p.grade(a) * p.th(a) * p.th(p.bar(a)) == p.theta0
        for b in p.indices:
            assert p.sigma(a, b) == p.sigma(p.bar(b), p.bar(a))
    assert p.theta0 == 1
    assert all(p.th(a) == 1 for a in range(1, M + 1))


@pytest.mark.parametrize("M,N", TWISTED)
def test_every_valid_profile_has_the_useful_identity(M, N):
    if M + N > 5:
        pytest.skip("enumeration kept small")
    for p in valid_theta_profiles(M, N):
        for a, b in itertools.product(p.indices, repeat=2):
            assert p.sigma(a, b) == p.sigma(p.bar(b), p.bar(a))


def test_sign_identity_needs_the_reversed_bar_order():
    # sigma(a, b) = sigma(abar, bbar) fails as soon as a boson meets a fermion
    p = make_profile(1, 2)
    assert p.sigma(1, 2) == 1 and p.sigma(p.bar(1), p.bar(2)) == -1
    assert p.sigma(1, 2) == p.sigma(p.bar(2), p.bar(1))


def test_root_system_literal_reading_clashes():
    literal = positive_root_clauses(1, 1, "literal")
    assert literal == {(2, 3), (1, 3), (3, 1)}
    rs = make_root_system(1, 1, "literal")
    assert not rs.is_valid()
    assert rs.clashes == {(1, 3), (3, 1)}


def test_root_system_corrected_reading():
    rs = make_root_system(1, 1)
    assert rs.phi_plus == {(2, 3), (1, 3), (2, 1)}
    assert rs.phi_minus == {(3, 2), (3, 1), (1, 2)}
    assert rs.phi_zero == {(1, 1), (2, 2), (3, 3)}


@pytest.mark.parametrize("M,n", [(M, n) for M in range(0, 8) for n in range(0, 4) if 0 < M + 2 * n <= 7])
def test_root_partition(M, n):
    rs = make_root_system(M, n)
    assert rs.is_partition() and rs.is_transpose_consistent()


@pytest.mark.parametrize("M,n", [(M, n) for M in range(1, 6) for n in range(1, 3) if M + 2 * n <= 7])
def test_literal_reading_always_clashes_when_both_blocks_exist(M, n):
    assert make_root_system(M, n, "literal").clashes


def test_hash_involution():
    p4 = make_profile(4, 2)
    assert [hash_involution(a, p4) for a in p4.indices] == [1, 3, 2, 4, 5, 6]
    p2 = make_profile(2, 2)
    assert hash_involution(1, p2) == 2 and hash_involution(3, p2) == 3
    with pytest.raises(ValueError):
        hash_involution(1, make_profile(3, 2))


def test_profile_json_round_trip():
    p = make_profile(2, 2, "twisted", [1, 1, -1, 1])
    assert type(p).from_json(p.to_json()) == p


@given(st.sampled_from([(1, 2), (2, 2), (3, 2), (1, 4)]), st.data())
def test_sigma_identity_random_pairs(mn, data):
    p = make_profile(*mn)
    a = data.draw(st.integers(1, p.K))
    b = data.draw(st.integers(1, p.K))
    assert p.sigma(a, b) == p.sigma(p.bar(b), p.bar(a))
