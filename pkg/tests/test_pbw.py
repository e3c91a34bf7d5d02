import pytest

from superyang.grading import make_profile, valid_theta_profiles
from superyang.pbw import (compare_corollary_lists, constraint_sign, corollary_lists, dimension_formula, orbit,
                           solve_constraint)

PLUS_K8 = [(M, 2 * n) for M in range(0, 9) for n in range(0, 5) if 0 < M + 2 * n <= 8]


def counts(M, N):
    p = make_profile(M, N)
    return len(solve_constraint(p, 1).generators), len(solve_constraint(p, 2).generators)


def test_count_examples():
    assert counts(3, 2) == (12, 13)
    assert counts(1, 2) == (5, 4)
    assert counts(0, 2)[0] == 3


def test_counts_alternate():
    p = make_profile(3, 2)
    assert [len(solve_constraint(p, k).generators) for k in range(1, 6)] == [12, 13, 12, 13, 12]


@pytest.mark.parametrize("M,N", PLUS_K8)
def test_counts_match_closed_form(M, N):
    p = make_profile(M, N)
    odd, even = solve_constraint(p, 1), solve_constraint(p, 2)
    assert len(odd.generators) == dimension_formula(p, 1)
    assert len(even.generators) == dimension_formula(p, 0)
    assert dimension_formula(p, 1) + dimension_formula(p, 0) == p.K ** 2
    assert odd.accounts_for(p.K) and even.accounts_for(p.K)


@pytest.mark.parametrize("M,N", [(1, 2), (2, 2), (3, 2), (1, 4)])
def test_counts_do_not_depend_on_theta(M, N):
    want = counts(M, N)
    for p in valid_theta_profiles(M, N):
        if p.theta0 != 1:
            continue
        assert (len(solve_constraint(p, 1).generators), len(solve_constraint(p, 2).generators)) == want


def test_orbits_and_identifications():
    p = make_profile(3, 2)
    sl = solve_constraint(p, 2)
    for pair, (partner, sign) in sl.identified.items():
        assert orbit(p, *pair) == orbit(p, *partner)
        assert sign == constraint_sign(p, *pair, 2)
    # fixed points with sign -1 vanish
    for a, b in sl.forced_zero:
        assert (p.bar(b), p.bar(a)) == (a, b) and constraint_sign(p, a, b, 2) == -1


def test_degree_zero_rejected():
    with pytest.raises(ValueError):
        solve_constraint(make_profile(1, 2), 0)
    with pytest.raises(ValueError):
        solve_constraint(make_profile(1, 2, "yangian"), 1)


def test_bosonic_lists_agree():
    p = make_profile(3, 2)
    assert len(corollary_lists(p, 2)["bosonic"]) == 6
    assert len(corollary_lists(p, 1)["bosonic"]) == 3
    for k in (1, 2, 3, 4):
        assert compare_corollary_lists(p, k).details["bosonic"]["agree"]


def test_literal_fermionic_threshold_disagrees_for_3_2():
    rep = compare_corollary_lists(make_profile(3, 2), 2, "literal")
    assert not rep.passed
    assert not rep.details["fermionic"]["agree"]
    assert rep.details["reading"] == "literal"


@pytest.mark.parametrize("M,N", [(1, 2), (3, 2), (2, 2), (1, 4), (3, 4)])
def test_reconciled_reading_agrees(M, N):
    p = make_profile(M, N)
    for k in (1, 2, 3, 4):
        assert compare_corollary_lists(p, k, "reconciled").passed


def test_mode_index_note_at_degree_one():
    p = make_profile(3, 2)
    assert "mode_index" in compare_corollary_lists(p, 1).details
    assert "mode_index" not in compare_corollary_lists(p, 2).details


def test_unknown_reading():
    with pytest.raises(ValueError):
        corollary_lists(make_profile(1, 2), 1, "other")


def test_slice_json():
    js = solve_constraint(make_profile(1, 2), 1).to_json()
    assert js["count"] == 5 and js["degree"] == 1
