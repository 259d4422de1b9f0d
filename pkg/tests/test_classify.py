import itertools
import random

import pytest

from permrack.classify import (
    binom,
    classify_full_cycle,
    classify_prack_1_nm1,
    classify_prack_m_nm,
    classify_prack_ones_block,
    classify_prack_three_blocks,
    classify_profile,
    euler_phi,
    ones_block_formula,
    ones_block_multiset_count,
    parse_profile_shape,
    partitions_exact,
    quandle_search_1_nm1,
)
from permrack.enumeration import enumerate_racks
from permrack.invariants import ProfileSpec, delta_orbits, is_indecomposable
from permrack.iso import are_isomorphic
from permrack.perm import Permutation
from permrack.rack import cyclic, dihedral, kind, linear_alexander, validate_perms


def distinct(reps):
    return all(not are_isomorphic(a, b) for a, b in itertools.combinations(reps, 2))


def has_profile(r, pat):
    return ProfileSpec.constant_pattern(pat).matches(r)


def test_counting_helpers():
    assert euler_phi(4) == 2 and euler_phi(1) == 1 and euler_phi(12) == 4 and euler_phi(13) == 12
    assert partitions_exact(4, 2) == 2
    assert partitions_exact(7, 3) == 4
    assert binom(2, 2) == 1
    with pytest.raises(ValueError):
        euler_phi(0)


def test_full_cycle():
    for n in (3, 5):
        res = classify_full_cycle(n)
        assert res.count == 1 == res.predicted_count
        assert res.representatives[0] == cyclic(n)
        assert kind(res.representatives[0]).k == n


def test_prack_1_nm1_matches_sample_racks(sample_racks):
    reps = classify_prack_1_nm1(4).representatives
    assert len(reps) == 2
    assert are_isomorphic(reps[0], sample_racks["T"])
    assert are_isomorphic(reps[1], sample_racks["U"])
    assert classify_prack_1_nm1(5).count == 2


@pytest.mark.parametrize("n", range(3, 10))
def test_prack_1_nm1_reps(n):
    res = classify_prack_1_nm1(n)
    for r in res.representatives:
        assert has_profile(r, (1, n - 1)) and kind(r).k > 0 and not is_indecomposable(r)
    assert distinct(res.representatives)


def test_prack_m_nm_examples():
    assert classify_prack_m_nm(4, 2).count == 1
    assert classify_prack_m_nm(5, 2).count == 2
    with pytest.raises(ValueError):
        classify_prack_m_nm(6, 4)


@pytest.mark.parametrize("n,m", [(n, m) for n in range(4, 10) for m in range(2, n // 2 + 1)])
def test_prack_m_nm_reps(n, m):
    res = classify_prack_m_nm(n, m)
    assert res.count == res.predicted_count
    for r in res.representatives:
        assert validate_perms(r.perms).is_rack
        assert has_profile(r, (m, n - m)) and not is_indecomposable(r)
    assert distinct(res.representatives)


def test_ones_block_small_case():
    res = classify_prack_ones_block(5, 3)
    assert res.count == 1 == res.predicted_count


def test_ones_block_formula_values():
    assert ones_block_formula(6, 3) == 4
    assert ones_block_formula(7, 3) == 3
    assert ones_block_multiset_count(6, 3) == 5
    assert ones_block_multiset_count(7, 3) == 4


@pytest.mark.parametrize("n,f", [(5, 3), (6, 3), (7, 3), (8, 3), (8, 4), (9, 3), (9, 4)])
def test_ones_block_reps_are_distinct_classes(n, f):
    res = classify_prack_ones_block(n, f)
    assert res.count == ones_block_multiset_count(n, f)
    pat = tuple(sorted([1] * f + [n - f]))
    for r in res.representatives:
        assert validate_perms(r.perms).is_rack and has_profile(r, pat)
        assert kind(r).k > 0 and not is_indecomposable(r)
    assert distinct(res.representatives)
    if f == n - f:
        assert len(delta_orbits(res.representatives[-1])) == 2
        assert all(len(delta_orbits(r)) == f + 1 for r in res.representatives[:-1])


def test_ones_block_against_oracle():
    # independent check of the class count for the profile {1,1,1,3}
    spec = ProfileSpec.constant_pattern((1, 1, 1, 3))
    oracle = enumerate_racks(6, "pracks", spec).classes
    reps = classify_prack_ones_block(6, 3).representatives
    assert len(oracle) == len(reps) == 5
    for r in reps:
        assert sum(1 for c in oracle if are_isomorphic(r, c)) == 1


def test_ones_block_rejects():
    for n, f in ((6, 2), (6, 6), (6, 5), (3, 3)):
        with pytest.raises(ValueError):
            classify_prack_ones_block(n, f)


def test_three_blocks():
    res = classify_prack_three_blocks(2, 3, 5)
    assert res.count == 64 == res.predicted_count
    rng = random.Random(0)
    for r in rng.sample(res.representatives, 5):
        assert validate_perms(r.perms).is_rack
        assert has_profile(r, (2, 3, 5)) and kind(r).k == 10
    with pytest.raises(ValueError):
        classify_prack_three_blocks(3, 3, 4)


def test_oracle_agreement_order_five():
    report = enumerate_racks(5, "pracks")
    for pat, res in [((5,), classify_full_cycle(5)), ((1, 4), classify_prack_1_nm1(5)),
                     ((2, 3), classify_prack_m_nm(5, 2))]:
        matching = [c for c in report.classes if has_profile(c, pat)]
        assert len(matching) == res.count
        for rep in res.representatives:
            assert sum(1 for c in matching if are_isomorphic(rep, c)) == 1


EXPECTED_SECOND_TO_LAST = {
    3: ["(1 3)"],
    4: ["(1 4 2)"],
    5: ["(2 5 1 3)", "(3 5 2 1)"],
    6: [],
    7: ["(1 7 5 2 4 3)", "(1 7 5 3 2 4)"],
    8: ["(2 8 3 6 1 5 4)", "(4 8 5 3 2 6 1)"],
}


@pytest.mark.parametrize("n", sorted(EXPECTED_SECOND_TO_LAST))
def test_quandle_search_literal_second_to_last(n):
    found = quandle_search_1_nm1(n)
    got = {r.mu(n - 1) for r in found}
    assert got == {Permutation.parse(c, n) for c in EXPECTED_SECOND_TO_LAST[n]}


@pytest.mark.parametrize("n", range(3, 9))
def test_quandle_search_filters_do_not_change_result(n):
    base = [r.perms for r in quandle_search_1_nm1(n)]
    assert [r.perms for r in quandle_search_1_nm1(n, prune=False)] == base
    assert [r.perms for r in quandle_search_1_nm1(n, prune=False, use_equations=False)] == base


def test_quandle_search_examples():
    assert are_isomorphic(quandle_search_1_nm1(3)[0], dihedral(3))
    five = quandle_search_1_nm1(5)
    assert any(are_isomorphic(q, linear_alexander(5, 3)) for q in five)
    for q in five:
        assert kind(q).k == 0 and has_profile(q, (1, 4))


def test_profile_routing():
    assert parse_profile_shape("1,n-1", 7) == (1, 6)
    assert parse_profile_shape("n-3, 1,1,1", 6) == (1, 1, 1, 3)
    with pytest.raises(ValueError):
        parse_profile_shape("1,n", 4)
    with pytest.raises(ValueError):
        parse_profile_shape("x", 4)
    assert classify_profile((1, 3), 4).formula_name == "prack_1_nm1"
    assert classify_profile((2, 2), 4).formula_name == "prack_m_m"
    assert classify_profile((2, 3), 5).formula_name == "prack_m_nm"
    assert classify_profile((4,), 4).formula_name == "full_cycle"
    assert classify_profile((1, 1, 1, 3), 6).formula_name == "prack_ones_block"
    assert classify_profile((2, 3, 4), 9).formula_name == "prack_three_blocks"
    assert classify_profile((1, 4), 5, "quandles").count == 2
    assert classify_profile((1, 1, 2), 4) is None
