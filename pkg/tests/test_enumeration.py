import itertools

import pytest

from permrack.enumeration import (
    EnumerationBoundExceeded,
    count_with_profile,
    enumerate_racks,
    labelled_racks,
)
from permrack.invariants import ProfileSpec
from permrack.iso import are_isomorphic, canonical_form
from permrack.rack import check_table, cyclic, dihedral, from_table, trivial, validate_perms

# 1, 2, 6, 19, 74 racks and 1, 1, 3, 7, 22 quandles of orders 1..5 are the
# values computed by the search and agree with the published counts.
RACK_COUNTS = {1: 1, 2: 2, 3: 6, 4: 19}
QUANDLE_COUNTS = {1: 1, 2: 1, 3: 3, 4: 7}


def naive_tables(n):
    """Every n x n table over 1..n satisfying the two rack axioms."""
    cells = list(itertools.product(range(1, n + 1), repeat=n * n))
    for flat in cells:
        table = [list(flat[r * n:(r + 1) * n]) for r in range(n)]
        if check_table(table).is_rack:
            yield table


def test_small_orders(enumerated_small):
    for n, count in RACK_COUNTS.items():
        assert len(enumerated_small[n].classes) == count
    for n, count in QUANDLE_COUNTS.items():
        assert len(enumerate_racks(n, "quandles").classes) == count
    assert enumerate_racks(2, "quandles").classes == [trivial(2)]


def test_order_three_classes_include_named(enumerated_small):
    classes = enumerated_small[3].classes
    for named in (trivial(3), dihedral(3), cyclic(3)):
        assert sum(1 for c in classes if are_isomorphic(c, named)) == 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_naive_table_enumerator_agrees(n, enumerated_small):
    tables = list(naive_tables(n))
    labelled = list(labelled_racks(n))
    assert len(tables) == len(labelled)
    forms = {canonical_form(from_table(t)) for t in tables}
    assert forms == set(enumerated_small[n].classes)


def test_pracks_and_counts(enumerated_small):
    report = enumerate_racks(4, "pracks")
    assert all(any(c.op(i, i) != i for i in range(1, 5)) for c in report.classes)
    assert sum(report.counts_by_k.values()) == len(report.classes)
    assert 0 not in report.counts_by_k
    assert len(report.classes) + QUANDLE_COUNTS[4] == RACK_COUNTS[4]
    assert count_with_profile(report, ProfileSpec.constant_pattern((1, 3))) == 2
    assert count_with_profile(enumerated_small[4], ProfileSpec.constant_pattern((4,))) == 1


def test_quandles_include_v(sample_racks):
    report = enumerate_racks(4, "quandles")
    spec = ProfileSpec.constant_pattern((1, 3))
    assert any(are_isomorphic(sample_racks["V"], c) for c in report.classes if spec.matches(c))


def test_soundness_and_no_duplicates(enumerated_small):
    for report in enumerated_small.values():
        forms = [canonical_form(c) for c in report.classes]
        assert len(set(forms)) == len(forms)
        for c in report.classes:
            assert validate_perms(c.perms).is_rack


def test_profile_restricted_search():
    spec = ProfileSpec.constant_pattern((1, 1, 1, 3))
    report = enumerate_racks(6, "pracks", spec)
    assert len(report.classes) == 5
    assert all(spec.matches(c) for c in report.classes)


def test_bounds(monkeypatch):
    with pytest.raises(EnumerationBoundExceeded):
        enumerate_racks(7)
    monkeypatch.setenv("PERMRACK_NODE_BUDGET", "5")
    with pytest.raises(EnumerationBoundExceeded, match="node budget"):
        enumerate_racks(4)
    monkeypatch.setenv("PERMRACK_NODE_BUDGET", "nonsense")
    with pytest.raises(ValueError):
        enumerate_racks(3)
    with pytest.raises(ValueError):
        enumerate_racks(3, "groups")


def test_report_summary(enumerated_small):
    s = enumerated_small[3].summary()
    assert s["classes"] == 6 and s["labelled"] == 13
    assert sum(e["count"] for e in s["counts_by_profile"]) == 6
