import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from permrack.iso import (
    are_isomorphic,
    are_isomorphic_brute_force,
    automorphism_count,
    canonical_form,
    canonical_labeling,
    is_isomorphism,
    relabel,
)
from permrack.invariants import connectivity, delta_lengths, detail, orbit_sizes, profile
from permrack.perm import Permutation, inverse
from permrack.rack import (
    alexander_quotient,
    cyclic,
    dihedral,
    is_symmetric,
    kind,
    linear_alexander,
    octahedron,
    trivial,
    validate_perms,
)

POOL = [
    trivial(3), cyclic(3), dihedral(3), dihedral(4), dihedral(5), dihedral(6), cyclic(5),
    linear_alexander(5, 2), linear_alexander(5, 3), linear_alexander(5, 4),
    alexander_quotient(2, [1, 1, 1]), octahedron(),
]


def test_relabel_examples():
    r3 = dihedral(3)
    alpha = Permutation.parse("(1 2)", 3)
    assert relabel(r3, Permutation.identity(3)) == r3
    # every permutation of three points is an automorphism of R3
    assert relabel(r3, alpha) == r3
    # conjugating in place without moving the indices is not a rack
    assert not validate_perms([Permutation.parse(c, 3) for c in ("(1 3)", "(2 3)", "(1 2)")]).is_rack
    swap = Permutation.parse("(1 2)", 6)
    assert relabel(octahedron(), swap).mu(2) == octahedron().mu(1).conjugate(swap)
    for r in POOL:
        a = Permutation._raw(tuple(random.Random(r.n).sample(range(r.n), r.n)))
        assert relabel(relabel(r, a), inverse(a)) == r
    with pytest.raises(ValueError):
        relabel(r3, Permutation.identity(4))


def test_sample_non_isomorphism(sample_racks):
    t, u, v = (sample_racks[k] for k in "TUV")
    assert not are_isomorphic(t, u) and not are_isomorphic(t, v) and not are_isomorphic(u, v)
    assert not are_isomorphic(sample_racks["R"], sample_racks["S"])
    assert not are_isomorphic(trivial(3), trivial(4))


def test_witness_found_on_relabelled_copies():
    rng = random.Random(5)
    for r in POOL:
        for _ in range(3):
            alpha = Permutation._raw(tuple(rng.sample(range(r.n), r.n)))
            other = relabel(r, alpha)
            res = are_isomorphic(r, other)
            assert res and is_isomorphism(r, other, res.witness)


def test_canonical_form_examples(sample_racks):
    assert canonical_form(trivial(4)) == trivial(4)
    assert canonical_form(sample_racks["U"]) != canonical_form(sample_racks["V"])
    rng = random.Random(9)
    for r in [x for x in POOL if x.n <= 5]:
        c = canonical_form(r)
        assert canonical_form(c) == c
        for _ in range(5):
            alpha = Permutation._raw(tuple(rng.sample(range(r.n), r.n)))
            assert canonical_form(relabel(r, alpha)) == c
    rack, alpha = canonical_labeling(octahedron())
    assert relabel(octahedron(), alpha) == rack
    with pytest.raises(ValueError):
        canonical_form(dihedral(9))


def test_canonical_distinguishes_pool():
    forms = {canonical_form(r) for r in POOL}
    classes = []
    for r in POOL:
        if not any(are_isomorphic(r, c) for c in classes):
            classes.append(r)
    assert len(forms) == len(classes)


def test_completeness_against_brute_force(enumerated_small):
    for n in (3, 4):
        classes = enumerated_small[n].classes
        rng = random.Random(n)
        shuffled = [relabel(c, Permutation._raw(tuple(rng.sample(range(n), n)))) for c in classes]
        for a, b in itertools.product(classes, shuffled):
            fast, slow = are_isomorphic(a, b), are_isomorphic_brute_force(a, b)
            assert fast.isomorphic == slow.isomorphic
            if fast:
                assert is_isomorphism(a, b, fast.witness)


def test_invariants_preserved(enumerated_small):
    rng = random.Random(1)
    for r in enumerated_small[4].classes:
        alpha = Permutation._raw(tuple(rng.sample(range(4), 4)))
        s = relabel(r, alpha)
        assert sorted(profile(r)) == sorted(profile(s))
        assert detail(r) == detail(s) and kind(r) == kind(s)
        assert orbit_sizes(r) == orbit_sizes(s) and delta_lengths(r) == delta_lengths(s)
        assert connectivity(r) == connectivity(s)
        assert is_symmetric(r) == is_symmetric(s)


def test_automorphisms():
    assert automorphism_count(trivial(3)) == 6
    assert automorphism_count(dihedral(3)) == 6


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(POOL), st.randoms(use_true_random=False))
def test_relabel_property(r, rnd):
    alpha = Permutation._raw(tuple(rnd.sample(range(r.n), r.n)))
    s = relabel(r, alpha)
    res = are_isomorphic(r, s)
    assert res.isomorphic and is_isomorphism(r, s, res.witness)
    assert is_symmetric(r) == is_symmetric(s)
