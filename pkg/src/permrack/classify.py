"""Racks with prescribed constant profiles, built from closed-form families.

Each ``classify_*`` function returns one representative per isomorphism
class of its family together with the closed-form count for that family.
:func:`quandle_search_1_nm1` is a search rather than a construction: it
solves for the quandles whose every permutation has one fixed point.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache

from .invariants import ProfileSpec
from .iso import are_isomorphic
from .perm import Permutation, compose, conjugate, cycle_power, inverse, power, product
from .rack import Rack, validate_perms


@dataclass
class ClassificationResult:
    representatives: list
    predicted_count: int
    formula_name: str
    parameters: list = field(default_factory=list)  # one entry per representative

    @property
    def count(self) -> int:
        return len(self.representatives)

    def to_dict(self) -> dict:
        return {
            "formula": self.formula_name,
            "predicted_count": self.predicted_count,
            "actual_count": self.count,
            "racks": [r.to_dict() for r in self.representatives],
        }


# -- counting helpers -------------------------------------------------------

def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def partitions_exact(f: int, i: int) -> int:
    """Partitions of f into exactly i positive summands."""
    if f < 0 or i < 0:
        return 0
    if f == 0 and i == 0:
        return 1
    if f == 0 or i == 0 or i > f:
        return 0
    # either some part equals 1, or subtract 1 from every part
    return partitions_exact(f - 1, i - 1) + partitions_exact(f - i, i)


def binom(a: int, b: int) -> int:
    return math.comb(a, b)


def units(m: int) -> list[int]:
    """Residues 1 <= k < m coprime to m; for m == 1 the single residue 0."""
    if m == 1:
        return [0]
    return [k for k in range(1, m) if math.gcd(k, m) == 1]


def ones_block_formula(n: int, f: int) -> int:
    """Closed-form count for the profile {1 (f times), n - f}, including the
    extra swapped-block class when f == n - f."""
    phi = euler_phi(n - f)
    top = min(f, phi)
    total = sum(binom(phi, i) * partitions_exact(f, i) for i in range(1, top + 1))
    return total + (1 if f == n - f else 0)


def ones_block_multiset_count(n: int, f: int) -> int:
    """Number of exponent multisets of size f drawn from the units mod n - f,
    plus the swapped-block class when f == n - f."""
    phi = euler_phi(n - f)
    return binom(phi + f - 1, f) + (1 if f == n - f else 0)


# -- constructions ----------------------------------------------------------

def _block(start: int, size: int) -> list[int]:
    return list(range(start, start + size))


def _uniform(n: int, groups: list[tuple[int, Permutation]]) -> Rack:
    """Rack whose first groups[0][0] slots hold groups[0][1], and so on."""
    perms = [p for size, p in groups for _ in range(size)]
    if len(perms) != n:
        raise AssertionError("group sizes do not cover the order")
    return Rack(perms)


def classify_full_cycle(n: int) -> ClassificationResult:
    """Profile {n}: the only class is the cyclic rack."""
    if n < 1:
        raise ValueError("order must be positive")
    shift = cycle_power(_block(1, n), 1, n) if n > 1 else Permutation.identity(1)
    return ClassificationResult([_uniform(n, [(n, shift)])], 1, "full_cycle", [()])


def classify_prack_1_nm1(n: int) -> ClassificationResult:
    """Pracks of constant profile {1, n-1}."""
    if n <= 2:
        raise ValueError("order must exceed 2")
    block = _block(1, n - 1)
    base = cycle_power(block, 1, n)
    reps, params = [], []
    for k in units(n - 1):
        reps.append(_uniform(n, [(n - 1, base), (1, cycle_power(block, k, n))]))
        params.append((k,))
    return ClassificationResult(reps, euler_phi(n - 1), "prack_1_nm1", params)


def _two_blocks(n: int, m: int, k: int, l: int) -> Rack:
    a, b = _block(1, m), _block(m + 1, n - m)
    first = compose(cycle_power(a, 1, n), cycle_power(b, l, n))
    second = compose(cycle_power(a, k, n), cycle_power(b, 1, n))
    return _uniform(n, [(m, first), (n - m, second)])


def classify_prack_m_nm(n: int, m: int) -> ClassificationResult:
    """Pracks of constant profile {m, n-m} with 1 < m <= n - m."""
    if n <= 3 or not 1 < m <= n - m:
        raise ValueError("need n > 3 and 1 < m <= n - m")
    reps, params = [], []
    if m < n - m:
        for k in units(m):
            for l in units(n - m):
                reps.append(_two_blocks(n, m, k, l))
                params.append((k, l))
        return ClassificationResult(reps, euler_phi(m) * euler_phi(n - m), "prack_m_nm", params)
    phi = euler_phi(m)
    for k in units(m):
        for l in units(m):
            if l <= k:
                reps.append(_two_blocks(n, m, k, l))
                params.append((k, l))
    return ClassificationResult(reps, (1 + phi) * phi // 2, "prack_m_m", params)


def classify_prack_ones_block(n: int, f: int) -> ClassificationResult:
    """Pracks of constant profile {1 (f times), n - f}.

    One representative per multiset of f exponents coprime to n - f, plus
    the swapped-block rack when f == n - f. The reported predicted count is
    the closed-form partition sum; :func:`ones_block_multiset_count` gives
    the number of multisets, which is what the representatives realise.
    """
    if n <= 3 or not 2 < f < n or n - f < 2:
        raise ValueError("need n > 3, 2 < f < n and n - f >= 2")
    cyc = _block(1, n - f)
    base = cycle_power(cyc, 1, n)
    reps, params = [], []
    for ks in itertools.combinations_with_replacement(units(n - f), f):
        groups = [(n - f, base)] + [(1, cycle_power(cyc, k, n)) for k in ks]
        reps.append(_uniform(n, groups))
        params.append(ks)
    if f == n - f:
        second = cycle_power(_block(n - f + 1, f), 1, n)
        reps.append(_uniform(n, [(n - f, base), (f, second)]))
        params.append(("swapped",))
    return ClassificationResult(reps, ones_block_formula(n, f), "prack_ones_block", params)


def classify_prack_three_blocks(m1: int, m2: int, m3: int) -> ClassificationResult:
    """Pracks of constant profile {m1, m2, m3} with 1 < m1 < m2 < m3."""
    if not 1 < m1 < m2 < m3:
        raise ValueError("need 1 < m1 < m2 < m3")
    n = m1 + m2 + m3
    b1, b2, b3 = _block(1, m1), _block(m1 + 1, m2), _block(m1 + m2 + 1, m3)
    reps, params = [], []
    for k12, k13, k21, k23, k31, k32 in itertools.product(
        units(m1), units(m1), units(m2), units(m2), units(m3), units(m3)
    ):
        first = product([cycle_power(b1, 1, n), cycle_power(b2, k21, n), cycle_power(b3, k31, n)], n)
        second = product([cycle_power(b1, k12, n), cycle_power(b2, 1, n), cycle_power(b3, k32, n)], n)
        third = product([cycle_power(b1, k13, n), cycle_power(b2, k23, n), cycle_power(b3, 1, n)], n)
        reps.append(_uniform(n, [(m1, first), (m2, second), (m3, third)]))
        params.append((k12, k13, k21, k23, k31, k32))
    predicted = (euler_phi(m1) * euler_phi(m2) * euler_phi(m3)) ** 2
    return ClassificationResult(reps, predicted, "prack_three_blocks", params)


# -- quandles of constant profile {1, n-1} ---------------------------------

def _violates_pruning(s: Permutation, n: int) -> bool:
    """Necessary conditions on mu_{n-1}; True means s can be discarded."""
    if any(s(i) == i + 1 for i in range(1, n - 1)):
        return True
    if n <= 3:
        return False
    inv = inverse(s)
    if s(n - 2) == n and not (n % 2 == 1 and s(n) == (n - 1) // 2):
        return True
    if s(n) == n - 2 and inv(n) != 1:
        return True
    if s(n) == 1 and not (n % 2 == 1 and inv(n) == (n - 1) // 2):
        return True
    return s(1) == n and s(n) != n - 2


def _solves_system(s: Permutation, shift: Permutation, n: int) -> bool:
    inv = inverse(s)

    def around(e: int) -> Permutation:
        return compose(compose(power(shift, e), s), power(shift, -e))

    if conjugate(shift, s) != around(s(n)):
        return False
    if conjugate(shift, inv) != around(inv(n)):
        return False
    powers = {power(s, k) for k in range(1, n - 1)}
    for l in range(1, n - 1):
        if l == inv(n):
            continue
        lhs = compose(compose(power(shift, -s(l)), s), power(shift, l))
        if lhs not in powers:
            return False
    return True


def quandle_search_1_nm1(n: int, *, prune: bool = True, use_equations: bool = True) -> list[Rack]:
    """All quandles of constant profile {1, n-1} up to isomorphism.

    mu_n is fixed to ``(1 2 ... n-1)``; mu_{n-1} ranges over the (n-1)-cycles
    of the remaining elements that fix n-1. Candidates may be filtered by the
    known necessary conditions (`prune`) and by the conjugation equations
    (`use_equations`); the survivors determine the other permutations by
    conjugating with powers of mu_n and are fully validated.
    """
    if n <= 2:
        raise ValueError("order must exceed 2")
    shift = cycle_power(_block(1, n - 1), 1, n)
    others = [x for x in range(1, n + 1) if x != n - 1]
    found: list[Rack] = []
    for tail in itertools.permutations(others[1:]):
        s = Permutation.from_cycles([[others[0], *tail]], n)
        if prune and _violates_pruning(s, n):
            continue
        if use_equations and not _solves_system(s, shift, n):
            continue
        perms = [compose(compose(power(shift, k), s), power(shift, -k)) for k in range(1, n - 1)]
        perms += [s, shift]
        if not validate_perms(perms).is_rack:
            continue
        r = Rack(perms, _trusted=True)
        if not any(are_isomorphic(r, q) for q in found):
            found.append(r)
    return found


# -- routing by profile -----------------------------------------------------

_ENTRY_RE = re.compile(r"(?P<const>\d+)|n(?P<offset>[+-]\d+)?")

def parse_profile_shape(text: str, n: int) -> tuple[int, ...]:
    """Read a pattern such as ``"1,n-1"``, ``"2,2"`` or ``"1,1,1,n-3"``."""
    parts = []
    for tok in text.replace(" ", "").split(","):
        match = _ENTRY_RE.fullmatch(tok)
        if match is None:
            raise ValueError(f"cannot read profile entry {tok!r}")
        if match["const"] is not None:
            value = int(match["const"])
        else:
            value = n + int(match["offset"] or 0)
        if value < 1:
            raise ValueError(f"profile entry {tok!r} evaluates to {value}")
        parts.append(value)
    pat = tuple(sorted(parts))
    if sum(pat) != n:
        raise ValueError(f"pattern {list(pat)} does not sum to {n}")
    return pat


def classify_profile(pat: tuple[int, ...], n: int, mode: str = "pracks"):
    """Dispatch a constant profile to its family.

    Returns a ClassificationResult, or None when no family covers the
    pattern in this mode (callers then fall back to enumeration).
    """
    pat = tuple(sorted(pat))
    if mode == "quandles":
        if pat == (1, n - 1) and n > 2:
            reps = quandle_search_1_nm1(n)
            return ClassificationResult(reps, len(reps), "quandle_search_1_nm1")
        return None
    if mode != "pracks":
        return None
    ones = pat.count(1)
    rest = [x for x in pat if x != 1]
    if pat == (n,):
        return classify_full_cycle(n)
    if ones == 1 and rest == [n - 1] and n > 2:
        return classify_prack_1_nm1(n)
    if ones == 0 and len(rest) == 2 and n > 3:
        return classify_prack_m_nm(n, rest[0])
    if ones > 2 and len(rest) == 1 and n > 3:
        return classify_prack_ones_block(n, ones)
    if ones == 0 and len(rest) == 3 and len(set(rest)) == 3:
        return classify_prack_three_blocks(*rest)
    return None


def constant_spec(pat: tuple[int, ...]) -> ProfileSpec:
    return ProfileSpec.constant_pattern(pat)
