"""Rack isomorphism: witness search, relabeling and canonical forms.

A bijection alpha is an isomorphism exactly when
``mu'_{alpha(j)} == alpha mu_j alpha^-1`` for every j. The search assigns
alpha element by element, restricted to elements with matching local
invariants, and propagates ``alpha(i * j) = alpha(i) *' alpha(j)`` (and the
same for the dual operation) after every choice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .invariants import delta_orbits, detail, orbits, profile
from .perm import Permutation, conjugate, inverse, pattern
from .rack import Rack, kind

CANONICAL_MAX_ORDER = 8


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: Permutation | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def relabel(r: Rack, alpha: Permutation) -> Rack:
    """The copy of `r` whose element ``alpha(x)`` plays the role of ``x``."""
    if alpha.n != r.n:
        raise ValueError(f"degree mismatch: {alpha.n} != {r.n}")
    new = [None] * r.n
    for j, mu in enumerate(r.perms):
        new[alpha._img[j]] = conjugate(mu, alpha)
    return Rack(new, _trusted=True)


def is_isomorphism(a: Rack, b: Rack, alpha: Permutation) -> bool:
    if a.n != b.n or alpha.n != a.n:
        return False
    return all(b.perms[alpha._img[j]] == conjugate(a.perms[j], alpha) for j in range(a.n))


def _element_signatures(r: Rack) -> list[tuple]:
    orbit_of = {}
    for o in orbits(r):
        for x in o:
            orbit_of[x] = len(o)
    delta_of = {}
    for d in delta_orbits(r):
        for x in d:
            delta_of[x] = len(d)
    mult = {}
    for p in r.perms:
        mult[p] = mult.get(p, 0) + 1
    return [
        (pattern(p), orbit_of[i + 1], delta_of[i + 1], p._img[i] == i, mult[p])
        for i, p in enumerate(r.perms)
    ]


def _quick_reject(a: Rack, b: Rack) -> bool:
    if a.n != b.n or kind(a) != kind(b):
        return True
    if sorted(profile(a)) != sorted(profile(b)) or detail(a) != detail(b):
        return True
    if sorted(map(len, orbits(a))) != sorted(map(len, orbits(b))):
        return True
    return sorted(map(len, delta_orbits(a))) != sorted(map(len, delta_orbits(b)))


def are_isomorphic(a: Rack, b: Rack) -> IsoResult:
    if _quick_reject(a, b):
        return IsoResult(False)
    n = a.n
    sa, sb = _element_signatures(a), _element_signatures(b)
    if sorted(sa) != sorted(sb):
        return IsoResult(False)
    cand = [[y for y in range(n) if sb[y] == sa[x]] for x in range(n)]
    ops_a = (a._cols, a._inv_cols)
    ops_b = (b._cols, b._inv_cols)

    def propagate(alpha: list, used: list, start: int) -> bool:
        assigned = [x for x in range(n) if alpha[x] >= 0]
        queue = [start]
        while queue:
            x = queue.pop()
            for y in list(assigned):
                for u, v in ((x, y), (y, x)):
                    for oa, ob in zip(ops_a, ops_b):
                        z = oa[v][u]
                        t = ob[alpha[v]][alpha[u]]
                        if alpha[z] >= 0:
                            if alpha[z] != t:
                                return False
                        elif used[t] or sb[t] != sa[z]:
                            return False
                        else:
                            alpha[z] = t
                            used[t] = True
                            assigned.append(z)
                            queue.append(z)
        return True

    def search(alpha: list, used: list):
        free = [x for x in range(n) if alpha[x] < 0]
        if not free:
            return alpha
        x = min(free, key=lambda e: (sum(1 for y in cand[e] if not used[y]), e))
        for y in cand[x]:
            if used[y]:
                continue
            al, us = alpha[:], used[:]
            al[x] = y
            us[y] = True
            if propagate(al, us, x):
                found = search(al, us)
                if found is not None:
                    return found
        return None

    found = search([-1] * n, [False] * n)
    if found is None:
        return IsoResult(False)
    witness = Permutation._raw(tuple(found))
    if not is_isomorphism(a, b, witness):
        raise AssertionError("isomorphism search produced an invalid witness")
    return IsoResult(True, witness)


def are_isomorphic_brute_force(a: Rack, b: Rack) -> IsoResult:
    """Try every bijection; only sensible for small orders."""
    if a.n != b.n:
        return IsoResult(False)
    for img in itertools.permutations(range(a.n)):
        alpha = Permutation._raw(img)
        if is_isomorphism(a, b, alpha):
            return IsoResult(True, alpha)
    return IsoResult(False)


@lru_cache(maxsize=None)
def _symmetric_group(n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
    inv = np.argsort(perms, axis=1).astype(np.int8)
    return perms, inv


def _lexmin_row(rows: np.ndarray) -> int:
    idx = np.arange(rows.shape[0])
    for col in range(rows.shape[1]):
        column = rows[idx, col]
        idx = idx[column == column.min()]
        if idx.size == 1:
            break
    return int(idx[0])


def canonical_labeling(r: Rack) -> tuple[Rack, Permutation]:
    """Canonical copy of `r` and the relabeling that produces it.

    The canonical copy minimises, over every relabeling, the concatenation of
    the one-line images ``mu'_1 mu'_2 ... mu'_n`` in lexicographic order.
    """
    n = r.n
    if n > CANONICAL_MAX_ORDER:
        raise ValueError(f"canonical forms are exact only up to order {CANONICAL_MAX_ORDER}")
    alphas, betas = _symmetric_group(n)
    m = np.array(r._cols, dtype=np.int8)
    # entry [a, b] of relabeling (alpha, beta) is alpha(mu_{beta(a)}(beta(b)))
    inner = m[betas[:, :, None], betas[:, None, :]]
    vals = np.take_along_axis(alphas, inner.reshape(len(alphas), -1).astype(np.intp), axis=1)
    best = _lexmin_row(vals)
    images = vals[best].reshape(n, n)
    rack = Rack([Permutation._raw(tuple(int(x) for x in row)) for row in images], _trusted=True)
    alpha = Permutation._raw(tuple(int(x) for x in alphas[best]))
    return rack, alpha


def canonical_form(r: Rack) -> Rack:
    return canonical_labeling(r)[0]


def canonical_key(r: Rack) -> bytes:
    """Hashable key equal for isomorphic racks of order at most 8."""
    rack = canonical_form(r)
    return bytes(x for col in rack._cols for x in col)


def automorphism_count(r: Rack) -> int:
    n = r.n
    return sum(1 for img in itertools.permutations(range(n)) if is_isomorphism(r, r, Permutation._raw(img)))
