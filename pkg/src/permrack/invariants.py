"""Isomorphism invariants and structure probes for racks."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable

from .perm import Pattern, cycle_decompose, pattern
from .rack import Rack, is_quasigroup, is_symmetric, kind

Profile = tuple  # tuple[Pattern, ...], one pattern per element
Detail = tuple  # tuple[(Pattern, multiplicities), ...]
OrbitPartition = tuple  # tuple of sorted element tuples, ordered by least element
DeltaOrbit = tuple  # (i, i*i, (i*i)*(i*i), ...), one period


@dataclass(frozen=True)
class Connectivity:
    connected: bool
    c: int | None = None  # defined only when connected


def profile(r: Rack) -> Profile:
    return tuple(pattern(p) for p in r.perms)


def _pattern_groups(r: Rack) -> dict[Pattern, Counter]:
    groups: dict[Pattern, Counter] = {}
    for p in r.perms:
        groups.setdefault(pattern(p), Counter())[p] += 1
    return groups


def detail(r: Rack) -> Detail:
    """One entry per distinct pattern: the pattern and the sorted sizes of
    the groups of identical permutations realising it."""
    return tuple(
        sorted((pat, tuple(sorted(cnt.values()))) for pat, cnt in _pattern_groups(r).items())
    )


def absolute_detail(r: Rack) -> tuple:
    """Like :func:`detail` but each multiplicity carries its permutation;
    within an entry the pairs are ordered by one-line image."""
    out = []
    for pat, cnt in _pattern_groups(r).items():
        pairs = tuple((m, p) for p, m in sorted(cnt.items(), key=lambda kv: kv[0].image))
        out.append((pat, pairs))
    return tuple(sorted(out, key=lambda e: (e[0], tuple(sorted(m for m, _ in e[1])))))


def orbits(r: Rack) -> OrbitPartition:
    """Orbits by merging the supports of the non-trivial cycles of all mu_j.

    Elements moved by no cycle are singleton orbits. Each non-singleton orbit
    grows from the first unused support by absorbing, layer by layer, every
    unused support that meets a support absorbed in the previous layer.
    """
    supports: list[frozenset[int]] = []
    seen_cycles = set()
    for p in r.perms:
        for cyc in cycle_decompose(p).nontrivial():
            if cyc not in seen_cycles:
                seen_cycles.add(cyc)
                supports.append(frozenset(cyc))
    moved = set().union(*supports) if supports else set()
    result = [(x,) for x in range(1, r.n + 1) if x not in moved]

    remaining = list(range(len(supports)))
    while remaining:
        first = remaining.pop(0)
        orbit = set(supports[first])
        frontier = [first]
        while frontier:
            touching = [k for k in remaining if any(supports[k] & supports[f] for f in frontier)]
            for k in touching:
                orbit |= supports[k]
            remaining = [k for k in remaining if k not in touching]
            frontier = touching
        result.append(tuple(sorted(orbit)))
    return tuple(sorted(result))


def orbits_by_closure(r: Rack) -> OrbitPartition:
    """Orbits as closures of {i} under every x -> x*k and x -> x *bar k."""
    n = r.n
    cols, inv = r._cols, r._inv_cols
    label = [-1] * n
    out = []
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = s
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for k in range(n):
                for y in (cols[k][x], inv[k][x]):
                    if label[y] < 0:
                        label[y] = s
                        comp.append(y)
                        queue.append(y)
        out.append(tuple(sorted(x + 1 for x in comp)))
    return tuple(sorted(out))


def delta_orbit(r: Rack, i: int) -> DeltaOrbit:
    """The sequence i, i*i, (i*i)*(i*i), ... up to its period."""
    seq = [i]
    x = r.op(i, i)
    while x != i:
        seq.append(x)
        x = r.op(x, x)
        if len(seq) > r.n:
            raise AssertionError("delta sequence is not periodic; input is not a rack")
    return tuple(seq)


def delta_orbits(r: Rack) -> tuple[DeltaOrbit, ...]:
    """The distinct delta-orbits, each rotated to start at its least element."""
    seen: set[int] = set()
    out = []
    for i in range(1, r.n + 1):
        if i in seen:
            continue
        d = delta_orbit(r, i)
        seen.update(d)
        out.append(d)
    return tuple(out)


def connectivity(r: Rack) -> Connectivity:
    """Breadth-first distances where each ``*k`` or ``*bar k`` step costs 1."""
    n = r.n
    cols, inv = r._cols, r._inv_cols
    worst = 0
    for s in range(n):
        dist = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for k in range(n):
                for y in (cols[k][x], inv[k][x]):
                    if dist[y] < 0:
                        dist[y] = dist[x] + 1
                        queue.append(y)
        if min(dist) < 0:
            return Connectivity(False)
        worst = max(worst, max(dist))
    return Connectivity(True, worst)


def is_indecomposable(r: Rack) -> bool:
    return len(orbits(r)) == 1


def _subset(r: Rack, subset: Iterable[int]) -> frozenset[int]:
    s = frozenset(subset)
    if not s:
        raise ValueError("subset must be non-empty")
    if not s <= set(range(1, r.n + 1)):
        raise ValueError(f"subset must lie in 1..{r.n}")
    return s


def is_subrack(r: Rack, subset: Iterable[int]) -> bool:
    """Closed under ``*`` and ``*bar`` with both arguments in the subset."""
    s = _subset(r, subset)
    return all(r.op(i, j) in s and r.dual_op(i, j) in s for i in s for j in s)


def is_stable_subrack(r: Rack, subset: Iterable[int]) -> bool:
    """A subrack with ``i * j`` in the subset for every i in it and every j."""
    s = _subset(r, subset)
    return is_subrack(r, s) and all(r.op(i, j) in s for i in s for j in range(1, r.n + 1))


def orbit_sizes(r: Rack) -> tuple[int, ...]:
    return tuple(sorted(len(o) for o in orbits(r)))


def delta_lengths(r: Rack) -> tuple[int, ...]:
    return tuple(sorted(len(d) for d in delta_orbits(r)))


def summary(r: Rack) -> dict:
    """Everything the ``info`` command reports, as JSON-ready data."""
    conn = connectivity(r)
    return {
        "profile": [list(p) for p in profile(r)],
        "detail": [[list(pat), list(mult)] for pat, mult in detail(r)],
        "k": kind(r).k,
        "orbits": [list(o) for o in orbits(r)],
        "delta_orbits": [list(d) for d in delta_orbits(r)],
        "connected": conn.connected,
        "c": conn.c,
        "symmetric": is_symmetric(r),
        "quasigroup": is_quasigroup(r),
    }



@dataclass(frozen=True)
class ProfileSpec:
    """A requested profile: one pattern for every element, or one per element.

    Matching is up to relabeling, so an explicit sequence is compared as a
    multiset of patterns.
    """

    patterns: tuple
    constant: bool

    @classmethod
    def constant_pattern(cls, pat: Iterable[int]) -> "ProfileSpec":
        return cls((tuple(sorted(pat)),), True)

    @classmethod
    def per_element(cls, pats: Iterable[Iterable[int]]) -> "ProfileSpec":
        return cls(tuple(tuple(sorted(p)) for p in pats), False)

    def check_order(self, n: int) -> None:
        if any(sum(p) != n for p in self.patterns):
            raise ValueError(f"every pattern must sum to the order {n}")
        if not self.constant and len(self.patterns) != n:
            raise ValueError(f"expected {n} patterns, got {len(self.patterns)}")

    def allowed_patterns(self) -> frozenset:
        return frozenset(self.patterns)

    def matches(self, r: Rack) -> bool:
        prof = profile(r)
        if self.constant:
            return all(p == self.patterns[0] for p in prof)
        return len(prof) == len(self.patterns) and sorted(prof) == sorted(self.patterns)
