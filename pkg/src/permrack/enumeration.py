"""Exhaustive enumeration of small racks up to isomorphism.

The search fills the slots mu_1..mu_n in increasing order. Each time a slot
receives a permutation, every conjugation constraint between assigned slots
is evaluated; constraints that name an empty slot fill it, and contradictory
ones cut the branch. Complete sequences are validated once more and
deduplicated through their canonical form.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass, field

from .invariants import ProfileSpec, profile
from .iso import canonical_form
from .perm import Permutation, pattern
from .rack import Rack, kind, validate_perms

MODES = ("racks", "quandles", "pracks")
MAX_ORDER = 6
NODE_BUDGET_ENV = "PERMRACK_NODE_BUDGET"
DEFAULT_NODE_BUDGET = 20_000_000


class EnumerationBoundExceeded(RuntimeError):
    """The search exceeded the configured order bound or node budget."""


@dataclass
class EnumerationReport:
    order: int
    mode: str
    classes: list
    counts_by_profile: dict = field(default_factory=dict)
    counts_by_k: dict = field(default_factory=dict)
    labelled_count: int = 0
    nodes: int = 0

    def summary(self) -> dict:
        return {
            "order": self.order,
            "mode": self.mode,
            "classes": len(self.classes),
            "labelled": self.labelled_count,
            "counts_by_k": {str(k): v for k, v in sorted(self.counts_by_k.items())},
            "counts_by_profile": [
                {"profile": [list(p) for p in prof], "count": c}
                for prof, c in sorted(self.counts_by_profile.items())
            ],
        }


def node_budget() -> int:
    raw = os.environ.get(NODE_BUDGET_ENV)
    if raw is None:
        return DEFAULT_NODE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{NODE_BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{NODE_BUDGET_ENV} must be positive")
    return value


def _conj(a: tuple, g: tuple) -> tuple:
    # g a g^-1 on 0-based images
    out = [0] * len(a)
    for y, gy in enumerate(g):
        out[gy] = g[a[y]]
    return tuple(out)


def _inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def labelled_racks(n: int, mode: str = "racks", spec: ProfileSpec | None = None,
                   budget: int | None = None):
    """Yield every valid permutation sequence of order n (0-based images).

    In ``quandles`` mode slot j only admits permutations fixing j. `spec`
    restricts each slot to the allowed patterns. Yields tuples of images and
    finally returns the number of search nodes visited.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    budget = node_budget() if budget is None else budget
    allowed = spec.allowed_patterns() if spec is not None else None
    every = [p for p in itertools.permutations(range(n))
             if allowed is None or pattern(Permutation._raw(p)) in allowed]
    candidates = [
        [p for p in every if mode != "quandles" or p[j] == j] for j in range(n)
    ]
    cand_sets = [set(c) for c in candidates]
    inverses = {p: _inv(p) for p in every}
    nodes = 0

    def assign(slots: list, j: int, p: tuple) -> bool:
        """Place p at j and close under forced values; False on conflict."""
        queue = [(j, p)]
        while queue:
            x, px = queue.pop()
            cur = slots[x]
            if cur is not None:
                if cur != px:
                    return False
                continue
            if px not in cand_sets[x]:
                return False
            slots[x] = px
            pinv = inverses[px]
            for y in range(n):
                py = slots[y]
                if py is None:
                    continue
                # mu_{mu_x(y)} = mu_x mu_y mu_x^-1 and the dual form, both ways
                queue.append((px[y], _conj(py, px)))
                queue.append((pinv[y], _conj(py, pinv)))
                if y != x:
                    pyinv = inverses[py]
                    queue.append((py[x], _conj(px, py)))
                    queue.append((pyinv[x], _conj(px, pyinv)))
        return True

    def search(slots: list):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise EnumerationBoundExceeded(
                f"node budget {budget} exhausted at order {n}; raise {NODE_BUDGET_ENV} to continue"
            )
        try:
            j = slots.index(None)
        except ValueError:
            yield tuple(slots)
            return
        for p in candidates[j]:
            nxt = slots[:]
            if assign(nxt, j, p):
                yield from search(nxt)

    yield from search([None] * n)
    return nodes


def enumerate_racks(n: int, mode: str = "racks", spec: ProfileSpec | None = None) -> EnumerationReport:
    """All isomorphism classes of racks of order n in the given mode.

    ``pracks`` keeps the racks with at least one element violating
    ``i * i == i``. Classes are canonical forms, sorted by their images.
    """
    if not 1 <= n <= MAX_ORDER:
        raise EnumerationBoundExceeded(f"enumeration supports orders 1..{MAX_ORDER}, got {n}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if spec is not None:
        spec.check_order(n)
    seen: dict[tuple, Rack] = {}
    labelled = 0
    gen = labelled_racks(n, mode, spec)
    nodes = 0
    while True:
        try:
            imgs = next(gen)
        except StopIteration as stop:
            nodes = stop.value
            break
        perms = [Permutation._raw(p) for p in imgs]
        if not validate_perms(perms).is_rack:
            raise AssertionError("propagation admitted an invalid sequence")
        r = Rack(perms, _trusted=True)
        if mode == "pracks" and kind(r).k == 0:
            continue
        if spec is not None and not spec.matches(r):
            continue
        labelled += 1
        form = canonical_form(r)
        seen.setdefault(form._cols, form)
    classes = sorted(seen.values(), key=lambda r: r._cols)
    by_profile = Counter(tuple(sorted(profile(r))) for r in classes)
    by_k = Counter(kind(r).k for r in classes)
    return EnumerationReport(n, mode, classes, dict(by_profile), dict(by_k), labelled, nodes)


def count_with_profile(report: EnumerationReport, spec: ProfileSpec) -> int:
    spec.check_order(report.order)
    return sum(1 for r in report.classes if spec.matches(r))

