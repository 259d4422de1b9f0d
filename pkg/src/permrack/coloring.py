"""Counting colorings of knot diagrams by finite quandles.

Diagrams are read from PD codes: each crossing ``X(i, j, k, l)`` lists the
four edge labels counterclockwise starting from the incoming under-strand,
so ``i`` enters under, ``k`` leaves under and ``j``, ``l`` lie on the over
strand. Edges joined across an over-crossing form one arc.

Coloring convention: at a positive crossing the outgoing under-arc gets
``under_in * over``; at a negative one it gets ``under_in *bar over``.
Taking the mirror flips every sign and so swaps the two operations.
"""

from __future__ import annotations

import itertools
import json
import re
import warnings
from collections import Counter
from dataclasses import dataclass

from .rack import Rack, is_quandle

_CROSSING_RE = re.compile(r"X\s*[\(\[]([^\)\]]*)[\)\]]")


class PDParseError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    under_in: int
    over: int
    under_out: int
    sign: int


@dataclass(frozen=True)
class KnotDiagram:
    """Arcs are numbered 1..arcs."""

    arcs: int
    crossings: tuple[Crossing, ...] = ()

    def __post_init__(self):
        if self.arcs < 1:
            raise ValueError("a diagram has at least one arc")
        for c in self.crossings:
            if c.sign not in (1, -1):
                raise ValueError(f"crossing sign must be +1 or -1, got {c.sign}")
            for a in (c.under_in, c.over, c.under_out):
                if not 1 <= a <= self.arcs:
                    raise ValueError(f"arc {a} outside 1..{self.arcs}")

    def mirror(self) -> "KnotDiagram":
        return KnotDiagram(
            self.arcs,
            tuple(Crossing(c.under_in, c.over, c.under_out, -c.sign) for c in self.crossings),
        )

    def relabel_arcs(self, mapping) -> "KnotDiagram":
        """Rename arcs through `mapping`, a sequence with mapping[a-1] the new label of a."""
        if sorted(mapping) != list(range(1, self.arcs + 1)):
            raise ValueError("arc relabeling must be a bijection of 1..arcs")
        m = lambda a: mapping[a - 1]  # noqa: E731
        return KnotDiagram(
            self.arcs,
            tuple(Crossing(m(c.under_in), m(c.over), m(c.under_out), c.sign) for c in self.crossings),
        )


@dataclass(frozen=True)
class ColoringCount:
    total: int
    target_order: int

    def to_dict(self) -> dict:
        return {"target_order": self.target_order, "total": self.total}


def _read_tuples(text: str) -> list[tuple[int, ...]]:
    stripped = text.strip()
    if not stripped:
        return []
    if stripped.startswith("[") and not _CROSSING_RE.search(stripped):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise PDParseError(f"invalid JSON PD code: {exc}") from None
        if not isinstance(data, list) or not all(isinstance(t, list) for t in data):
            raise PDParseError("JSON PD code must be a list of 4-element lists")
        raw = data
    else:
        raw = []
        leftover = _CROSSING_RE.sub("", stripped)
        leftover = re.sub(r"PD\s*[\(\[]|[\]\),\s]", "", leftover)
        if leftover:
            raise PDParseError(f"unexpected text in PD code: {leftover!r}")
        for body in _CROSSING_RE.findall(stripped):
            raw.append([tok for tok in re.split(r"[,\s]+", body.strip()) if tok])
    tuples = []
    for t in raw:
        if len(t) != 4:
            raise PDParseError(f"crossing needs 4 edge labels, got {len(t)}: {t}")
        try:
            tuples.append(tuple(int(x) for x in t))
        except (TypeError, ValueError):
            raise PDParseError(f"edge labels must be integers: {t}") from None
    return tuples


def _is_positive(i: int, j: int, k: int, l: int) -> bool:
    # the over strand runs l -> j on positive crossings, j -> l on negative ones
    return i == j or k == l or j - l == 1 or l - j > 1


def parse_pd(text: str) -> KnotDiagram:
    """Build a diagram from a PD code such as ``"X(1,4,2,5) X(3,6,4,1)"``.

    Also accepts ``PD[X[...], ...]`` and JSON lists of 4-tuples. Empty input
    is the crossingless unknot.
    """
    tuples = _read_tuples(text)
    if not tuples:
        return KnotDiagram(1)
    uses = Counter(x for t in tuples for x in t)
    bad = sorted(x for x, c in uses.items() if c != 2)
    if bad:
        raise PDParseError(f"every edge label must appear exactly twice; check {bad}")

    parent = {x: x for x in uses}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, j, _, l in tuples:
        a, b = find(j), find(l)
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(x) for x in uses})
    arc_of = {x: roots.index(find(x)) + 1 for x in uses}
    crossings = tuple(
        Crossing(arc_of[i], arc_of[j], arc_of[k], 1 if _is_positive(i, j, k, l) else -1)
        for i, j, k, l in tuples
    )
    return KnotDiagram(len(roots), crossings)


def _check_target(q: Rack) -> None:
    if not is_quandle(q):
        warnings.warn(
            "target is not a quandle; rack colorings are invariants of framed diagrams only",
            stacklevel=3,
        )


def count_colorings(d: KnotDiagram, q: Rack) -> ColoringCount:
    """Number of arc colorings by `q` satisfying every crossing relation."""
    _check_target(q)
    n = q.n
    cols, inv = q._cols, q._inv_cols
    cross = [(c.under_in - 1, c.over - 1, c.under_out - 1, c.sign) for c in d.crossings]

    def propagate(color: list) -> bool:
        changed = True
        while changed:
            changed = False
            for a, o, b, s in cross:
                ca, co, cb = color[a], color[o], color[b]
                if co < 0:
                    continue
                fwd, back = (cols[co], inv[co]) if s > 0 else (inv[co], cols[co])
                if ca >= 0:
                    want = fwd[ca]
                    if cb < 0:
                        color[b] = want
                        changed = True
                    elif cb != want:
                        return False
                elif cb >= 0:
                    color[a] = back[cb]
                    changed = True
        return True

    def search(color: list) -> int:
        try:
            free = color.index(-1)
        except ValueError:
            return 1
        total = 0
        for x in range(n):
            nxt = color[:]
            nxt[free] = x
            if propagate(nxt):
                total += search(nxt)
        return total

    return ColoringCount(search([-1] * d.arcs), n)


def count_colorings_naive(d: KnotDiagram, q: Rack) -> ColoringCount:
    """Brute force over all n**arcs assignments."""
    _check_target(q)
    total = 0
    for color in itertools.product(range(1, q.n + 1), repeat=d.arcs):
        ok = True
        for c in d.crossings:
            a, o = color[c.under_in - 1], color[c.over - 1]
            want = q.op(a, o) if c.sign > 0 else q.dual_op(a, o)
            if color[c.under_out - 1] != want:
                ok = False
                break
        total += ok
    return ColoringCount(total, q.n)


TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIGURE_EIGHT_PD = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"
