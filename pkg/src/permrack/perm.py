"""Permutations of {1..n} with the arithmetic rack computations need.

Elements are 1-based everywhere in the public API. Internally a permutation
keeps a 0-based tuple ``_img`` so that hot loops elsewhere in the package can
index it directly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

Pattern = tuple  # sorted tuple of positive cycle lengths, 1-cycles included

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


class Permutation:
    """A bijection of {1..n}, stored by its one-line image.

    >>> p = Permutation([2, 3, 1, 4])
    >>> str(p)
    '(1 2 3)'
    >>> p(3)
    1
    """

    __slots__ = ("_img", "_hash")

    def __init__(self, image: Iterable[int]):
        img = tuple(int(x) - 1 for x in image)
        if sorted(img) != list(range(len(img))):
            raise ValueError(f"not a bijection of 1..{len(img)}: {[x + 1 for x in img]}")
        self._img = img
        self._hash = hash(img)

    @classmethod
    def _raw(cls, img: tuple) -> "Permutation":
        # trusted 0-based constructor; callers guarantee bijectivity
        p = cls.__new__(cls)
        p._img = img
        p._hash = hash(img)
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n < 1:
            raise ValueError("degree must be positive")
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        img = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            cyc = [int(x) for x in cyc]
            for x in cyc:
                if not 1 <= x <= n:
                    raise ValueError(f"element {x} outside 1..{n}")
                if x in seen:
                    raise ValueError(f"element {x} appears in more than one cycle")
                seen.add(x)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a - 1] = b - 1
        return cls._raw(tuple(img))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse cycle notation such as ``"(1 2 3)(4)"`` or ``"()"``.

        Elements not mentioned are fixed points. When `n` is omitted the
        degree is the largest element mentioned.
        """
        text = text.strip()
        rest = _CYCLE_RE.sub("", text)
        if rest.strip():
            raise ValueError(f"unparseable cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(text):
            body = body.replace(",", " ").split()
            if body:
                cycles.append([int(x) for x in body])
        if n is None:
            n = max((max(c) for c in cycles), default=1)
        return cls.from_cycles(cycles, n)

    # -- basic protocol ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._img)

    @property
    def image(self) -> tuple[int, ...]:
        """One-line image, 1-based: ``image[i-1]`` is the image of ``i``."""
        return tuple(x + 1 for x in self._img)

    def __call__(self, x: int) -> int:
        return self._img[x - 1] + 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __lt__(self, other: "Permutation") -> bool:
        return (len(self._img), self._img) < (len(other._img), other._img)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation.parse({str(self)!r}, n={self.n})"

    def __str__(self) -> str:
        return self.to_cycle_string()

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        return power(self, k)

    # -- derived ----------------------------------------------------------

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._img))

    def fixes(self, x: int) -> bool:
        return self._img[x - 1] == x - 1

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i, x in enumerate(self._img) if i != x)

    def inverse(self) -> "Permutation":
        return inverse(self)

    def conjugate(self, g: "Permutation") -> "Permutation":
        return conjugate(self, g)

    def cycles(self, include_fixed: bool = True) -> tuple[tuple[int, ...], ...]:
        return cycle_decompose(self).cycles if include_fixed else cycle_decompose(self).nontrivial()

    def pattern(self) -> Pattern:
        return pattern(self)

    def order(self) -> int:
        return element_order(self)

    def to_cycle_string(self, include_fixed: bool = False) -> str:
        cycles = cycle_decompose(self).cycles
        if not include_fixed:
            cycles = tuple(c for c in cycles if len(c) > 1)
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint cycles covering {1..n}; each cycle starts at its least
    element and cycles are ordered by that element."""

    n: int
    cycles: tuple[tuple[int, ...], ...]

    def nontrivial(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.cycles if len(c) > 1)

    def to_permutation(self) -> Permutation:
        return Permutation.from_cycles(self.cycles, self.n)


def _check_degrees(a: Permutation, b: Permutation) -> None:
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} != {b.n}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Return ``a∘b``; `b` is applied first."""
    _check_degrees(a, b)
    ai = a._img
    return Permutation._raw(tuple(ai[x] for x in b._img))


def inverse(a: Permutation) -> Permutation:
    inv = [0] * len(a._img)
    for i, x in enumerate(a._img):
        inv[x] = i
    return Permutation._raw(tuple(inv))


def conjugate(a: Permutation, g: Permutation) -> Permutation:
    """Return ``g∘a∘g⁻¹``, i.e. `a` with its elements renamed by `g`."""
    _check_degrees(a, g)
    gi, ai = g._img, a._img
    out = [0] * len(ai)
    for y in range(len(ai)):
        out[gi[y]] = gi[ai[y]]
    return Permutation._raw(tuple(out))


def cycle_decompose(a: Permutation) -> CycleDecomposition:
    img = a._img
    seen = [False] * len(img)
    cycles = []
    for start in range(len(img)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = img[x]
        cycles.append(tuple(cyc))
    return CycleDecomposition(len(img), tuple(cycles))


def pattern(a: Permutation) -> Pattern:
    return tuple(sorted(len(c) for c in cycle_decompose(a).cycles))


def element_order(a: Permutation) -> int:
    return reduce(math.lcm, pattern(a), 1)


def power(a: Permutation, k: int) -> Permutation:
    n = a.n
    if k < 0:
        a, k = inverse(a), -k
    k %= element_order(a)
    out = list(range(n))
    for cyc in cycle_decompose(a).cycles:
        m = len(cyc)
        for idx, x in enumerate(cyc):
            out[x - 1] = cyc[(idx + k) % m] - 1
    return Permutation._raw(tuple(out))


def cycle_power(block: Sequence[int], k: int, n: int) -> Permutation:
    """The k-th power of the cycle ``(block[0] block[1] ...)`` in S_n."""
    return power(Permutation.from_cycles([block], n), k)


def product(perms: Iterable[Permutation], n: int) -> Permutation:
    """Compose left to right as written: ``product([a, b]) == a∘b``."""
    return reduce(compose, perms, Permutation.identity(n))
