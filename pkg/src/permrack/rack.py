"""Finite racks stored as their sequence of permutations.

A rack of order n is kept as ``(mu_1, ..., mu_n)`` with ``i * j = mu_j(i)``.
The multiplication table is oriented ``table[i][j] = i * j`` (row i, column
j), so column j of a table is the one-line image of ``mu_j``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .perm import Permutation, conjugate, inverse


class NotARackError(ValueError):
    """Raised when a permutation sequence or table violates the rack axioms.

    The full diagnostic is available as ``.report``.
    """

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(report.summary())


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking ``mu_{mu_j(i)} == mu_j mu_i mu_j^-1`` for all i, j.

    Each violation is ``(i, j, expected, found)`` where `expected` is the
    conjugate ``mu_j mu_i mu_j^-1`` and `found` is ``mu_{mu_j(i)}``.
    """

    violations: tuple = ()
    quandle_defects: tuple[int, ...] = ()
    non_bijective_columns: tuple[int, ...] = ()

    @property
    def is_rack(self) -> bool:
        return not self.violations and not self.non_bijective_columns

    def summary(self) -> str:
        if self.is_rack:
            return "valid rack"
        parts = []
        if self.non_bijective_columns:
            parts.append(f"columns not bijective: {list(self.non_bijective_columns)}")
        if self.violations:
            i, j, exp, found = self.violations[0]
            parts.append(
                f"{len(self.violations)} conjugation violation(s), first at (i={i}, j={j}): "
                f"expected {exp}, found {found}"
            )
        return "; ".join(parts)

    def to_dict(self) -> dict:
        return {
            "is_rack": self.is_rack,
            "non_bijective_columns": list(self.non_bijective_columns),
            "quandle_defects": list(self.quandle_defects),
            "violations": [
                {"i": i, "j": j, "expected": str(e), "found": str(f)}
                for i, j, e, f in self.violations
            ],
        }


@dataclass(frozen=True)
class TableReport:
    """Axiom-by-axiom verdict for an arbitrary n×n binary operation table.

    `sd_failures` lists ``(i, j, k, lhs, rhs)`` with
    ``lhs = (i*j)*k`` and ``rhs = (i*k)*(j*k)``.
    """

    right_invertible: bool
    self_distributive: bool
    quandle_condition: bool
    non_bijective_columns: tuple[int, ...] = ()
    sd_failures: tuple = ()
    quandle_defects: tuple[int, ...] = ()

    @property
    def is_rack(self) -> bool:
        return self.right_invertible and self.self_distributive

    @property
    def is_quandle(self) -> bool:
        return self.is_rack and self.quandle_condition

    def to_dict(self) -> dict:
        return {
            "right_invertible": self.right_invertible,
            "self_distributive": self.self_distributive,
            "quandle_condition": self.quandle_condition,
            "non_bijective_columns": list(self.non_bijective_columns),
            "sd_failures": [list(w) for w in self.sd_failures[:20]],
            "quandle_defects": list(self.quandle_defects),
        }


@dataclass(frozen=True)
class RackKind:
    """``k`` is the number of elements with ``i * i != i``; 0 means quandle."""

    k: int

    @property
    def is_quandle(self) -> bool:
        return self.k == 0


class Rack:
    """An immutable finite rack.

    Construct through :func:`from_perms`, :func:`from_table` or one of the
    builders; the constructor validates and raises :class:`NotARackError`.
    """

    def __init__(self, perms: Sequence[Permutation], *, _trusted: bool = False):
        perms = tuple(perms)
        if not _trusted:
            report = validate_perms(perms)
            if not report.is_rack:
                raise NotARackError(report)
        self.perms = perms
        self._cols = tuple(p._img for p in perms)

    @property
    def n(self) -> int:
        return len(self.perms)

    def __len__(self) -> int:
        return len(self.perms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Rack):
            return NotImplemented
        return self._cols == other._cols

    def __hash__(self) -> int:
        return hash(self._cols)

    def __repr__(self) -> str:
        return f"Rack({self.to_cycles_text()})"

    def mu(self, j: int) -> Permutation:
        """The permutation ``x -> x * j``."""
        return self.perms[j - 1]

    def op(self, i: int, j: int) -> int:
        """``i * j``"""
        return self._cols[j - 1][i - 1] + 1

    def dual_op(self, i: int, j: int) -> int:
        """``i *bar j``, the unique x with ``x * j == i``."""
        return self._inv_cols[j - 1][i - 1] + 1

    @cached_property
    def _inv_cols(self) -> tuple:
        return tuple(inverse(p)._img for p in self.perms)

    def table(self, order: Sequence[int] | None = None) -> list[list[int]]:
        """Rows and columns listed in `order` (default 1..n); entries are
        labels, unchanged by the ordering."""
        n = self.n
        idx = range(n) if order is None else [x - 1 for x in order]
        if order is not None and sorted(idx) != list(range(n)):
            raise ValueError(f"order must list each of 1..{n} once")
        return [[self._cols[j][i] + 1 for j in idx] for i in idx]

    # -- serialisation ----------------------------------------------------

    def to_dict(self) -> dict:
        return {"order": self.n, "perms": [list(p.image) for p in self.perms]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_table_text(self, order: Sequence[int] | None = None) -> str:
        return format_table(self.table(order))

    def to_cycles_text(self) -> str:
        return "(" + ", ".join(str(p) for p in self.perms) + ")"


def format_table(table: Sequence[Sequence[int]]) -> str:
    return "".join(" ".join(str(x) for x in row) + "\n" for row in table)


def parse_table_text(text: str) -> list[list[int]]:
    values = [int(tok) for tok in text.split()]
    n = math.isqrt(len(values))
    if n == 0 or n * n != len(values):
        raise ValueError(f"table text has {len(values)} entries, not a perfect square")
    return [values[r * n:(r + 1) * n] for r in range(n)]


# -- validation -----------------------------------------------------------

def validate_perms(perms: Sequence[Permutation]) -> ValidationReport:
    perms = tuple(perms)
    n = len(perms)
    if n == 0:
        raise ValueError("a rack needs at least one element")
    for idx, p in enumerate(perms, 1):
        if p.n != n:
            raise ValueError(f"permutation {idx} has degree {p.n}, expected {n}")
    violations = []
    for j in range(n):
        mj = perms[j]
        for i in range(n):
            expected = conjugate(perms[i], mj)
            found = perms[mj._img[i]]
            if found != expected:
                violations.append((i + 1, j + 1, expected, found))
    defects = tuple(i + 1 for i in range(n) if perms[i]._img[i] != i)
    return ValidationReport(tuple(violations), defects)


def check_table(table: Sequence[Sequence[int]]) -> TableReport:
    """Check the rack axioms directly on a table, without permutations."""
    n = len(table)
    t = [[x - 1 for x in row] for row in table]
    if any(len(row) != n for row in t):
        raise ValueError("table is not square")
    if any(not 0 <= x < n for row in t for x in row):
        raise ValueError(f"table entries must lie in 1..{n}")
    bad_cols = tuple(j + 1 for j in range(n) if len({t[i][j] for i in range(n)}) != n)
    sd_fail = []
    for i in range(n):
        for j in range(n):
            ij = t[i][j]
            for k in range(n):
                lhs = t[ij][k]
                rhs = t[t[i][k]][t[j][k]]
                if lhs != rhs:
                    sd_fail.append((i + 1, j + 1, k + 1, lhs + 1, rhs + 1))
    defects = tuple(i + 1 for i in range(n) if t[i][i] != i)
    return TableReport(
        right_invertible=not bad_cols,
        self_distributive=not sd_fail,
        quandle_condition=not defects,
        non_bijective_columns=bad_cols,
        sd_failures=tuple(sd_fail),
        quandle_defects=defects,
    )


def from_perms(perms: Iterable[Permutation]) -> Rack:
    return Rack(tuple(perms))


def from_table(table: Sequence[Sequence[int]]) -> Rack:
    """Build a rack from ``table[i-1][j-1] = i * j``."""
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise ValueError("table must be a non-empty square matrix")
    if any(not 1 <= x <= n for row in table for x in row):
        raise ValueError(f"table entries must lie in 1..{n}")
    bad = tuple(j + 1 for j in range(n) if len({table[i][j] for i in range(n)}) != n)
    if bad:
        raise NotARackError(ValidationReport(non_bijective_columns=bad))
    perms = [Permutation([table[i][j] for i in range(n)]) for j in range(n)]
    return Rack(perms)


def from_images(images: Iterable[Sequence[int]]) -> Rack:
    return Rack([Permutation(img) for img in images])


def from_dict(data: dict) -> Rack:
    perms = data["perms"]
    order = data.get("order", len(perms))
    if order != len(perms):
        raise ValueError(f"order {order} does not match {len(perms)} permutations")
    return from_images(perms)


def from_json(text: str) -> Rack:
    return from_dict(json.loads(text))


def loads(text: str) -> Rack:
    """Read either the JSON rack format or a whitespace multiplication table."""
    if text.lstrip().startswith("{"):
        return from_json(text)
    return from_table(parse_table_text(text))


# -- structure ------------------------------------------------------------

def kind(r: Rack) -> RackKind:
    return RackKind(sum(1 for i, col in enumerate(r._cols) if col[i] != i))


def is_quandle(r: Rack) -> bool:
    return kind(r).k == 0


def dual(r: Rack) -> Rack:
    """The rack with ``i *bar j = mu_j^-1(i)``; its perms are the inverses."""
    return Rack([inverse(p) for p in r.perms], _trusted=True)


def opposite(r: Rack) -> tuple[list[list[int]], TableReport]:
    """Table of ``i *o j := j * i`` together with its axiom report."""
    t = r.table()
    n = r.n
    opp = [[t[j][i] for j in range(n)] for i in range(n)]
    return opp, check_table(opp)


def is_symmetric(r: Rack) -> bool:
    c = r._cols
    n = r.n
    return all(c[j][i] == c[i][j] for i in range(n) for j in range(i + 1, n))


def is_quasigroup(r: Rack) -> bool:
    n = r.n
    c = r._cols
    return all(len({c[j][i] for j in range(n)}) == n for i in range(n))


# -- builders -------------------------------------------------------------

def _from_operation(n: int, op) -> Rack:
    # op works on 0-based residues; result is validated
    return from_table([[op(i, j) % n + 1 for j in range(n)] for i in range(n)])


def trivial(n: int) -> Rack:
    """T_n: ``i * j = i``."""
    if n < 1:
        raise ValueError("order must be at least 1")
    return Rack([Permutation.identity(n)] * n, _trusted=True)


def cyclic(n: int) -> Rack:
    """C_n: ``i * j = i + 1 mod n``."""
    if n < 1:
        raise ValueError("order must be at least 1")
    shift = Permutation._raw(tuple((i + 1) % n for i in range(n)))
    return Rack([shift] * n, _trusted=True)


def dihedral(n: int) -> Rack:
    """R_n: ``i * j = 2j - i mod n`` on {1..n}, residue 0 written as n."""
    if n < 3:
        raise ValueError("dihedral racks need n >= 3")
    # labels are residues, so shift by one: label x is residue x mod n
    return from_table([[(2 * j - i) % n or n for j in range(1, n + 1)] for i in range(1, n + 1)])


def linear_alexander(p: int, m: int) -> Rack:
    """Z_p[T,T^-1]/(T - m): ``a * b = m a + (1 - m) b mod p``.

    Element x in {1..p} stands for the residue x mod p (so p stands for 0).
    """
    if p < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(m, p) != 1:
        raise ValueError(f"{m} is not a unit modulo {p}")
    return from_table(
        [[(m * a + (1 - m) * b) % p or p for b in range(1, p + 1)] for a in range(1, p + 1)]
    )


def alexander_quotient(nmod: int, h: Sequence[int]) -> Rack:
    """Z_nmod[T,T^-1]/(h(T)) with ``a * b = T a + (1 - T) b``.

    `h` lists coefficients from the constant term upwards. Elements are
    the residues of degree below deg(h), numbered from 1 in lexicographic
    coefficient order with the constant coefficient varying fastest.
    """
    h = [c % nmod for c in h]
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    d = len(h) - 1
    if d < 1:
        raise ValueError("h must have degree at least 1")
    if math.gcd(h[0], nmod) != 1:
        raise ValueError("T is not invertible: h(0) is not a unit")
    if math.gcd(h[-1], nmod) != 1:
        raise ValueError("leading coefficient of h must be a unit")
    lead_inv = pow(h[-1], -1, nmod)
    size = nmod ** d

    def decode(x: int) -> list[int]:
        return [(x // nmod ** k) % nmod for k in range(d)]

    def encode(c: Sequence[int]) -> int:
        return sum((ck % nmod) * nmod ** k for k, ck in enumerate(c))

    def times_t(c: Sequence[int]) -> list[int]:
        shifted = [0] + list(c)
        top = shifted[d] * lead_inv % nmod
        return [(shifted[k] - top * h[k]) % nmod for k in range(d)]

    elems = [decode(x) for x in range(size)]
    table = []
    for a in elems:
        row = []
        for b in elems:
            ta_b = times_t([x - y for x, y in zip(a, b)])
            row.append(encode([x + y for x, y in zip(ta_b, b)]) + 1)
        table.append(row)
    return from_table(table)


_OCTAHEDRON_TABLE = (
    (1, 5, 2, 3, 4, 1),
    (3, 2, 6, 2, 1, 5),
    (4, 1, 3, 6, 3, 2),
    (5, 4, 1, 4, 6, 3),
    (2, 6, 5, 1, 5, 4),
    (6, 3, 4, 5, 2, 6),
)


def octahedron() -> Rack:
    """The order-6 octahedron quandle."""
    return from_table(_OCTAHEDRON_TABLE)
