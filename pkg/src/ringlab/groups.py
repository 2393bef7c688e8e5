"""Finite groups given by Cayley tables, with the fixed preset catalogue."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from pathlib import Path

from .errors import InvalidDescriptor

MAX_GROUP_ORDER = 64


@dataclass(frozen=True)
class GroupTable:
    """A finite group on indices ``0..order-1``; index 0 is the identity.

    ``names`` is the element glossary used by group-ring literals.
    ``nilpotent`` is a declared flag (``None`` when unknown, e.g. custom tables).
    """

    name: str
    table: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    nilpotent: bool | None = None
    inverses: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise InvalidDescriptor(f"group {self.name}: Cayley table must be square")
        if len(self.names) != n or len(set(self.names)) != n:
            raise InvalidDescriptor(f"group {self.name}: need {n} distinct element names")
        rng = range(n)
        for row in self.table:
            if any(not 0 <= v < n for v in row):
                raise InvalidDescriptor(f"group {self.name}: entry out of range")
        if any(self.table[0][x] != x or self.table[x][0] != x for x in rng):
            raise InvalidDescriptor(f"group {self.name}: index 0 is not the identity")
        t = self.table
        for a, b, c in product(rng, repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidDescriptor(f"group {self.name}: not associative at ({a}, {b}, {c})")
        inv = []
        for a in rng:
            row = t[a]
            try:
                b = row.index(0)
            except ValueError:
                raise InvalidDescriptor(f"group {self.name}: element {a} has no inverse") from None
            if t[b][a] != 0:
                raise InvalidDescriptor(f"group {self.name}: element {a} has no two-sided inverse")
            inv.append(b)
        object.__setattr__(self, "inverses", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None

    @property
    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a))

    @classmethod
    def from_file(cls, path, name: str | None = None) -> "GroupTable":
        """Read a custom Cayley table.

        Format: first line the order ``k``; then ``k`` lines of ``k``
        space-separated 0-based indices (row ``i``, column ``j`` is the
        index of ``i*j``). Index 0 must be the identity.
        """
        path = Path(path)
        lines = [ln.split() for ln in path.read_text().splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 1:
            raise InvalidDescriptor(f"{path}: first line must hold the group order")
        k = int(lines[0][0])
        rows = lines[1:]
        if len(rows) != k:
            raise InvalidDescriptor(f"{path}: expected {k} table rows, found {len(rows)}")
        table = tuple(tuple(int(v) for v in row) for row in rows)
        names = tuple(f"g{i}" for i in range(k))
        return cls(name or path.stem, table, names, None)


def group_center(group: GroupTable) -> frozenset[int]:
    """Indices commuting with every element, by a scan of the Cayley table."""
    t = group.table
    rng = range(group.order)
    return frozenset(a for a in rng if all(t[a][b] == t[b][a] for b in rng))


def _check_order(n: int) -> None:
    if n < 1:
        raise InvalidDescriptor("group order must be at least 1")
    if n > MAX_GROUP_ORDER:
        raise InvalidDescriptor(f"group order {n} exceeds {MAX_GROUP_ORDER}")


@lru_cache(maxsize=None)
def cyclic(n: int) -> GroupTable:
    _check_order(n)
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return GroupTable(f"C{n}", table, tuple(f"g{i}" for i in range(n)), True)


@lru_cache(maxsize=None)
def cyclic_product(n: int, m: int) -> GroupTable:
    _check_order(n)
    _check_order(m)
    _check_order(n * m)
    elems = [(a, b) for a in range(n) for b in range(m)]
    idx = {e: i for i, e in enumerate(elems)}
    table = tuple(
        tuple(idx[((a1 + a2) % n, (b1 + b2) % m)] for a2, b2 in elems) for a1, b1 in elems
    )
    names = tuple(f"g{a}h{b}" for a, b in elems)
    return GroupTable(f"C{n}xC{m}", table, names, True)


def _dihedral(n: int, name: str, nilpotent: bool) -> GroupTable:
    # element (f, k) stands for s^f r^k with r^n = s^2 = e and r s = s r^-1
    elems = [(0, k) for k in range(n)] + [(1, k) for k in range(n)]
    idx = {e: i for i, e in enumerate(elems)}

    def mul(x, y):
        f1, k1 = x
        f2, k2 = y
        k = (-k1 if f2 else k1) + k2
        return ((f1 + f2) % 2, k % n)

    table = tuple(tuple(idx[mul(x, y)] for y in elems) for x in elems)
    rot = ["e", "r"] + [f"r{k}" for k in range(2, n)]
    names = tuple(rot + ["s" + (r if r != "e" else "") for r in rot])
    return GroupTable(name, table, names, nilpotent)


@lru_cache(maxsize=None)
def symmetric3() -> GroupTable:
    return _dihedral(3, "S3", False)


@lru_cache(maxsize=None)
def dihedral4() -> GroupTable:
    return _dihedral(4, "D4", True)


@lru_cache(maxsize=None)
def quaternion8() -> GroupTable:
    # unit quaternions as (sign, axis) with axis in 1, i, j, k
    axes = ["1", "i", "j", "k"]
    basic = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, a) for a in axes for s in (1, -1)]
    idx = {e: i for i, e in enumerate(elems)}

    def mul(x, y):
        sign, axis = basic[(x[1], y[1])]
        return (x[0] * y[0] * sign, axis)

    table = tuple(tuple(idx[mul(x, y)] for y in elems) for x in elems)
    names = tuple(("" if s == 1 else "-") + a for s, a in elems)
    return GroupTable("Q8", table, names, True)


_PRESET = re.compile(r"C(\d+)(?:xC(\d+))?$")


def preset(name: str) -> GroupTable:
    """Look up a preset by its canonical name (``C4``, ``C2xC3``, ``S3``, ``D4``, ``Q8``)."""
    fixed = {"S3": symmetric3, "D4": dihedral4, "Q8": quaternion8}
    if name in fixed:
        return fixed[name]()
    m = _PRESET.match(name)
    if not m:
        raise InvalidDescriptor(f"unknown group preset {name!r}")
    if m.group(2) is None:
        return cyclic(int(m.group(1)))
    return cyclic_product(int(m.group(1)), int(m.group(2)))
