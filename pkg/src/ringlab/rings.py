"""Rings and elements.

Every finite ring built from a descriptor is stored as a free coordinate
module ``Z_{m_1} x ... x Z_{m_N}`` (coordinates with modulus 1 are pinned to
zero, e.g. below-diagonal entries of triangular matrices) together with the
structure constants of its multiplication on the coordinate basis. Elements
are immutable coordinate tuples; enumeration order is lexicographic on
coordinates, which is also the order of :func:`itertools.product` over the
coordinate ranges.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product as cartesian
from math import gcd, lcm
from typing import Callable, Iterable, Sequence

from .descriptors import (
    GroupRing,
    Integers,
    Matrix,
    Poly,
    PolyQuotient,
    Product,
    RingDescriptor,
    Triangular,
    Zn,
)
from .errors import CapExceeded, InfiniteRing, InvalidDescriptor, RingMismatch

DEFAULT_CAP = 20000


def enumeration_cap() -> int:
    """The active enumeration cap (``RINGLAB_MAX_SIZE`` overrides the default)."""
    raw = os.environ.get("RINGLAB_MAX_SIZE")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"RINGLAB_MAX_SIZE must be an integer, got {raw!r}") from None
        if value > 0:
            return value
    return DEFAULT_CAP


class Element:
    """An immutable ring element: owner ring plus canonical coordinates."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: "Ring", coords: tuple):
        self.ring = ring
        self.coords = coords

    def _other(self, other) -> "Element | None":
        if isinstance(other, Element):
            if other.ring is not self.ring and other.ring.key != self.ring.key:
                raise RingMismatch(f"cannot combine elements of {self.ring.spec} and {other.ring.spec}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Element(self.ring, self.ring._add(self.coords, o.coords))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        r = self.ring
        return Element(r, r._add(self.coords, r._neg(o.coords)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Element(self.ring, self.ring._neg(self.coords))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Element(self.ring, self.ring._mul(self.coords, o.coords))

    def __rmul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Element(self.ring, self.ring._mul(o.coords, self.coords))

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {k!r}")
        r = self.ring
        mul = r._mul
        result = r.one.coords
        base = self.coords
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return Element(r, result)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.coords == other.coords and (
            other.ring is self.ring or other.ring.key == self.ring.key
        )

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other: "Element"):
        return self.coords < other.coords

    def is_zero(self) -> bool:
        return self.coords == self.ring.zero.coords

    def commutes_with(self, other: "Element") -> bool:
        return self * other == other * self

    def __str__(self):
        return self.ring.format_coords(self.coords)

    def __repr__(self):
        return f"<{self.ring.spec}: {self}>"


class Ring:
    """Common interface of finite, symbolic, and quotient rings.

    Subclasses implement the raw coordinate operations ``_add``, ``_neg`` and
    ``_mul``, plus ``_zero``/``_one`` coordinates and ``normalize``.
    """

    descriptor: RingDescriptor | None = None
    finite = True

    def __init__(self):
        # per-ring memo tables for the engines (orbits, class sets, layers)
        self.cache: dict = {}

    @property
    def key(self):
        return self.descriptor

    def __eq__(self, other):
        return isinstance(other, Ring) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def spec(self) -> str:
        from .dsl import format_ring

        return format_ring(self.descriptor)

    def __repr__(self):
        return f"Ring({self.spec})"

    def format_coords(self, coords: tuple) -> str:
        from .dsl import format_coords

        return format_coords(self.descriptor, coords)

    # element construction

    def normalize(self, coords: Sequence[int]) -> tuple:
        raise NotImplementedError

    def element(self, coords: Sequence[int]) -> Element:
        return Element(self, self.normalize(coords))

    def __call__(self, value) -> Element:
        if isinstance(value, int):
            return self.from_int(value)
        return self.element(value)

    @cached_property
    def zero(self) -> Element:
        return Element(self, self._zero)

    @cached_property
    def one(self) -> Element:
        return Element(self, self._one)

    def from_int(self, k: int) -> Element:
        """The element ``k * 1``, by double-and-add on the identity."""
        neg = k < 0
        k = -k if neg else k
        acc = self._zero
        base = self._one
        while k:
            if k & 1:
                acc = self._add(acc, base)
            k >>= 1
            if k:
                base = self._add(base, base)
        return Element(self, self._neg(acc) if neg else acc)

    # enumeration and structure

    @property
    def cardinality(self) -> int | None:
        raise NotImplementedError

    def check_cap(self, cap: int | None = None) -> None:
        if not self.finite:
            raise InfiniteRing(f"{self.spec} is infinite")
        cap = enumeration_cap() if cap is None else cap
        if self.cardinality > cap:
            raise CapExceeded(self.cardinality, cap)

    def elements(self, cap: int | None = None) -> list[Element]:
        """All elements in canonical order; the first one is zero."""
        self.check_cap(cap)
        if "elements" not in self.cache:
            self.cache["elements"] = [Element(self, c) for c in self._enumerate()]
        return self.cache["elements"]

    def _enumerate(self) -> Iterable[tuple]:
        raise NotImplementedError

    def additive_generators(self) -> list[Element]:
        """Elements generating ``(R, +)`` as an abelian group."""
        raise NotImplementedError

    @cached_property
    def characteristic(self) -> int:
        """Additive order of 1 (0 if it is infinite)."""
        one = self._one
        zero = self._zero
        acc = one
        k = 1
        while acc != zero:
            acc = self._add(acc, one)
            k += 1
        return k

    @cached_property
    def is_commutative(self) -> bool:
        gens = self.additive_generators()
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[:i])

    def noncommuting_pair(self) -> tuple[Element, Element] | None:
        gens = self.additive_generators()
        for i, a in enumerate(gens):
            for b in gens[:i]:
                if a * b != b * a:
                    return (b, a)
        return None


@dataclass(frozen=True)
class Layout:
    """Coordinate moduli, identity coordinates and basis multiplication."""

    moduli: tuple[int, ...]
    one: tuple[int, ...]
    prod: Callable[[int, int], dict[int, int]]

    @property
    def dim(self) -> int:
        return len(self.moduli)

    @property
    def size(self) -> int:
        s = 1
        for m in self.moduli:
            s *= m
        return s


@lru_cache(maxsize=None)
def layout(d: RingDescriptor) -> Layout:
    """Coordinate layout of a finite descriptor."""
    if isinstance(d, Zn):
        return Layout((d.n,), (1,), lambda i, j: {0: 1})
    if isinstance(d, Product):
        left, right = layout(d.left), layout(d.right)
        nl = left.dim

        def prod(i, j):
            if i < nl and j < nl:
                return left.prod(i, j)
            if i >= nl and j >= nl:
                return {k + nl: v for k, v in right.prod(i - nl, j - nl).items()}
            return {}

        return Layout(left.moduli + right.moduli, left.one + right.one, prod)
    if isinstance(d, (Matrix, Triangular)):
        inner = layout(d.inner)
        n, b = d.n, inner.dim
        zero_block = (1,) * b
        moduli: list[int] = []
        one: list[int] = []
        for r in range(n):
            for c in range(n):
                pinned = isinstance(d, Triangular) and r > c
                moduli.extend(zero_block if pinned else inner.moduli)
                one.extend(inner.one if r == c else (0,) * b)

        def prod(i, j):
            (rc, t), (rc2, t2) = divmod(i, b), divmod(j, b)
            r, c = divmod(rc, n)
            r2, c2 = divmod(rc2, n)
            if c != r2:
                return {}
            base = (r * n + c2) * b
            return {base + u: v for u, v in inner.prod(t, t2).items()}

        return Layout(tuple(moduli), tuple(one), prod)
    if isinstance(d, GroupRing):
        inner = layout(d.inner)
        g, b = d.group, inner.dim
        one = inner.one + (0,) * (b * (g.order - 1))

        def prod(i, j):
            (x, t), (y, t2) = divmod(i, b), divmod(j, b)
            base = g.table[x][y] * b
            return {base + u: v for u, v in inner.prod(t, t2).items()}

        return Layout(inner.moduli * g.order, one, prod)
    if isinstance(d, PolyQuotient):
        k, n, f = d.degree, d.n, d.modulus

        @lru_cache(maxsize=None)
        def power(e):
            # t^e reduced modulo f, as a coefficient tuple of length k
            if e < k:
                return tuple(1 if i == e else 0 for i in range(k))
            prev = power(e - 1)
            top = prev[-1]
            shifted = (0,) + prev[:-1]
            return tuple((shifted[i] - top * f[i]) % n for i in range(k))

        def prod(i, j):
            return {u: v for u, v in enumerate(power(i + j)) if v}

        return Layout((n,) * k, (1,) + (0,) * (k - 1), prod)
    raise InvalidDescriptor(f"{d!r} has no finite coordinate layout")


class FiniteRing(Ring):
    """A finite ring given by a coordinate layout and structure constants."""

    def __init__(self, descriptor: RingDescriptor):
        super().__init__()
        self.descriptor = descriptor
        self.layout = layout(descriptor)
        self.moduli = self.layout.moduli
        self._zero = (0,) * self.layout.dim
        self._one = tuple(v % m for v, m in zip(self.layout.one, self.moduli))

    @cached_property
    def cardinality(self) -> int:
        return self.layout.size

    @cached_property
    def _table(self) -> list[list[tuple[int, int, int]]]:
        basis = [i for i, m in enumerate(self.moduli) if m > 1]
        table: list[list[tuple[int, int, int]]] = [[] for _ in self.moduli]
        prod = self.layout.prod
        for i in basis:
            row = table[i]
            for j in basis:
                for k, c in prod(i, j).items():
                    c %= self.moduli[k]
                    if c:
                        row.append((j, k, c))
        return table

    def normalize(self, coords):
        coords = tuple(coords)
        if len(coords) != len(self.moduli):
            raise ValueError(f"{self.spec} needs {len(self.moduli)} coordinates, got {len(coords)}")
        return tuple(int(c) % m for c, m in zip(coords, self.moduli))

    def _add(self, a, b):
        return tuple([(x + y) % m for x, y, m in zip(a, b, self.moduli)])

    def _neg(self, a):
        return tuple([(-x) % m for x, m in zip(a, self.moduli)])

    def _mul(self, a, b):
        out = [0] * len(a)
        table = self._table
        for i, ai in enumerate(a):
            if ai:
                for j, k, c in table[i]:
                    bj = b[j]
                    if bj:
                        out[k] += ai * bj * c
        return tuple([x % m for x, m in zip(out, self.moduli)])

    def _enumerate(self):
        return cartesian(*(range(m) for m in self.moduli))

    def index_of(self, x: Element) -> int:
        """Position of ``x`` in the canonical enumeration (mixed radix)."""
        idx = 0
        for c, m in zip(x.coords, self.moduli):
            idx = idx * m + c
        return idx

    def additive_generators(self):
        dim = len(self.moduli)
        return [
            Element(self, tuple(1 if k == i else 0 for k in range(dim)))
            for i, m in enumerate(self.moduli)
            if m > 1
        ]

    @cached_property
    def characteristic(self) -> int:
        return lcm(*(m // gcd(c, m) for c, m in zip(self._one, self.moduli) if m > 1))


class IntegerRing(Ring):
    """The integers, with arbitrary-precision coordinates ``(a,)``."""

    finite = False

    def __init__(self):
        super().__init__()
        self.descriptor = Integers()
        self._zero = (0,)
        self._one = (1,)

    cardinality = None
    characteristic = 0
    is_commutative = True

    def normalize(self, coords):
        coords = tuple(coords)
        if len(coords) != 1:
            raise ValueError("integers have a single coordinate")
        return (int(coords[0]),)

    def _add(self, a, b):
        return (a[0] + b[0],)

    def _neg(self, a):
        return (-a[0],)

    def _mul(self, a, b):
        return (a[0] * b[0],)

    def additive_generators(self):
        return [self.one]


class PolyRing(Ring):
    """``Z_n[t]``: coordinates are coefficient tuples, low to high, trailing zeros trimmed."""

    finite = False

    def __init__(self, descriptor: Poly):
        super().__init__()
        self.descriptor = descriptor
        self.n = descriptor.n
        self._zero = ()
        self._one = (1,)

    cardinality = None
    is_commutative = True

    @property
    def characteristic(self) -> int:
        return self.n

    def _trim(self, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def normalize(self, coords):
        return self._trim(int(c) % self.n for c in coords)

    def _add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % self.n
        return self._trim(out)

    def _neg(self, a):
        return self._trim((-c) % self.n for c in a)

    def _mul(self, a, b):
        if not a or not b:
            return ()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._trim(c % self.n for c in out)

    def variable(self) -> Element:
        return self.element((0, 1))

    def additive_generators(self):
        raise InfiniteRing("Z_n[t] is not finitely generated as an abelian group")


class QuotientRing(Ring):
    """``R / I`` with each coset stored as its least member in canonical order."""

    def __init__(self, parent: Ring, members: frozenset[Element], label: str = "I"):
        super().__init__()
        self.parent = parent
        self.ideal_members = members
        self.label = label
        reps: dict[tuple, tuple] = {}
        ideal = [m.coords for m in sorted(members)]
        add = parent._add
        for x in parent.elements():
            if x.coords in reps:
                continue
            coset = [add(x.coords, m) for m in ideal]
            rep = min(coset)
            for c in coset:
                reps[c] = rep
        self._rep = reps
        self._reps = sorted(set(reps.values()))
        self._zero = reps[parent._zero]
        self._one = reps[parent._one]

    @property
    def key(self):
        return ("quotient", self.parent.key, frozenset(m.coords for m in self.ideal_members))

    @property
    def spec(self) -> str:
        return f"{self.parent.spec} / {self.label}"

    def format_coords(self, coords):
        return f"{self.parent.format_coords(coords)} + {self.label}"

    @property
    def cardinality(self) -> int:
        return len(self._reps)

    def project(self, x: Element) -> Element:
        """The natural map ``R -> R/I``."""
        return Element(self, self._rep[x.coords])

    def lift(self, x: Element) -> Element:
        """The canonical representative of a coset, as an element of the parent."""
        return Element(self.parent, x.coords)

    def normalize(self, coords):
        return self._rep[self.parent.normalize(coords)]

    def _add(self, a, b):
        return self._rep[self.parent._add(a, b)]

    def _neg(self, a):
        return self._rep[self.parent._neg(a)]

    def _mul(self, a, b):
        return self._rep[self.parent._mul(a, b)]

    def _enumerate(self):
        return iter(self._reps)

    def additive_generators(self):
        return [self.project(g) for g in self.parent.additive_generators()]


@lru_cache(maxsize=None)
def construct(d: RingDescriptor) -> Ring:
    """Build the ring described by ``d``; equal descriptors give the same object."""
    if not isinstance(d, RingDescriptor):
        raise InvalidDescriptor(f"not a ring descriptor: {d!r}")
    if isinstance(d, Integers):
        return IntegerRing()
    if isinstance(d, Poly):
        return PolyRing(d)
    return FiniteRing(d)
