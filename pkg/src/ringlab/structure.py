"""Ring-level structure: censuses, centers, CRT splitting, ideals, quotients."""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import factorint

from .descriptors import GroupRing
from .errors import CharZero, NotAnIdeal, RingMismatch
from .orbit import classify
from .rings import Element, QuotientRing, Ring, construct, layout

CENSUS_KEEP = 256


def elements(ring: Ring, cap: int | None = None) -> list[Element]:
    return ring.elements(cap)


def characteristic(ring: Ring) -> int:
    return ring.characteristic


@dataclass
class Census:
    """Exhaustive element counts by class, with witnessed sets (first ``keep`` kept)."""

    size: int
    counts: dict[str, int]
    members: dict[str, list[Element]]

    def __getitem__(self, key: str) -> int:
        return self.counts[key]


CENSUS_KEYS = ("units", "torsion_units", "nilpotents", "idempotents", "potents", "periodic")


def census(ring: Ring, keep: int = CENSUS_KEEP) -> Census:
    elems = ring.elements()
    members: dict[str, list[Element]] = {k: [] for k in CENSUS_KEYS}
    for x in elems:
        rec = classify(x)
        members["periodic"].append(x)
        if rec.potent_q is not None:
            members["potents"].append(x)
        if rec.idempotent:
            members["idempotents"].append(x)
        if rec.nilpotency_index is not None:
            members["nilpotents"].append(x)
        if rec.unit_order is not None:
            members["units"].append(x)
            members["torsion_units"].append(x)
    counts = {k: len(v) for k, v in members.items()}
    return Census(len(elems), counts, {k: v[:keep] for k, v in members.items()})


def units(ring: Ring) -> list[Element]:
    return [x for x in ring.elements() if classify(x).unit_order is not None]


def nilpotents(ring: Ring) -> list[Element]:
    return [x for x in ring.elements() if classify(x).nilpotency_index is not None]


def center(ring: Ring) -> list[Element]:
    """Elements commuting with all of ``R`` (tested against additive generators)."""
    gens = ring.additive_generators()
    return [x for x in ring.elements() if all(x * g == g * x for g in gens)]


def is_central(x: Element) -> bool:
    return all(x * g == g * x for g in x.ring.additive_generators())


def is_field(ring: Ring) -> bool:
    if not ring.finite:
        return False
    if not ring.is_commutative:
        return False
    return all(x.is_zero() or classify(x).unit_order is not None for x in ring.elements())


@dataclass(frozen=True)
class CRTComponent:
    """One prime-power factor ``R e`` of a CRT split."""

    prime: int
    exponent: int
    idempotent: Element

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    def component_elements(self) -> list[Element]:
        e = self.idempotent
        return sorted({x * e for x in e.ring.elements()})

    def characteristic(self) -> int:
        e = self.idempotent
        k, acc = 1, e
        while not acc.is_zero():
            acc = acc + e
            k += 1
        return k


def crt_split(ring: Ring) -> list[CRTComponent]:
    """Central idempotents splitting ``R`` by the prime powers of ``char R``.

    For ``n = char R`` and each ``q = p^e || n``, the idempotent is ``u (n/q) 1``
    where ``u`` inverts ``n/q`` modulo ``q``.
    """
    n = ring.characteristic
    if n == 0:
        raise CharZero(f"{ring.spec} has characteristic 0")
    out = []
    for p, e in sorted(factorint(n).items()):
        q = p**e
        r = n // q
        u = pow(r, -1, q)
        out.append(CRTComponent(p, e, ring.from_int(u * r % n)))
    return out


@dataclass
class IdealHandle:
    """A two-sided ideal of a finite ring, stored by its members."""

    ring: Ring
    members: frozenset[Element]
    generators: tuple[Element, ...] = ()
    nil: bool = field(init=False)

    def __post_init__(self):
        self.nil = all(classify(y).nilpotency_index is not None for y in self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x: Element) -> bool:
        return x in self.members

    def sorted_members(self) -> list[Element]:
        return sorted(self.members)

    def label(self) -> str:
        if len(self.members) == 1:
            return "(0)"
        gens = self.generators or tuple(self.sorted_members()[1:2])
        return "(" + ", ".join(str(g) for g in gens) + ")"


def _additive_span(ring: Ring, gens, members: set | None = None) -> set:
    """Subgroup of ``(R, +)`` generated by ``gens`` (plus an existing subgroup)."""
    span = set(members) if members else {ring._zero}
    add = ring._add
    for g in gens:
        if g in span:
            continue
        layer = list(span)
        step = g
        while step not in span:
            span.update(add(m, step) for m in layer)
            step = add(step, g)
    return span


def ideal_closure(ring: Ring, gens) -> IdealHandle:
    """Smallest two-sided ideal containing ``gens``.

    Worklist closure: every queued generator ``g`` contributes ``b g`` and
    ``g b`` for each additive generator ``b`` of ``R``; the members are the
    additive span of everything queued. Bilinearity makes this the full
    two-sided ideal.
    """
    ring.check_cap()
    gens = [g if isinstance(g, Element) else ring.element(g) for g in gens]
    basis = [b.coords for b in ring.additive_generators()]
    mul = ring._mul
    span = {ring._zero}
    queue = [g.coords for g in gens]
    while queue:
        g = queue.pop()
        if g in span:
            continue
        span = _additive_span(ring, [g], span)
        for b in basis:
            for h in (mul(b, g), mul(g, b)):
                if h not in span:
                    queue.append(h)
    members = frozenset(Element(ring, c) for c in span)
    return IdealHandle(ring, members, tuple(gens))


def verify_ideal(ring: Ring, members) -> bool:
    """Exact check that ``members`` is a two-sided ideal of ``ring``."""
    coords = {m.coords for m in members}
    if ring._zero not in coords:
        return False
    if any(ring._neg(c) not in coords for c in coords):
        return False
    # a subgroup iff the span of its members adds nothing new
    if _additive_span(ring, sorted(coords)) != coords:
        return False
    basis = [b.coords for b in ring.additive_generators()]
    mul = ring._mul
    return all(mul(b, c) in coords and mul(c, b) in coords for c in coords for b in basis)


@dataclass
class NilIdeals:
    ideals: list[IdealHandle]
    complete: bool
    gen_cap: int

    def __iter__(self):
        return iter(self.ideals)

    def __len__(self):
        return len(self.ideals)


def nil_ideals(ring: Ring, gen_cap: int = 2) -> NilIdeals:
    """Nil ideals generated by at most ``gen_cap`` nilpotents, deduplicated.

    Every nil ideal is the sum of the principal ideals of its members, and a
    sum of nil ideals is nil. So the principal nil ideals closed under pairwise
    sums give every nil ideal; ``complete`` records that the closure finished
    without hitting ``gen_cap``.
    """
    ring.check_cap()
    principal: dict[frozenset, IdealHandle] = {}
    for x in nilpotents(ring):
        if x.is_zero():
            continue
        h = ideal_closure(ring, [x])
        if h.nil:
            principal.setdefault(frozenset(m.coords for m in h.members), h)
    zero = IdealHandle(ring, frozenset([ring.zero]), ())
    found: dict[frozenset, IdealHandle] = {frozenset([ring._zero]): zero}
    found.update(principal)
    add = ring._add
    complete = True
    frontier = list(principal.values())
    while frontier:
        fresh = []
        for h in frontier:
            for p in list(principal.values()):
                span = {add(a.coords, b.coords) for a in h.members for b in p.members}
                key = frozenset(span)
                if key in found:
                    continue
                gens = h.generators + p.generators
                if len(gens) > gen_cap:
                    complete = False
                    continue
                handle = IdealHandle(ring, frozenset(Element(ring, c) for c in span), gens)
                if handle.nil:
                    found[key] = handle
                    fresh.append(handle)
        frontier = fresh
    ideals = sorted(found.values(), key=lambda h: (len(h), sorted(m.coords for m in h.members)))
    return NilIdeals(ideals, complete, gen_cap)


def quotient(ring: Ring, ideal: IdealHandle) -> QuotientRing:
    """``R / I`` with order-minimal coset representatives."""
    if ideal.ring != ring or not verify_ideal(ring, ideal.members):
        raise NotAnIdeal(f"not an ideal of {ring.spec}")
    cache = ring.cache.setdefault("quotients", {})
    key = frozenset(m.coords for m in ideal.members)
    if key not in cache:
        cache[key] = QuotientRing(ring, ideal.members, ideal.label())
    return cache[key]


@dataclass
class Augmentation:
    """Coefficient-sum map ``RG -> R`` and its kernel ``w(RG)``."""

    ring: Ring
    coefficient_ring: Ring
    ideal: IdealHandle

    def __call__(self, x: Element) -> Element:
        inner = self.coefficient_ring
        b = layout(inner.descriptor).dim
        acc = inner.zero
        for i in range(0, len(x.coords), b):
            acc = acc + inner.element(x.coords[i:i + b])
        return acc


def augmentation(ring: Ring) -> Augmentation:
    d = ring.descriptor
    if not isinstance(d, GroupRing):
        raise RingMismatch(f"{ring.spec} is not a group ring")
    ring.check_cap()
    aug = Augmentation(ring, construct(d.inner), IdealHandle(ring, frozenset([ring.zero])))
    kernel = frozenset(x for x in ring.elements() if aug(x).is_zero())
    if not verify_ideal(ring, kernel):
        raise NotAnIdeal(f"augmentation kernel of {ring.spec} is not an ideal")
    aug.ideal = IdealHandle(ring, kernel)
    return aug
