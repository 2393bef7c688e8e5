"""Ring-level predicates built from the element engines.

Finite rings are decided exhaustively. ``ZZ`` and ``Z_n[t]`` are decided by
proved criteria, never by sampling:

* ``ZZ``: periodic elements are -1, 0, 1; units are +-1.
* ``Z_n[t]``: periodic elements are constants plus a nilpotent tail, a set
  closed under addition; units are a unit constant plus a nilpotent tail, and
  all of them have finite order. Commutativity gives t.p.p for every quotient.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decompose import additive_rank, weak_split
from .errors import NotPeriodic
from .orbit import (
    PERIODIC,
    POTENT_ANY,
    TORSION_UNIT,
    ElementClass,
    class_members,
    classify,
    is_periodic,
    poly_periodicity,
)
from .rings import Element, IntegerRing, PolyRing, Ring
from .structure import is_field, nil_ideals, quotient, units

PROFILE_CLASSES = (PERIODIC, POTENT_ANY, TORSION_UNIT)
MAX_K = 4
TPP_EXHAUSTIVE_LIMIT = 10**6


@dataclass
class Flag:
    """A boolean property with its evidence.

    ``counterexample`` is set for every negative flag; ``witness`` and
    ``note`` explain positive ones.
    """

    value: bool
    witness: object = None
    counterexample: object = None
    note: str = ""

    def __bool__(self):
        return self.value


@dataclass
class RingProfile:
    spec: str
    periodic: Flag
    weakly_periodic: Flag
    additively_periodic: Flag
    additively_k: dict[str, dict[int, Flag]]
    has_tpp: Flag
    has_strong_tpp: Flag
    two_good: Flag
    unit_group_torsion: Flag
    commutative: Flag
    field: Flag
    notes: list[str] = field(default_factory=list)

    def chain_holds(self) -> bool:
        """periodic => weakly periodic => additively 2-periodic (class periodic)."""
        k2 = self.additively_k[str(PERIODIC)][2].value
        return (not self.periodic.value or self.weakly_periodic.value) and (
            not self.weakly_periodic.value or k2
        )


def has_tpp(ring: Ring) -> Flag:
    """Torsion units closed under products and inverses."""
    if isinstance(ring, (IntegerRing, PolyRing)):
        return Flag(True, note="commutative: products and inverses of torsion units are torsion")
    us = units(ring)
    torsion = {u.coords for u in us if classify(u).unit_order is not None}
    if len(torsion) ** 2 > TPP_EXHAUSTIVE_LIMIT:
        return Flag(True, note="finite: every unit is torsion, so TU(R) = U(R)")
    mul = ring._mul
    inv_ok = all(
        (u ** (classify(u).unit_order - 1)).coords in torsion for u in us if u.coords in torsion
    )
    if not inv_ok:
        return Flag(False, counterexample="inverse of a torsion unit is not torsion")
    for a in torsion:
        for b in torsion:
            if mul(a, b) not in torsion:
                return Flag(False, counterexample=(Element(ring, a), Element(ring, b)))
    return Flag(True, witness=f"{len(torsion)} torsion units closed under products")


def has_strong_tpp(ring: Ring, gen_cap: int = 2) -> Flag:
    """t.p.p of ``R/I`` for every enumerated nil ideal ``I``."""
    if isinstance(ring, (IntegerRing, PolyRing)):
        return Flag(True, witness="complete", note="commutative: every quotient has t.p.p")
    ideals = nil_ideals(ring, gen_cap)
    for ideal in ideals:
        flag = has_tpp(quotient(ring, ideal))
        if not flag:
            return Flag(False, counterexample=ideal.label(), note=f"quotient by {ideal.label()} lacks t.p.p")
    completeness = "complete" if ideals.complete else f"generators <= {gen_cap}"
    return Flag(
        True,
        witness=completeness,
        note=f"{len(ideals)} nil ideals checked",
    )


def is_two_good(ring: Ring) -> Flag:
    """Every element a sum of two units."""
    if isinstance(ring, IntegerRing):
        return Flag(False, counterexample=ring.from_int(1), note="sums of two units are -2, 0, 2")
    if isinstance(ring, PolyRing):
        t = ring.variable()
        return Flag(False, counterexample=t, note="sums of two units have a nilpotent tail")
    us = {u.coords for u in units(ring)}
    add, neg = ring._add, ring._neg
    for x in ring.elements():
        if not any(add(x.coords, neg(u)) in us for u in us):
            return Flag(False, counterexample=x)
    return Flag(True, witness=f"{len(us)} units")


def unit_group_torsion(ring: Ring) -> Flag:
    if isinstance(ring, IntegerRing):
        return Flag(True, note="units are +-1")
    if isinstance(ring, PolyRing):
        return Flag(
            True,
            note="units are (unit constant)(1 + nilpotent tail); both factors have finite order",
        )
    return Flag(True, note="finite unit group")


def _additively_k(ring: Ring, cls: ElementClass) -> dict[int, Flag]:
    """At most ``k`` summands from ``cls``, for ``k = 1..MAX_K``."""
    if isinstance(ring, IntegerRing):
        # every class here is drawn from {-1, 0, 1}, so k summands reach |n| <= k
        return {k: Flag(False, counterexample=ring.from_int(k + 1)) for k in range(1, MAX_K + 1)}
    if isinstance(ring, PolyRing):
        t = ring.variable()
        return {k: Flag(False, counterexample=t) for k in range(1, MAX_K + 1)}
    elems = ring.elements()
    # best[x] = least number of summands, or None
    best = {x.coords: additive_rank(x, cls, MAX_K) for x in elems}
    out: dict[int, Flag] = {}
    for k in range(1, MAX_K + 1):
        missing = next((x for x in elems if best[x.coords] is None or best[x.coords] > k), None)
        if missing is None:
            out[k] = Flag(True)
        else:
            out[k] = Flag(False, counterexample=missing)
    return out


def profile(ring: Ring) -> RingProfile:
    """All ring-level flags, each negative one with a counterexample."""
    if isinstance(ring, IntegerRing):
        two = ring.from_int(2)
        periodic = Flag(False, counterexample=two, note="only -1, 0, 1 are periodic")
        weakly = Flag(False, counterexample=two, note="potents are -1, 0, 1 and 0 is the only nilpotent")
        additively = Flag(True, note="n = sign(n) * (1 + ... + 1): rank(n) = |n|, unbounded")
    elif isinstance(ring, PolyRing):
        t = ring.variable()
        dec = poly_periodicity(t)
        periodic = Flag(False, counterexample=t, note=dec.reason)
        weakly = Flag(False, counterexample=t, note="commutative, so potent + nilpotent is periodic; t is not")
        additively = Flag(False, counterexample=t, note=dec.reason)
    else:
        elems = ring.elements()
        bad = next((x for x in elems if not is_periodic(x)), None)
        periodic = Flag(bad is None, counterexample=bad, witness="every power orbit is finite")
        bad = None
        for x in elems:
            try:
                weak_split(x)
            except NotPeriodic:
                bad = x
                break
        weakly = Flag(bad is None, counterexample=bad, witness="weak split of every element")
        additively = Flag(True, witness="finite ring: every element is periodic")
    additively_k = {str(cls): _additively_k(ring, cls) for cls in PROFILE_CLASSES}
    commutative = Flag(ring.is_commutative)
    if not ring.is_commutative:
        commutative.counterexample = ring.noncommuting_pair()
    if ring.finite:
        fld = Flag(is_field(ring))
        if not fld:
            fld.counterexample = next(
                (x for x in ring.elements() if not x.is_zero() and classify(x).unit_order is None),
                None,
            ) or "noncommutative"
    else:
        witness = ring.from_int(2) if isinstance(ring, IntegerRing) else ring.variable()
        fld = Flag(False, counterexample=witness, note="not invertible")
    prof = RingProfile(
        spec=ring.spec,
        periodic=periodic,
        weakly_periodic=weakly,
        additively_periodic=additively,
        additively_k=additively_k,
        has_tpp=has_tpp(ring),
        has_strong_tpp=has_strong_tpp(ring),
        two_good=is_two_good(ring),
        unit_group_torsion=unit_group_torsion(ring),
        commutative=commutative,
        field=fld,
    )
    if not prof.chain_holds():
        raise AssertionError(f"inclusion chain broken for {ring.spec}")
    return prof


def profile_rows(prof: RingProfile) -> list[tuple[str, bool, str]]:
    """Flat ``(name, value, evidence)`` rows for display."""
    rows = []

    def evidence(flag: Flag) -> str:
        parts = []
        if flag.counterexample is not None:
            ce = flag.counterexample
            if isinstance(ce, tuple):
                ce = "(" + ", ".join(str(c) for c in ce) + ")"
            parts.append(f"counterexample {ce}")
        if flag.witness is not None:
            parts.append(str(flag.witness))
        if flag.note:
            parts.append(flag.note)
        return "; ".join(parts)

    for name in ("periodic", "weakly_periodic", "additively_periodic"):
        flag = getattr(prof, name)
        rows.append((name, flag.value, evidence(flag)))
    for cls, flags in prof.additively_k.items():
        for k, flag in flags.items():
            rows.append((f"additively_{k}[{cls}]", flag.value, evidence(flag)))
    for name in ("has_tpp", "has_strong_tpp", "two_good", "unit_group_torsion", "commutative", "field"):
        flag = getattr(prof, name)
        rows.append((name, flag.value, evidence(flag)))
    return rows


def class_count(ring: Ring, cls: ElementClass) -> int:
    return len(class_members(ring, cls))
