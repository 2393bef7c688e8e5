"""Theorem suites and falsification probes over a ring corpus.

Each check runs on one ring and yields one :class:`CheckReport`. A check
verifies its claim over the whole ring (all elements, all pairs, all nil
ideals) and records the counts in ``data``; the first failure found becomes
the counterexample. Engine errors turn into ``skip`` with the message as the
reason, so one bad ring never aborts a run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from ..decompose import (
    additive_rank,
    certificate_problems,
    matrix_split,
    poly_additive_decision,
    sum_search,
    torsion_sum_witness,
)
from ..descriptors import GroupRing, Integers, Matrix, Poly, Product, RingDescriptor, Triangular
from ..dsl import parse_ring
from ..errors import NoFrobeniusFixpoint, NonUnitSum, RinglabError
from ..orbit import (
    PERIODIC,
    POTENT_ANY,
    TORSION_UNIT,
    ElementClass,
    Potent,
    combine_product_witness,
    frobenius_lift,
    is_periodic,
    orbit_witness,
)
from ..properties import has_strong_tpp, has_tpp, is_two_good, profile
from ..rings import Element, Ring, construct
from ..structure import (
    IdealHandle,
    augmentation,
    center,
    crt_split,
    is_central,
    is_field,
    nil_ideals,
    quotient,
    units,
    verify_ideal,
)
from .report import CheckReport

PAIR_LIMIT = 256
ELEMENT_LIMIT = 4096
RANK_CAP = 4
PROBLEM_RINGS = tuple(f"Z{n}" for n in range(2, 31)) + ("M2(Z2)",)


@dataclass
class Outcome:
    status: str
    witness: str | None = None
    counterexample: str | None = None
    data: dict | None = None
    vacuity: bool = False
    reason: str = ""


def _verdict(failure, witness: str, data: dict, vacuity: bool = False) -> Outcome:
    if failure is None:
        return Outcome("pass", witness=witness, data=data, vacuity=vacuity)
    return Outcome("fail", counterexample=str(failure), data=data, vacuity=vacuity)


class Skip(Exception):
    pass


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    applies: Callable[[RingDescriptor], bool]
    run: Callable[[Ring], Outcome]


def _finite(d):
    return d.finite


def _elements(ring: Ring, limit: int) -> list[Element]:
    n = ring.cardinality
    if n > limit:
        raise Skip(f"{n} elements exceeds the check limit {limit}")
    return ring.elements()


def _max_rank(ring: Ring, cls: ElementClass, cap: int = RANK_CAP) -> int | None:
    """Largest additive rank over the ring, ``None`` if some element exceeds ``cap``."""
    worst = 0
    for x in ring.elements():
        r = additive_rank(x, cls, cap)
        if r is None:
            return None
        worst = max(worst, r)
    return worst


def _prime_power(n: int) -> tuple[int, int] | None:
    from sympy import factorint

    f = factorint(n)
    return next(iter(f.items())) if len(f) == 1 else None


def _fmt_pair(a, b) -> str:
    return f"({a}, {b})"


# NILLIFT


def _product_witness(ring: Ring) -> Outcome:
    d = ring.descriptor
    left, right = construct(d.left), construct(d.right)
    pairs = 0
    for x in _elements(left, PAIR_LIMIT):
        wx = orbit_witness(x).relation
        for y in _elements(right, PAIR_LIMIT):
            wy = orbit_witness(y).relation
            high, low = combine_product_witness(wx, wy)
            z = ring.element(x.coords + y.coords)
            pairs += 1
            if z**high != z**low:
                return _verdict(f"{z} with relation ({high}, {low})", "", {"pairs": pairs})
    return _verdict(None, f"{pairs} pairs validated", {"pairs": pairs})


def _claim_frobenius(ring: Ring) -> Outcome:
    elems = _elements(ring, PAIR_LIMIT)
    ideals = nil_ideals(ring)
    triples = 0
    for ideal in ideals:
        q = quotient(ring, ideal)
        for a in elems:
            w = orbit_witness(q.project(a))
            lift = frobenius_lift(ring, ideal, a, w)
            triples += 1
            if lift.high <= lift.low or a**lift.high != a**lift.low:
                return _verdict(
                    f"{a} mod {ideal.label()}: a^{lift.high} != a^{lift.low}",
                    "",
                    {"nil_ideals": len(ideals), "triples": triples},
                )
    data = {"nil_ideals": len(ideals), "complete": ideals.complete, "triples": triples}
    return _verdict(None, f"{triples} (ideal, element) lifts validated", data)


def _additive_k_plus_one(ring: Ring) -> Outcome:
    _elements(ring, PAIR_LIMIT)
    k_ring = _max_rank(ring, PERIODIC)
    checked = []
    for ideal in nil_ideals(ring):
        k_q = _max_rank(quotient(ring, ideal), PERIODIC)
        checked.append(k_q)
        if k_q is not None and (k_ring is None or k_ring > k_q + 1):
            return _verdict(ideal.label(), "", {"rank_R": k_ring, "rank_R_mod_I": k_q}, True)
    data = {"rank_R": k_ring, "quotient_ranks": checked}
    return _verdict(None, f"rank(R) = {k_ring} <= rank(R/I) + 1 for {len(checked)} nil ideals", data, True)


def _crt(ring: Ring) -> Outcome:
    elems = _elements(ring, ELEMENT_LIMIT)
    comps = crt_split(ring)
    total = ring.zero
    size = 1
    data = {"characteristic": ring.characteristic, "components": []}
    for i, c in enumerate(comps):
        e = c.idempotent
        total = total + e
        comp_size = len({(x * e).coords for x in elems})
        size *= comp_size
        data["components"].append([c.modulus, str(e), comp_size])
        if e * e != e or not is_central(e):
            return _verdict(f"idempotent {e} is not central idempotent", "", data)
        if c.characteristic() != c.modulus:
            return _verdict(f"component {e} has characteristic {c.characteristic()}", "", data)
        for f in comps[:i]:
            if not (e * f.idempotent).is_zero():
                return _verdict(f"{e} and {f.idempotent} are not orthogonal", "", data)
    if total != ring.one:
        return _verdict(f"idempotents sum to {total}", "", data)
    if size != len(elems):
        return _verdict(f"component sizes multiply to {size}, not {len(elems)}", "", data)
    return _verdict(None, " + ".join(str(c.idempotent) for c in comps) + " = 1", data)


# TRIANG


def _is_matrix(d):
    return isinstance(d, (Matrix, Triangular))


def _matrix_split(ring: Ring) -> Outcome:
    elems = _elements(ring, ELEMENT_LIMIT)
    most = 0
    for x in elems:
        cert = matrix_split(x)
        problems = certificate_problems(cert)
        if problems or len(cert) > 3:
            return _verdict(f"{x}: {'; '.join(problems) or f'{len(cert)} summands'}", "", {})
        most = max(most, len(cert))
    data = {"elements": len(elems), "max_summands": most}
    return _verdict(None, f"{len(elems)} certificates valid, at most {most} summands", data)


def _matrix_equivalence(ring: Ring) -> Outcome:
    d = ring.descriptor
    inner = construct(d.inner)
    if not inner.is_commutative:
        raise Skip("coefficient ring is not commutative")
    elems = _elements(ring, ELEMENT_LIMIT)
    ring_periodic = all(is_periodic(x) for x in elems)
    inner_periodic = all(is_periodic(x) for x in inner.elements())
    rank = _max_rank(ring, PERIODIC)
    if isinstance(d, Matrix):
        additive = rank is not None and rank <= 2
        name = "additively_2_periodic"
    else:
        additive = rank is not None
        name = "additively_periodic"
    data = {name: additive, "periodic": ring_periodic, "coefficients_periodic": inner_periodic}
    agree = additive == ring_periodic == inner_periodic
    return _verdict(None if agree else "equivalence broken", "all three hold", data, True)


def _matrix_rank_bound(ring: Ring) -> Outcome:
    d = ring.descriptor
    _elements(ring, ELEMENT_LIMIT)
    k_inner = _max_rank(construct(d.inner), PERIODIC)
    k_ring = _max_rank(ring, PERIODIC)
    extra = 2 if isinstance(d, Matrix) else 1
    data = {"rank_coefficients": k_inner, "rank_matrices": k_ring, "allowed": k_inner + extra}
    ok = k_ring is not None and k_ring <= k_inner + extra
    return _verdict(None if ok else f"rank {k_ring}", f"rank {k_ring} <= {k_inner} + {extra}", data, True)


# COMMUTE


def _commuting_sum(ring: Ring) -> Outcome:
    elems = _elements(ring, PAIR_LIMIT)
    periodic = [x for x in elems if is_periodic(x)]
    seen: set = set()
    pairs = 0
    for i, u in enumerate(periodic):
        for v in periodic[i:]:
            if u * v != v * u:
                continue
            pairs += 1
            x = u + v
            if x.coords in seen:
                continue
            seen.add(x.coords)
            w = orbit_witness(x)
            if x ** (w.index + w.period) != x**w.index:
                return _verdict(_fmt_pair(u, v), "", {"pairs": pairs}, True)
    data = {"commuting_pairs": pairs, "distinct_sums": len(seen)}
    return _verdict(None, f"{len(seen)} sums of commuting periodic pairs have verified witnesses", data, True)


def _central_sum(ring: Ring) -> Outcome:
    elems = _elements(ring, PAIR_LIMIT)
    periodic = {x.coords for x in elems if is_periodic(x)}
    zs = center(ring)
    pairs = 0
    for z in zs:
        for u in elems:
            if u.coords not in periodic:
                continue
            v = z - u
            if v.coords not in periodic:
                continue
            pairs += 1
            if u * v != v * u:
                return _verdict(_fmt_pair(u, v), "", {"pairs": pairs})
    return _verdict(None, f"{pairs} pairs with central sum commute", {"central": len(zs), "pairs": pairs})


def _commutative_periodic(ring: Ring) -> Outcome:
    if not ring.is_commutative:
        raise Skip("ring is not commutative")
    elems = _elements(ring, ELEMENT_LIMIT)
    bad = next((x for x in elems if not is_periodic(x)), None)
    return _verdict(bad, f"all {len(elems)} elements periodic", {"elements": len(elems)}, True)


# GROUPRING


def _augmentation(ring: Ring) -> Outcome:
    aug = augmentation(ring)
    inner = aug.coefficient_ring
    q = quotient(ring, aug.ideal)
    reps = q.elements()
    image = {q_elem.coords: aug(q.lift(q_elem)) for q_elem in reps}
    data = {"|RG|": ring.cardinality, "|w|": len(aug.ideal), "|RG/w|": len(reps), "|R|": inner.cardinality}
    if len(reps) != inner.cardinality or len({v.coords for v in image.values()}) != len(reps):
        return _verdict("coefficient sum is not a bijection on RG/w", "", data)
    for x in ring.elements():
        if aug(x) != image[q.project(x).coords]:
            return _verdict(f"{x} maps off its coset", "", data)
    if image[q.one.coords] != inner.one:
        return _verdict("1 does not map to 1", "", data)
    for a in reps:
        for b in reps:
            fa, fb = image[a.coords], image[b.coords]
            if image[(a + b).coords] != fa + fb or image[(a * b).coords] != fa * fb:
                return _verdict(_fmt_pair(a, b), "", data)
    return _verdict(None, f"RG/w ~ {inner.spec} via coefficient sum", data)


def _group_ring_periodic(ring: Ring) -> Outcome:
    if not construct(ring.descriptor.inner).is_commutative:
        raise Skip("coefficient ring is not commutative")
    elems = _elements(ring, 20000)
    bad = next((x for x in elems if not is_periodic(x)), None)
    return _verdict(bad, f"all {len(elems)} elements periodic", {"elements": len(elems)}, True)


def _nilpotent_equivalence(ring: Ring) -> Outcome:
    d = ring.descriptor
    group = d.group
    if not group.nilpotent:
        raise Skip(f"{group.name} is not nilpotent")
    inner = construct(d.inner)
    elems = _elements(ring, 20000)
    rank = _max_rank(ring, PERIODIC)
    statements = {
        "additively_2_periodic": rank is not None and rank <= 2,
        "periodic": all(is_periodic(x) for x in elems),
        "coefficients_periodic_and_group_locally_finite": all(is_periodic(x) for x in inner.elements()),
    }
    data = dict(statements, scope="finite groups of nilpotency class <= 2")
    agree = len(set(statements.values())) == 1
    return _verdict(None if agree else "equivalence broken", "all three hold", data, True)


# TPP


def _tpp(ring: Ring) -> Outcome:
    flag = has_tpp(ring)
    data = {} if not ring.finite else {"units": len(units(ring))}
    ce = None if flag else flag.counterexample
    return _verdict(ce, flag.witness or flag.note, data, ring.finite)


def _strong_tpp(ring: Ring) -> Outcome:
    if ring.finite:
        _elements(ring, ELEMENT_LIMIT)
    flag = has_strong_tpp(ring)
    return _verdict(None if flag else flag.counterexample, flag.note, {"completeness": flag.witness}, ring.finite)


def _constructive_step(ring: Ring) -> Outcome:
    from sympy import isprime

    if not isprime(ring.characteristic):
        raise Skip("characteristic is not prime")
    if not is_field(ring):
        raise Skip("not a field; see FALSIFY tpp-lemma")
    us = units(ring)
    pairs = 0
    for a in us:
        for b in us:
            if (a + b).is_zero():
                continue
            res = torsion_sum_witness(a, b)
            pairs += 1
            if (a + b) ** res.order != ring.one:
                return _verdict(_fmt_pair(a, b), "", {"pairs": pairs})
    return _verdict(None, f"{pairs} torsion-unit pairs with nonzero sum", {"pairs": pairs})


def _prime_power_char(ring: Ring) -> tuple[int, int]:
    pp = _prime_power(ring.characteristic)
    if pp is None:
        raise Skip(f"characteristic {ring.characteristic} is not a prime power")
    return pp


def _strongly_reduction(ring: Ring) -> Outcome:
    p, _ = _prime_power_char(ring)
    elems = _elements(ring, ELEMENT_LIMIT)
    pr = frozenset(x * p for x in elems)
    if not verify_ideal(ring, pr):
        return _verdict("pR is not an ideal", "", {})
    ideal = IdealHandle(ring, pr, (ring.from_int(p),))
    if not ideal.nil:
        return _verdict("pR is not nil", "", {"|pR|": len(pr)})
    flag = has_tpp(quotient(ring, ideal))
    data = {"|pR|": len(pr), "quotient_tpp": flag.value}
    return _verdict(None if flag else "R/pR lacks t.p.p", "pR nil, R/pR has t.p.p", data)


def _additively_2_torsion(ring: Ring) -> bool:
    tu = [u.coords for u in units(ring)]
    reach = set(tu)
    add = ring._add
    for a in tu:
        reach.update(add(a, b) for b in tu)
    return len(reach) == ring.cardinality


def _strongly_echo(ring: Ring) -> Outcome:
    _prime_power_char(ring)
    elems = _elements(ring, ELEMENT_LIMIT)
    strong = bool(has_strong_tpp(ring))
    two = _additively_2_torsion(ring)
    periodic = all(is_periodic(x) for x in elems)
    data = {"strong_tpp": strong, "additively_2_torsion": two, "periodic": periodic}
    ok = not (strong and two) or periodic
    return _verdict(None if ok else "hypotheses hold but ring is not periodic", "co-occurs with periodic", data, True)


# POLYREMARK


def _poly_t(ring: Ring) -> Outcome:
    t = ring.variable()
    dec = poly_additive_decision(t)
    data = {"decomposable": dec.decomposable, "degree": dec.degree, "coefficient": dec.coefficient, "prime": dec.prime}
    if dec.decomposable:
        return _verdict(f"t reported as rank {dec.rank}", "", data)
    return _verdict(None, dec.reason, data)


def _poly_units(ring: Ring) -> Outcome:
    prof = profile(ring)
    data = {"unit_group_torsion": prof.unit_group_torsion.value, "periodic": prof.periodic.value}
    ok = prof.unit_group_torsion.value and not prof.periodic.value
    return _verdict(None if ok else "profile disagrees", f"t is not periodic; {prof.unit_group_torsion.note}", data)


# PROBLEMS (data only)


def _coverage(ring: Ring, classes, commuting: bool) -> Outcome:
    elems = _elements(ring, ELEMENT_LIMIT)
    hits = sum(1 for x in elems if sum_search(x, classes, commuting) is not None)
    data = {"covered": hits, "elements": len(elems), "fraction": round(hits / len(elems), 6)}
    return Outcome("data", data=data)


def _two_potents(ring: Ring) -> Outcome:
    out = _coverage(ring, (POTENT_ANY, POTENT_ANY), False)
    out.data["max_rank_potent"] = _max_rank(ring, POTENT_ANY)
    return out


def _commuting_3_4(ring: Ring) -> Outcome:
    return _coverage(ring, (Potent(3), Potent(4)), True)


def _commuting_3_5(ring: Ring) -> Outcome:
    return _coverage(ring, (Potent(3), Potent(5)), True)


# FALSIFY (data only)


def _tpp_lemma(ring: Ring) -> Outcome:
    from sympy import isprime

    p = ring.characteristic
    if not isprime(p):
        raise Skip("characteristic is not prime")
    _elements(ring, ELEMENT_LIMIT)
    data = {
        "characteristic": p,
        "tpp": bool(has_tpp(ring)),
        "additively_2_torsion": _additively_2_torsion(ring),
        "field": is_field(ring),
    }
    for a in units(ring):
        for b in units(ring):
            if (a + b).is_zero():
                continue
            try:
                torsion_sum_witness(a, b)
            except (NoFrobeniusFixpoint, NonUnitSum) as exc:
                diag = exc.diagnostics
                data["first_failing_pair"] = _fmt_pair(a, b)
                data["failure"] = type(exc).__name__
                data["quotient"] = str(diag["quotient"])
                data["one_plus_quotient"] = str(diag["one_plus_quotient"])
                data["one_plus_quotient_is_unit"] = diag["one_plus_quotient_is_unit"]
                return Outcome("data", data=data)
    data["failure"] = None
    return Outcome("data", data=data)


def _commuting_zz(ring: Ring) -> Outcome:
    prof = profile(ring)
    data = {
        "commutative": prof.commutative.value,
        "additively_periodic": prof.additively_periodic.value,
        "periodic": prof.periodic.value,
        "uniform_k": None,
        "rank_of_n": "|n|",
        "non_periodic_example": str(prof.periodic.counterexample),
    }
    return Outcome("data", data=data)


def _rank_profile(ring: Ring) -> Outcome:
    _elements(ring, ELEMENT_LIMIT)
    data = {str(cls): _max_rank(ring, cls) for cls in (PERIODIC, POTENT_ANY, TORSION_UNIT)}
    data["two_good"] = bool(is_two_good(ring))
    return Outcome("data", data=data)


def _is(kind):
    return lambda d: isinstance(d, kind)


def _group_ring(d):
    return isinstance(d, GroupRing)


SUITES: dict[str, tuple[Check, ...]] = {
    "NILLIFT": (
        Check("product-witness", "product of periodic rings is periodic via (s+t, t)", _is(Product), _product_witness),
        Check("claim-frobenius", "periodic modulo a nil ideal lifts via a^(m p^l) = a^(n p^l)", _finite, _claim_frobenius),
        Check("additive-k-plus-one", "R/I additively k-periodic for nil I gives R additively (k+1)-periodic", _finite, _additive_k_plus_one),
        Check("crt-split", "R splits into components of prime-power characteristic", _finite, _crt),
    ),
    "TRIANG": (
        Check("matrix-split", "matrix = upper + lower + diagonal, at most 3 periodic summands", _is_matrix, _matrix_split),
        Check("periodic-equivalence", "matrix ring: additively periodic, periodic and periodic coefficients agree", _is_matrix, _matrix_equivalence),
        Check("rank-bound", "matrix ranks exceed coefficient ranks by at most 2 (full) or 1 (triangular)", _is_matrix, _matrix_rank_bound),
    ),
    "COMMUTE": (
        Check("commuting-sum-periodic", "commuting sums of periodic elements are periodic", _finite, _commuting_sum),
        Check("central-sum-commutes", "periodic u, v with u + v central commute", _finite, _central_sum),
        Check("commutative-periodic", "commutative additively periodic ring is periodic", _finite, _commutative_periodic),
    ),
    "GROUPRING": (
        Check("augmentation-quotient", "RG / w(RG) is isomorphic to R", _group_ring, _augmentation),
        Check("group-ring-periodic", "additively periodic RG over commutative R is periodic", _group_ring, _group_ring_periodic),
        Check("nilpotent-equivalence", "G nilpotent: RG additively 2-periodic, RG periodic, R periodic and G locally finite agree", _group_ring, _nilpotent_equivalence),
    ),
    "TPP": (
        Check("tpp", "torsion units form a subgroup of the units", lambda d: True, _tpp),
        Check("strong-tpp", "R/I has t.p.p for every nil ideal I", lambda d: True, _strong_tpp),
        Check("constructive-step", "in a field a + b = a(1 + a^-1 b) is a torsion unit", _finite, _constructive_step),
        Check("strongly-reduction", "pR is nil and R/pR has t.p.p", _finite, _strongly_reduction),
        Check("strongly-echo", "strong t.p.p and sums of two torsion units give periodic", _finite, _strongly_echo),
    ),
    "POLYREMARK": (
        Check("t-not-additively-2-periodic", "polynomial rings are not additively 2-periodic", _is(Poly), _poly_t),
        Check("torsion-units-not-periodic", "torsion unit group does not force periodicity", _is(Poly), _poly_units),
    ),
    "PROBLEMS": (
        Check("two-potents", "question: is every element a sum of two potents", _finite, _two_potents),
        Check("commuting-3-4", "question: sums of a commuting 3-potent and 4-potent", _finite, _commuting_3_4),
        Check("commuting-3-5", "question: sums of a commuting 3-potent and 5-potent", _finite, _commuting_3_5),
    ),
    "FALSIFY": (
        Check("tpp-lemma", "probe: prime characteristic, t.p.p, sums of two torsion units, field?", _finite, _tpp_lemma),
        Check("commuting-zz", "probe: commutative, additively periodic with per-element ranks, not periodic", _is(Integers), _commuting_zz),
        Check("rank-profile", "probe: largest additive ranks per class", _finite, _rank_profile),
    ),
}

# the commuting-potent experiments run on a fixed ring list, not the corpus
_FIXED_RING_CHECKS = {("PROBLEMS", "commuting-3-4"), ("PROBLEMS", "commuting-3-5")}

SUITE_IDS = tuple(SUITES)


def parse_suites(text: str | None) -> tuple[str, ...]:
    if not text:
        return SUITE_IDS
    ids = tuple(s.strip().upper() for s in text.split(",") if s.strip())
    unknown = [s for s in ids if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}; known: {', '.join(SUITE_IDS)}")
    return tuple(s for s in SUITE_IDS if s in ids)


def run_check(suite: str, check: Check, ring: Ring) -> CheckReport:
    start = time.perf_counter()
    try:
        out = check.run(ring)
    except Skip as exc:
        out = Outcome("skip", reason=str(exc))
    except RinglabError as exc:
        out = Outcome("skip", reason=f"{type(exc).__name__}: {exc}")
    millis = (time.perf_counter() - start) * 1000
    return CheckReport(
        id=check.id,
        suite=suite,
        anchor=check.anchor,
        ring=ring.spec,
        status=out.status,
        reason=out.reason,
        vacuity=out.vacuity,
        witness=out.witness,
        counterexample=out.counterexample,
        data=out.data or {},
        millis=millis,
    )


def run_suite(rings, suite_ids=SUITE_IDS) -> list[CheckReport]:
    """Run the selected suites; reports ordered by (suite, ring, check id)."""
    descriptors = [d if isinstance(d, RingDescriptor) else d.descriptor for d in rings]
    fixed = [construct(parse_ring(s)) for s in PROBLEM_RINGS]
    reports = []
    for suite in suite_ids:
        checks = sorted(SUITES[suite], key=lambda c: c.id)
        rows = []
        for order, d in enumerate(descriptors):
            ring = construct(d)
            for check in checks:
                if (suite, check.id) in _FIXED_RING_CHECKS:
                    continue
                if check.applies(d):
                    rows.append(((order, check.id), run_check(suite, check, ring)))
        for check in checks:
            if (suite, check.id) not in _FIXED_RING_CHECKS:
                continue
            for order, ring in enumerate(fixed, len(descriptors)):
                rows.append(((order, check.id), run_check(suite, check, ring)))
        rows.sort(key=lambda r: r[0])
        reports.extend(r for _, r in rows)
    return reports
