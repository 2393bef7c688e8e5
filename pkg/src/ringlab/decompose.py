"""Additive decompositions with independently checkable certificates."""

from __future__ import annotations

from dataclasses import dataclass

from .descriptors import Matrix, Triangular
from .errors import (
    CharacteristicError,
    InfiniteRing,
    NoFrobeniusFixpoint,
    NonUnitSum,
    NotTorsionUnits,
)
from .orbit import (
    NILPOTENT,
    PERIODIC,
    POTENT_ANY,
    ElementClass,
    OrbitWitness,
    class_members,
    classify,
    combine_product_witness,
    idempotent_from,
    multiplicative_order_mod,
    orbit_witness,
    poly_periodicity,
)
from .rings import Element, IntegerRing, PolyRing, Ring, construct, layout

FROBENIUS_HARD_CAP = 32


@dataclass(frozen=True)
class DecompositionCertificate:
    """``target == sum(summands)`` with per-summand class evidence.

    Witness meaning per class: ``periodic`` an :class:`OrbitWitness`;
    ``potent``/``potent-any`` the exponent ``q`` with ``s^q == s``;
    ``nilpotent`` an exponent ``k`` with ``s^k == 0``; ``torsion-unit`` an
    exponent ``k`` with ``s^k == 1``; ``idempotent``/``involution`` ``None``.
    """

    target: Element
    summands: tuple[Element, ...]
    classes: tuple[ElementClass, ...]
    witnesses: tuple
    commuting: bool = False

    def __len__(self):
        return len(self.summands)

    def to_text(self) -> str:
        parts = sorted(zip(self.summands, self.classes, self.witnesses), key=lambda p: p[0].coords)
        body = " + ".join(f"{s} <{c}: {_witness_text(w)}>" for s, c, w in parts)
        tail = "; commuting" if self.commuting else ""
        return f"{self.target} = {body}{tail}"

    def __str__(self):
        return self.to_text()


def _witness_text(w) -> str:
    if w is None:
        return "-"
    if isinstance(w, OrbitWitness):
        return f"({w.index},{w.period})"
    return str(w)


def certificate_problems(cert: DecompositionCertificate) -> list[str]:
    """Re-check a certificate using ring arithmetic only.

    Deliberately avoids the orbit engine and the search code: every claim is
    tested with direct powers and products.
    """
    problems = []
    ring = cert.target.ring
    if not (len(cert.summands) == len(cert.classes) == len(cert.witnesses)) or not cert.summands:
        return ["summand, class and witness lists differ in length or are empty"]
    total = ring.zero
    for s in cert.summands:
        total = total + s
    if total != cert.target:
        problems.append(f"summands add up to {total}, not {cert.target}")
    one = ring.one
    for s, cls, w in zip(cert.summands, cert.classes, cert.witnesses):
        tag = cls.tag
        if tag == "periodic":
            ok = isinstance(w, OrbitWitness) and s ** (w.index + w.period) == s**w.index
        elif tag == "potent":
            ok = w == cls.q and s**w == s
        elif tag == "potent-any":
            ok = isinstance(w, int) and w >= 2 and s**w == s
        elif tag == "nilpotent":
            ok = isinstance(w, int) and w >= 1 and (s**w).is_zero()
        elif tag == "idempotent":
            ok = s * s == s
        elif tag == "torsion-unit":
            ok = isinstance(w, int) and w >= 1 and not s.is_zero() and s**w == one
        elif tag == "involution":
            ok = s * s == one
        else:
            ok = False
        if not ok:
            problems.append(f"summand {s} fails its {cls} witness {_witness_text(w)}")
    if cert.commuting:
        for i, s in enumerate(cert.summands):
            for t in cert.summands[:i]:
                if s * t != t * s:
                    problems.append(f"summands {t} and {s} do not commute")
    return problems


def verify_certificate(cert: DecompositionCertificate) -> bool:
    return not certificate_problems(cert)


def class_witness(x: Element, cls: ElementClass):
    """Evidence that ``x`` belongs to ``cls``, computed from its orbit."""
    tag = cls.tag
    if tag == "periodic":
        return orbit_witness(x)
    rec = classify(x)
    if tag == "potent":
        return cls.q
    if tag == "potent-any":
        return rec.potent_q
    if tag == "nilpotent":
        return rec.nilpotency_index
    if tag == "torsion-unit":
        return rec.unit_order
    return None


def _certificate(target, summands, classes, commuting: bool) -> DecompositionCertificate:
    witnesses = tuple(class_witness(s, c) for s, c in zip(summands, classes))
    return DecompositionCertificate(target, tuple(summands), tuple(classes), witnesses, commuting)


def weak_split(x: Element) -> DecompositionCertificate:
    """``x = a + b`` with ``a`` potent, ``b`` nilpotent and ``ab = ba``.

    With ``e`` the idempotent power of ``x``: ``a = x e`` satisfies
    ``a^(d+1) = a`` and ``b = x (1 - e)`` satisfies ``b^r = 0``, where
    ``(i, d)`` is the orbit witness and ``r`` the least multiple of ``d``
    with ``r >= i``.
    """
    w = orbit_witness(x)
    e = idempotent_from(x)
    a = x * e
    b = x - a
    r = -(-w.index // w.period) * w.period
    return DecompositionCertificate(
        x, (a, b), (POTENT_ANY, NILPOTENT), (w.period + 1, r), commuting=True
    )


def _members(ring: Ring, cls: ElementClass) -> list[Element]:
    if isinstance(ring, PolyRing):
        raise InfiniteRing(f"class {cls} is infinite in {ring.spec}; use poly_additive_decision")
    return class_members(ring, cls)


def _suffix_sumsets(ring: Ring, classes: tuple[ElementClass, ...]) -> list[set]:
    """``out[j]`` = coordinates of all sums ``s_j + ... + s_k`` (``s_i`` in class ``i``)."""
    cache = ring.cache.setdefault("suffix_sumsets", {})
    if classes in cache:
        return cache[classes]
    add = ring._add
    full = ring.cardinality if ring.finite else None
    k = len(classes)
    out: list[set] = [set() for _ in range(k)]
    out[k - 1] = {s.coords for s in _members(ring, classes[k - 1])}
    for j in range(k - 2, -1, -1):
        acc: set = set()
        for s in _members(ring, classes[j]):
            acc.update(add(s.coords, t) for t in out[j + 1])
            if full is not None and len(acc) == full:
                break
        out[j] = acc
    cache[classes] = out
    return out


def sum_search(
    x: Element, classes, commuting: bool = False
) -> DecompositionCertificate | None:
    """Lexicographically least ``x = s_1 + ... + s_k`` with ``s_j`` in ``classes[j]``.

    ``k = 2`` scans the first class and looks ``x - s`` up in the second;
    ``k = 3, 4`` run a depth-first search pruned by suffix sumsets. ``None``
    means no decomposition exists (the search is exhaustive).
    """
    classes = tuple(classes)
    k = len(classes)
    if not 1 <= k <= 4:
        raise ValueError("sum_search supports 1 to 4 summands")
    ring = x.ring
    if k == 1:
        found = x in set(_members(ring, classes[0]))
        return _certificate(x, (x,), classes, commuting) if found else None
    if k == 2:
        second = {s.coords for s in _members(ring, classes[1])}
        for s in _members(ring, classes[0]):
            t = x - s
            if t.coords in second and (not commuting or s * t == t * s):
                return _certificate(x, (s, t), classes, commuting)
        return None
    suffix = _suffix_sumsets(ring, classes)
    if x.coords not in suffix[0]:
        return None
    chosen: list[Element] = []

    def dfs(j: int, rest: Element) -> bool:
        if j == k - 1:
            if rest.coords not in suffix[j]:
                return False
            if commuting and any(rest * c != c * rest for c in chosen):
                return False
            chosen.append(rest)
            return True
        for s in _members(ring, classes[j]):
            r2 = rest - s
            if r2.coords not in suffix[j + 1]:
                continue
            if commuting and any(s * c != c * s for c in chosen):
                continue
            chosen.append(s)
            if dfs(j + 1, r2):
                return True
            chosen.pop()
        return False

    if dfs(0, x):
        return _certificate(x, tuple(chosen), classes, commuting)
    return None


def additive_rank(x: Element, cls: ElementClass, cap: int = 8) -> int | None:
    """Least ``k <= cap`` with ``x`` a sum of exactly ``k`` members of ``cls``.

    Layers ``L_1 = cls``, ``L_{j+1} = L_j + L_1`` are memoized per ring and
    class. ``None`` means no ``k <= cap`` works; in a finite ring it also
    means no ``k`` at all once the layers start repeating.
    """
    ring = x.ring
    cache = ring.cache.setdefault("layers", {})
    layers: list[frozenset] = cache.setdefault(cls, [])
    for k in range(1, cap + 1):
        if len(layers) < k:
            layers.append(_next_layer(ring, cls, layers[-1] if layers else None))
        layer = layers[k - 1]
        if x.coords in layer:
            return k
        if layer in layers[: k - 1]:
            return None
    return None


def _next_layer(ring: Ring, cls: ElementClass, prev: frozenset | None) -> frozenset:
    base = [s.coords for s in _members(ring, cls)]
    if prev is None:
        return frozenset(base)
    full = ring.cardinality if ring.finite else None
    if len(prev) == full:
        # a translate of the whole ring is the whole ring
        return prev
    add = ring._add
    acc: set = set()
    for b in base:
        acc.update(add(a, b) for a in prev)
        if len(acc) == full:
            break
    return frozenset(acc)


def matrix_split(m: Element) -> DecompositionCertificate:
    """Split a matrix into strictly upper + strictly lower + diagonal parts.

    The strict parts are nilpotent with ``X^n = 0``. The diagonal part is
    periodic with a relation combined entrywise from the orbit witnesses of
    its entries. Zero parts are dropped; the zero matrix is a single summand.
    """
    ring = m.ring
    d = ring.descriptor
    if not isinstance(d, (Matrix, Triangular)):
        raise TypeError(f"matrix_split needs a matrix ring, got {ring.spec}")
    n = d.n
    inner = construct(d.inner)
    b = layout(d.inner).dim
    coords = m.coords

    def part(keep) -> Element:
        out = []
        for r in range(n):
            for c in range(n):
                block = coords[(r * n + c) * b:(r * n + c + 1) * b]
                out.extend(block if keep(r, c) else (0,) * b)
        return ring.element(out)

    upper = part(lambda r, c: r < c)
    lower = part(lambda r, c: r > c)
    diag = part(lambda r, c: r == c)
    rel = None
    for i in range(n):
        entry = Element(inner, coords[(i * n + i) * b:(i * n + i + 1) * b])
        w = orbit_witness(entry).relation
        rel = w if rel is None else combine_product_witness(rel, w)
    summands, classes, witnesses = [], [], []
    for x in (upper, lower):
        if not x.is_zero():
            summands.append(x)
            classes.append(NILPOTENT)
            witnesses.append(n)
    if not diag.is_zero():
        summands.append(diag)
        classes.append(PERIODIC)
        witnesses.append(OrbitWitness.from_relation(*rel))
    if not summands:
        summands, classes, witnesses = [m], [PERIODIC], [OrbitWitness(1, 1)]
    commuting = all(s * t == t * s for i, s in enumerate(summands) for t in summands[:i])
    return DecompositionCertificate(m, tuple(summands), tuple(classes), tuple(witnesses), commuting)


@dataclass(frozen=True)
class TorsionSum:
    """Result of the constructive torsion-sum step for ``a + b = a (1 + c)``."""

    a: Element
    b: Element
    quotient: Element
    frobenius_power: int
    one_plus_quotient: Element
    order: int


def torsion_sum_witness(a: Element, b: Element) -> TorsionSum:
    """Show ``a + b`` is a torsion unit via ``c = a^-1 b`` and ``c^(p^m) = c``.

    Needs prime characteristic ``p``. Searches ``m`` up to the multiplicative
    order of ``p`` modulo the order of ``c`` (or :data:`FROBENIUS_HARD_CAP`
    when ``p`` divides that order), checks ``(1 + c)^(p^m) = 1 + c`` and
    returns the order of ``a (1 + c) = a + b`` when ``1 + c`` is a unit.
    """
    from sympy import isprime

    ring = a.ring
    p = ring.characteristic
    if not isprime(p):
        raise CharacteristicError(f"{ring.spec} does not have prime characteristic")
    ra, rb = classify(a), classify(b)
    if ra.unit_order is None or rb.unit_order is None:
        raise NotTorsionUnits(f"{a} and {b} must both be torsion units")
    a_inv = a ** (ra.unit_order - 1)
    c = a_inv * b
    one_plus_c = ring.one + c
    rec_c = classify(c)
    diag = {
        "quotient": c,
        "one_plus_quotient": one_plus_c,
        "one_plus_quotient_is_unit": classify(one_plus_c).unit_order is not None,
        "quotient_order": rec_c.unit_order,
    }
    m_cap = multiplicative_order_mod(p, rec_c.unit_order) or FROBENIUS_HARD_CAP
    found = next((m for m in range(1, m_cap + 1) if c ** (p**m) == c), None)
    if found is None:
        raise NoFrobeniusFixpoint(f"no m <= {m_cap} with c^(p^m) = c for c = {c}", diag)
    q = p**found
    if one_plus_c ** q != one_plus_c:
        raise AssertionError("Frobenius identity failed in a commutative subring")
    if not diag["one_plus_quotient_is_unit"]:
        raise NonUnitSum(f"1 + c = {one_plus_c} is not a unit, so a + b is not a torsion unit", diag)
    total = a * one_plus_c
    if total != a + b:
        raise AssertionError("a (1 + c) differs from a + b")
    order = classify(total).unit_order
    if order is None or total**order != ring.one:
        raise AssertionError("a + b should be a torsion unit")
    return TorsionSum(a, b, c, found, one_plus_c, order)


@dataclass(frozen=True)
class AdditiveDecision:
    """Whether a polynomial is a finite sum of periodic elements of ``Z_n[t]``."""

    decomposable: bool
    rank: int | None = None
    certificate: DecompositionCertificate | None = None
    degree: int | None = None
    coefficient: int | None = None
    prime: int | None = None
    reason: str = ""


def poly_additive_decision(f: Element) -> AdditiveDecision:
    """Periodic elements of ``Z_n[t]`` are exactly constant-plus-nilpotent-tail
    polynomials, a set closed under addition; so ``f`` is a sum of periodic
    elements iff it is periodic itself (rank 1)."""
    if not isinstance(f.ring, PolyRing):
        raise TypeError("poly_additive_decision needs an element of Z_n[t]")
    dec = poly_periodicity(f)
    if dec.periodic:
        cert = DecompositionCertificate(f, (f,), (PERIODIC,), (dec.witness,))
        return AdditiveDecision(True, 1, cert, reason=dec.reason)
    return AdditiveDecision(
        False,
        degree=dec.degree,
        coefficient=dec.coefficient,
        prime=dec.prime,
        reason=dec.reason,
    )


def integers_rank(a: Element) -> int:
    """Additive periodic rank in ``ZZ``: ``max(1, |a|)`` (sums of -1, 0, 1)."""
    if not isinstance(a.ring, IntegerRing):
        raise TypeError("integers_rank needs an integer")
    return max(1, abs(a.coords[0]))
