"""Power orbits: periodicity witnesses, element classes and their lifts.

A witness ``(i, d)`` records ``x^(i+d) == x^i`` with ``i`` and ``d`` both
minimal. Externally the same relation is often written high/low, ``x^n = x^m``
with ``n = i + d`` and ``m = i``; :attr:`OrbitWitness.relation` gives that form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from sympy import factorint, primefactors

from .errors import (
    InfiniteRing,
    NotNilIdeal,
    NotPeriodic,
    WitnessInvalid,
)
from .rings import Element, IntegerRing, PolyRing, Ring

TABLE_LIMIT = 10**6


@dataclass(frozen=True, order=True)
class OrbitWitness:
    index: int
    period: int

    def __post_init__(self):
        if self.index < 1 or self.period < 1:
            raise ValueError(f"witness needs index, period >= 1, got ({self.index}, {self.period})")

    @property
    def relation(self) -> tuple[int, int]:
        """``(n, m)`` with ``x^n == x^m`` and ``n > m >= 1``."""
        return (self.index + self.period, self.index)

    @classmethod
    def from_relation(cls, high: int, low: int) -> "OrbitWitness":
        return cls(low, high - low)

    def holds_for(self, x: Element) -> bool:
        return x ** (self.index + self.period) == x**self.index

    def __str__(self):
        return f"x^{self.index + self.period} = x^{self.index}"


def _orbit_by_table(x: Element, limit: int) -> OrbitWitness | None:
    mul = x.ring._mul
    step = x.coords
    p = step
    seen = {p: 1}
    k = 1
    while True:
        p = mul(p, step)
        k += 1
        first = seen.get(p)
        if first is not None:
            return OrbitWitness(first, k - first)
        if len(seen) >= limit:
            return None
        seen[p] = k


def _orbit_brent(x: Element) -> OrbitWitness:
    """Constant-memory cycle finding on ``x, x^2, x^3, ...`` (Brent)."""
    mul = x.ring._mul
    s = x.coords

    def f(c):
        return mul(c, s)

    power = lam = 1
    tortoise = s
    hare = f(s)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f(hare)
        lam += 1
    tortoise = hare = s
    for _ in range(lam):
        hare = f(hare)
    mu = 0
    while tortoise != hare:
        tortoise = f(tortoise)
        hare = f(hare)
        mu += 1
    return OrbitWitness(mu + 1, lam)


def orbit_witness(x: Element) -> OrbitWitness:
    """Minimal ``(index, period)`` of the power orbit of ``x``.

    Finite rings use a first-occurrence table (falling back to Brent's
    algorithm past ``TABLE_LIMIT`` stored powers); ``ZZ`` and ``Z_n[t]`` go
    through their decision procedures and raise :class:`NotPeriodic` when the
    orbit is provably infinite.
    """
    ring = x.ring
    if isinstance(ring, IntegerRing):
        dec = integer_periodicity(x)
    elif isinstance(ring, PolyRing):
        dec = poly_periodicity(x)
    else:
        cache = ring.cache.setdefault("orbits", {})
        w = cache.get(x.coords)
        if w is None:
            w = _orbit_by_table(x, TABLE_LIMIT) or _orbit_brent(x)
            cache[x.coords] = w
        return w
    if not dec.periodic:
        raise NotPeriodic(f"{x} is not periodic: {dec.reason}", dec)
    return dec.witness


def is_periodic(x: Element) -> bool:
    try:
        orbit_witness(x)
    except NotPeriodic:
        return False
    return True


def idempotent_from(x: Element) -> Element:
    """``x^r`` for the least multiple ``r`` of the period with ``r >= index``.

    The result is idempotent and commutes with ``x``.
    """
    w = orbit_witness(x)
    r = -(-w.index // w.period) * w.period
    return x**r


def combine_product_witness(w1: tuple[int, int], w2: tuple[int, int]) -> tuple[int, int]:
    """Relation for a pair ``(x, y)`` from ``x^k = x^l`` and ``y^m = y^n``.

    Returns ``(s + t, t)`` with ``s = (k - l)(m - n)`` and ``t = max(l, n)``.
    """
    k, l = w1
    m, n = w2
    if not (k > l >= 1 and m > n >= 1):
        raise ValueError(f"relations must be (high, low) with high > low >= 1, got {w1}, {w2}")
    s = (k - l) * (m - n)
    t = max(l, n)
    return (s + t, t)


# element classes


@dataclass(frozen=True)
class ElementClass:
    """A summand class; ``tag`` is one of :data:`CLASS_TAGS`."""

    tag: str
    q: int | None = None

    def __post_init__(self):
        if self.tag not in CLASS_TAGS:
            raise ValueError(f"unknown element class {self.tag!r}")
        if self.tag == "potent" and (self.q is None or self.q < 2):
            raise ValueError("potent(q) needs q >= 2")
        if self.tag != "potent" and self.q is not None:
            raise ValueError(f"class {self.tag} takes no parameter")

    def __str__(self):
        return f"potent({self.q})" if self.q is not None else self.tag

    @classmethod
    def parse(cls, text: str) -> "ElementClass":
        """Accepts ``periodic``, ``potent``, ``potent(3)``/``potent3``, ``nilpotent``,
        ``idempotent``, ``torsion-unit``, ``involution``."""
        t = text.strip().lower().replace("_", "-")
        aliases = {"unit": "torsion-unit", "torsionunit": "torsion-unit", "potent-any": "potent"}
        t = aliases.get(t, t)
        if t.startswith("potent") and t != "potent":
            digits = t[len("potent"):].strip("()")
            if not digits.isdigit():
                raise ValueError(f"cannot parse element class {text!r}")
            return cls("potent", int(digits))
        if t == "potent":
            return cls("potent-any")
        return cls(t)

    def contains(self, x: Element) -> bool:
        """Membership via the orbit engine."""
        try:
            rec = classify(x)
        except NotPeriodic:
            return False
        tag = self.tag
        if tag == "periodic":
            return True
        if tag == "potent":
            return x**self.q == x
        if tag == "potent-any":
            return rec.potent_q is not None
        if tag == "nilpotent":
            return rec.nilpotency_index is not None
        if tag == "idempotent":
            return rec.idempotent
        if tag == "torsion-unit":
            return rec.unit_order is not None
        if tag == "involution":
            return rec.involution
        raise AssertionError(tag)


CLASS_TAGS = ("periodic", "potent", "potent-any", "nilpotent", "idempotent", "torsion-unit", "involution")

PERIODIC = ElementClass("periodic")
POTENT_ANY = ElementClass("potent-any")
NILPOTENT = ElementClass("nilpotent")
IDEMPOTENT = ElementClass("idempotent")
TORSION_UNIT = ElementClass("torsion-unit")
INVOLUTION = ElementClass("involution")


def Potent(q: int) -> ElementClass:
    return ElementClass("potent", q)


@dataclass(frozen=True)
class ElementRecord:
    """Everything the orbit says about one element."""

    element: Element
    witness: OrbitWitness
    potent_q: int | None
    nilpotency_index: int | None
    unit_order: int | None
    idempotent: bool
    involution: bool

    @property
    def is_unit(self) -> bool:
        return self.unit_order is not None

    def labels(self) -> list[str]:
        out = ["periodic"]
        if self.potent_q is not None:
            out.append(f"{self.potent_q}-potent")
        if self.idempotent:
            out.append("idempotent")
        if self.nilpotency_index is not None:
            out.append(f"nilpotent(index {self.nilpotency_index})")
        if self.unit_order is not None:
            out.append(f"torsion unit(order {self.unit_order})")
        if self.involution:
            out.append("involution")
        return out


def classify(x: Element) -> ElementRecord:
    """Classify ``x`` from its orbit; raises :class:`NotPeriodic` for infinite orbits."""
    ring = x.ring
    cache = ring.cache.setdefault("records", {})
    rec = cache.get(x.coords)
    if rec is not None:
        return rec
    w = orbit_witness(x)
    i, d = w.index, w.period
    potent_q = d + 1 if i == 1 else None
    top = x**i
    nil = i if d == 1 and top.is_zero() else None
    unit_order = d if i == 1 and x**d == ring.one else None
    rec = ElementRecord(
        element=x,
        witness=w,
        potent_q=potent_q,
        nilpotency_index=nil,
        unit_order=unit_order,
        idempotent=(i, d) == (1, 1),
        involution=unit_order in (1, 2),
    )
    cache[x.coords] = rec
    return rec


def class_members(ring: Ring, cls: ElementClass) -> list[Element]:
    """Members of ``cls`` in canonical order (finite rings and ``ZZ``)."""
    cache = ring.cache.setdefault("class_members", {})
    if cls in cache:
        return cache[cls]
    if isinstance(ring, IntegerRing):
        candidates = [ring.from_int(v) for v in (-1, 0, 1)]
    elif not ring.finite:
        raise InfiniteRing(f"class {cls} is infinite in {ring.spec}")
    else:
        candidates = ring.elements()
    members = [x for x in candidates if cls.contains(x)]
    cache[cls] = members
    return members


# decision procedures for the symbolic rings


@dataclass(frozen=True)
class PeriodicityDecision:
    periodic: bool
    witness: OrbitWitness | None = None
    reason: str = ""
    degree: int | None = None
    coefficient: int | None = None
    prime: int | None = None


def integer_periodicity(a: Element) -> PeriodicityDecision:
    """Only -1, 0 and 1 are periodic in ``ZZ``."""
    v = a.coords[0]
    if v == 0:
        return PeriodicityDecision(True, OrbitWitness(1, 1))
    if v == 1:
        return PeriodicityDecision(True, OrbitWitness(1, 1))
    if v == -1:
        return PeriodicityDecision(True, OrbitWitness(1, 2))
    return PeriodicityDecision(False, reason=f"|{v}^k| = {abs(v)}^k is strictly increasing")


def radical(n: int) -> int:
    r = 1
    for p in primefactors(n):
        r *= p
    return r


def is_nilpotent_mod(c: int, n: int) -> bool:
    return c % radical(n) == 0


def poly_periodicity(f: Element) -> PeriodicityDecision:
    """Decide periodicity of ``f`` in ``Z_n[t]``.

    ``f`` is periodic iff every non-constant coefficient is nilpotent mod ``n``.
    Otherwise some prime ``p | n`` leaves a non-constant coefficient of ``f``
    nonzero mod ``p``, and in the domain ``F_p[t]`` the degrees of the powers
    of ``f mod p`` grow without bound.
    """
    ring = f.ring
    if not isinstance(ring, PolyRing):
        raise TypeError("poly_periodicity needs an element of Z_n[t]")
    n = ring.n
    coeffs = f.coords
    for deg in range(1, len(coeffs)):
        c = coeffs[deg]
        if not is_nilpotent_mod(c, n):
            p = next(p for p in primefactors(n) if c % p)
            return PeriodicityDecision(
                False,
                reason=f"coefficient {c} at degree {deg} is not nilpotent mod {n}; "
                f"f keeps degree >= {deg} in Z{p}[t]",
                degree=deg,
                coefficient=c,
                prime=p,
            )
    w = _orbit_by_table(f, TABLE_LIMIT)
    if w is None:  # unreachable: the orbit lies in a finite subring
        raise NotPeriodic(f"orbit of {f} exceeded {TABLE_LIMIT} powers")
    return PeriodicityDecision(True, w, reason="constant plus nilpotent part")


# lifting periodicity through nil ideals


def nilpotency_index(y: Element, bound: int | None = None) -> int | None:
    """Least ``s >= 1`` with ``y^s == 0``, or ``None`` if none up to ``bound``."""
    bound = bound or (y.ring.cardinality or 10**6) + 1
    p = y
    for s in range(1, bound + 1):
        if p.is_zero():
            return s
        p = p * y
    return None


def minimal_witness_from_relation(x: Element, high: int, low: int) -> OrbitWitness:
    """Normalize a known relation ``x^high == x^low`` to the minimal witness.

    Uses only direct powers: the minimal period divides ``high - low`` and the
    minimal index is at most ``low``.
    """
    gap = high - low
    base = x**low
    period = next(d for d in _divisors(gap) if x ** (low + d) == base)
    index = low
    while index > 1 and x ** (index - 1) == x ** (index - 1 + period):
        index -= 1
    return OrbitWitness(index, period)


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@dataclass(frozen=True)
class LiftResult:
    """A verified relation ``a^high == a^low`` lifted from ``R/I`` to ``R``."""

    high: int
    low: int
    witness: OrbitWitness
    prime: int | None = None
    power: int | None = None
    nil_exponent: int | None = None
    components: tuple = field(default=())


def frobenius_lift(ring: Ring, ideal, a: Element, w: OrbitWitness) -> LiftResult:
    """Lift a periodicity relation of ``a + I`` in ``R/I`` to ``a`` in ``R``.

    ``w`` describes ``a^m - a^n in I`` with ``(m, n) = w.relation``. In
    characteristic ``p`` with ``(a^m - a^n)^s = 0`` and ``p^l >= s``, raising
    to ``p^l`` gives ``a^(m p^l) = a^(n p^l)``. In characteristic ``p^e`` the
    same exponent is tried first; if it fails the exponent ``p^(l+e-1)`` is
    used, which kills every middle binomial term. Composite characteristic is
    split with :func:`ringlab.structure.crt_split` and the per-component
    relations are recombined with :func:`combine_product_witness`.
    """
    from .structure import crt_split

    members = ideal.members
    if not ideal.nil:
        raise NotNilIdeal("ideal contains a non-nilpotent element")
    m, n = w.relation
    y = a**m - a**n
    if y not in members:
        raise WitnessInvalid(f"a^{m} - a^{n} = {y} is not in the ideal")
    if len(members) == 1:
        return LiftResult(m, n, w)
    char = ring.characteristic
    if char == 0:
        raise WitnessInvalid("lifting needs positive characteristic")
    factors = factorint(char)
    if len(factors) == 1:
        (p, e), = factors.items()
        return _lift_prime_power(a, m, n, p, e)
    parts = []
    rel = None
    for comp in crt_split(ring):
        aj = a * comp.idempotent
        part = _lift_prime_power(aj, m, n, comp.prime, comp.exponent)
        parts.append(part)
        rel = (part.high, part.low) if rel is None else combine_product_witness(rel, (part.high, part.low))
    high, low = rel
    if a**high != a**low:
        raise AssertionError(f"recombined relation failed for {a}")
    return LiftResult(high, low, minimal_witness_from_relation(a, high, low), components=tuple(parts))


def _lift_prime_power(a: Element, m: int, n: int, p: int, e: int) -> LiftResult:
    y = a**m - a**n
    s = nilpotency_index(y)
    if s is None:
        raise NotNilIdeal(f"{y} is not nilpotent")
    l = 0
    while p**l < s:
        l += 1
    for power in (l, l + e - 1) if e > 1 else (l,):
        q = p**power
        high, low = m * q, n * q
        if a**high == a**low:
            return LiftResult(
                high, low, minimal_witness_from_relation(a, high, low), p, power, s
            )
    raise AssertionError(f"Frobenius lift failed for {a} in characteristic {p}^{e}")


def multiplicative_order_mod(p: int, n: int) -> int | None:
    """Least ``m >= 1`` with ``p^m = 1 mod n``; ``None`` unless ``gcd(p, n) = 1``."""
    if n == 1:
        return 1
    if gcd(p, n) != 1:
        return None
    m, acc = 1, p % n
    while acc != 1:
        acc = acc * p % n
        m += 1
    return m
