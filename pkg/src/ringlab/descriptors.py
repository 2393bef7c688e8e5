"""Ring descriptors: immutable trees saying how a ring is built.

Descriptors are hashable, compare structurally, and are the identity of a
constructed ring. Symbolic rings (``Integers``, ``Poly``) may only appear at
the top level; every other variant requires finite operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian

from sympy import isprime

from .errors import InvalidDescriptor
from .groups import GroupTable

MAX_MATRIX_SIZE = 4
MAX_FIELD_ORDER = 1 << 20


class RingDescriptor:
    """Base class of all descriptor variants."""

    finite = True

    def _require_finite(self, *parts: "RingDescriptor") -> None:
        for p in parts:
            if not isinstance(p, RingDescriptor):
                raise InvalidDescriptor(f"{type(self).__name__}: operand {p!r} is not a descriptor")
            if not p.finite:
                raise InvalidDescriptor(
                    f"{type(self).__name__}: symbolic rings may only appear at the top level"
                )


@dataclass(frozen=True)
class Zn(RingDescriptor):
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidDescriptor(f"Zn needs n >= 2, got {self.n!r}")


@dataclass(frozen=True)
class Integers(RingDescriptor):
    finite = False


@dataclass(frozen=True)
class Product(RingDescriptor):
    left: RingDescriptor
    right: RingDescriptor

    def __post_init__(self):
        self._require_finite(self.left, self.right)
        if isinstance(self.right, Product):
            raise InvalidDescriptor("products are left-associated: right factor cannot be a product")


@dataclass(frozen=True)
class Matrix(RingDescriptor):
    n: int
    inner: RingDescriptor

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_MATRIX_SIZE:
            raise InvalidDescriptor(f"matrix size must be in 1..{MAX_MATRIX_SIZE}, got {self.n!r}")
        self._require_finite(self.inner)


@dataclass(frozen=True)
class Triangular(RingDescriptor):
    n: int
    inner: RingDescriptor

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_MATRIX_SIZE:
            raise InvalidDescriptor(f"matrix size must be in 1..{MAX_MATRIX_SIZE}, got {self.n!r}")
        self._require_finite(self.inner)


@dataclass(frozen=True)
class GroupRing(RingDescriptor):
    inner: RingDescriptor
    group: GroupTable

    def __post_init__(self):
        self._require_finite(self.inner)
        if isinstance(self.inner, (Product, GroupRing)):
            raise InvalidDescriptor("group-ring coefficients must be an atomic ring")
        if not isinstance(self.group, GroupTable):
            raise InvalidDescriptor("group ring needs a GroupTable")


@dataclass(frozen=True)
class PolyQuotient(RingDescriptor):
    """``Z_n[t] / (f)`` for a monic ``f``; ``modulus`` lists coefficients low to high."""

    n: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidDescriptor(f"PolyQuotient needs n >= 2, got {self.n!r}")
        mod = tuple(int(c) % self.n for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) < 2:
            raise InvalidDescriptor("modulus must have degree >= 1")
        if mod[-1] != 1:
            raise InvalidDescriptor("modulus must be monic")

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1


@dataclass(frozen=True)
class Poly(RingDescriptor):
    """The polynomial ring ``Z_n[t]``."""

    n: int
    finite = False

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidDescriptor(f"Poly needs n >= 2, got {self.n!r}")


def _is_irreducible(p: int, coeffs: tuple[int, ...]) -> bool:
    """True if the monic polynomial over F_p is irreducible (trial division)."""
    k = len(coeffs) - 1
    for d in range(1, k // 2 + 1):
        for low in cartesian(range(p), repeat=d):
            divisor = low + (1,)
            if _poly_rem(coeffs, divisor, p) == (0,) * d:
                return False
    return True


def _poly_rem(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    # b monic
    r = list(a)
    db = len(b) - 1
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i] % p
        if c:
            for j in range(db + 1):
                r[i - db + j] = (r[i - db + j] - c * b[j]) % p
    return tuple(v % p for v in r[:db])


def _too_big(p: int, k: int) -> bool:
    return p > MAX_FIELD_ORDER or k > MAX_FIELD_ORDER.bit_length() or p**k > MAX_FIELD_ORDER


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``k`` over ``F_p``.

    "Least" is lexicographic on the low-to-high coefficient list, so
    ``GF(2^2)`` uses ``1 + t + t^2`` and ``GF(2^3)`` uses ``1 + t^2 + t^3``.
    """
    if k < 1:
        raise InvalidDescriptor("GF exponent must be >= 1")
    if _too_big(p, k):
        raise InvalidDescriptor(f"GF({p}^{k}) is larger than {MAX_FIELD_ORDER}")
    if not isprime(p):
        raise InvalidDescriptor(f"GF needs a prime base, got {p}")
    for low in cartesian(range(p), repeat=k):
        coeffs = low + (1,)
        if k == 1 or (coeffs[0] != 0 and _is_irreducible(p, coeffs)):
            return coeffs
    raise AssertionError("irreducible polynomials exist in every degree")


def galois_field(p: int, k: int) -> PolyQuotient:
    return PolyQuotient(p, least_irreducible(p, k))


def field_parameters(d: PolyQuotient) -> tuple[int, int] | None:
    """``(p, k)`` when ``d`` is exactly the canonical ``GF(p^k)``, else ``None``."""
    p, k = d.n, d.degree
    if _too_big(p, k) or not isprime(p):
        return None
    return (p, k) if least_irreducible(p, k) == d.modulus else None
