"""Ring-spec and element-literal parsing, plus the canonical printer.

Ring grammar (whitespace insignificant, keywords case-sensitive)::

    ring  := term ( "x" term )*                       left-associated products
    term  := atom [ "[" group "]" ]                   group ring over an atom
    atom  := "Z" INT | "ZZ" | "M" INT "(" ring ")" | "T" INT "(" ring ")"
           | "GF" "(" INT "^" INT ")" | "POLY" "(" "Z" INT ")"
           | "Q" "(" "Z" INT "," "[" INT ("," INT)* "]" ")"
    group := "C" INT | "C" INT "x" "C" INT | "S3" | "D4" | "Q8"

``GF(p^k)`` expands to ``Q(Zp, f)`` with ``f`` the least monic irreducible
of degree ``k`` (see :func:`ringlab.descriptors.least_irreducible`); the
printer folds that exact quotient back to ``GF(p^k)``.

Element literals: integers (``k`` means ``k*1`` in any ring), ``(a, b)`` for
products, ``[[..], [..]]`` matrix rows, ``{name: coeff, ...}`` for group
rings, ``[c0, c1, ...]`` low-to-high coefficients for ``Q``/``GF``/``POLY``.
"""

from __future__ import annotations

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
    field_parameters,
    galois_field,
)
from .errors import InvalidDescriptor, SemanticError, SpecSyntaxError, WrongShape
from .groups import preset
from .rings import Element, Ring, layout

MAX_DEPTH = 16
MAX_DIGITS = 200


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        t = self.text
        while self.pos < len(t) and t[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self, word: str) -> bool:
        self.skip()
        return self.text.startswith(word, self.pos)

    def accept(self, word: str) -> bool:
        if self.peek(word):
            self.pos += len(word)
            return True
        return False

    def expect(self, word: str):
        if not self.accept(word):
            self.fail(repr(word))

    def fail(self, expected: str):
        raise SpecSyntaxError(min(self.pos, max(len(self.text) - 1, 0)), expected, self.text)

    def integer(self, signed: bool = False) -> int:
        self.skip()
        start = self.pos
        t = self.text
        if signed and self.pos < len(t) and t[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(t) and t[self.pos].isascii() and t[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self.fail("integer")
        if self.pos - digits > MAX_DIGITS:
            raise SemanticError(f"integer at position {start} has more than {MAX_DIGITS} digits")
        return int(t[start:self.pos])

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)


# ring specs


def parse_ring(text: str) -> RingDescriptor:
    """Parse a ring spec into a descriptor.

    Raises :class:`SpecSyntaxError` (with position) or :class:`SemanticError`.
    """
    cur = _Cursor(text)
    d = _ring(cur, 0)
    if not cur.at_end():
        cur.fail("'x' or end of input")
    return d


def _semantic(fn, *args, where: int):
    try:
        return fn(*args)
    except InvalidDescriptor as exc:
        raise SemanticError(f"at position {where}: {exc}") from None


def _ring(cur: _Cursor, depth: int) -> RingDescriptor:
    if depth > MAX_DEPTH:
        raise SemanticError(f"nesting deeper than {MAX_DEPTH} at position {cur.pos}")
    start = cur.pos
    d = _term(cur, depth)
    while cur.accept("x"):
        right = _term(cur, depth)
        d = _semantic(Product, d, right, where=start)
    return d


def _term(cur: _Cursor, depth: int) -> RingDescriptor:
    start = cur.pos
    d = _atom(cur, depth)
    if cur.accept("["):
        g = _group(cur)
        cur.expect("]")
        d = _semantic(GroupRing, d, g, where=start)
    return d


def _positive(cur: _Cursor, what: str) -> int:
    where = cur.pos
    v = cur.integer()
    if v < 1:
        raise SemanticError(f"{what} at position {where} must be >= 1")
    return v


def _atom(cur: _Cursor, depth: int) -> RingDescriptor:
    cur.skip()
    start = cur.pos
    if cur.accept("ZZ"):
        return Integers()
    if cur.accept("Z"):
        return _semantic(Zn, _positive(cur, "modulus"), where=start)
    for word, kind in (("M", Matrix), ("T", Triangular)):
        if cur.accept(word):
            n = _positive(cur, "matrix size")
            cur.expect("(")
            inner = _ring(cur, depth + 1)
            cur.expect(")")
            return _semantic(kind, n, inner, where=start)
    if cur.accept("GF"):
        cur.expect("(")
        p = _positive(cur, "field characteristic")
        cur.expect("^")
        k = _positive(cur, "field degree")
        cur.expect(")")
        return _semantic(galois_field, p, k, where=start)
    if cur.accept("POLY"):
        cur.expect("(")
        cur.expect("Z")
        n = _positive(cur, "modulus")
        cur.expect(")")
        return _semantic(Poly, n, where=start)
    if cur.accept("Q"):
        cur.expect("(")
        cur.expect("Z")
        n = _positive(cur, "modulus")
        cur.expect(",")
        cur.expect("[")
        coeffs = [cur.integer()]
        while cur.accept(","):
            coeffs.append(cur.integer())
        cur.expect("]")
        cur.expect(")")
        return _semantic(PolyQuotient, n, tuple(coeffs), where=start)
    cur.fail("ring atom (Z, ZZ, M, T, GF, POLY, Q)")


def _group(cur: _Cursor):
    cur.skip()
    start = cur.pos
    for name in ("S3", "D4", "Q8"):
        if cur.accept(name):
            return preset(name)
    if cur.accept("C"):
        n = _positive(cur, "group order")
        if cur.accept("x"):
            cur.expect("C")
            m = _positive(cur, "group order")
            return _semantic(preset, f"C{n}xC{m}", where=start)
        return _semantic(preset, f"C{n}", where=start)
    cur.fail("group (Cn, CnxCm, S3, D4, Q8)")


def format_ring(d: RingDescriptor) -> str:
    """Canonical spelling of a descriptor; ``parse_ring`` inverts it."""
    if isinstance(d, Zn):
        return f"Z{d.n}"
    if isinstance(d, Integers):
        return "ZZ"
    if isinstance(d, Product):
        return f"{format_ring(d.left)} x {format_ring(d.right)}"
    if isinstance(d, Matrix):
        return f"M{d.n}({format_ring(d.inner)})"
    if isinstance(d, Triangular):
        return f"T{d.n}({format_ring(d.inner)})"
    if isinstance(d, GroupRing):
        return f"{format_ring(d.inner)}[{d.group.name}]"
    if isinstance(d, PolyQuotient):
        pk = field_parameters(d)
        if pk:
            return f"GF({pk[0]}^{pk[1]})"
        return f"Q(Z{d.n},[{','.join(str(c) for c in d.modulus)}])"
    if isinstance(d, Poly):
        return f"POLY(Z{d.n})"
    raise TypeError(f"cannot format {d!r}")


# element literals


def _value(cur: _Cursor, depth: int = 0):
    """Generic literal tree: int, ('list', items), ('tuple', items), ('dict', pairs)."""
    if depth > 4 * MAX_DEPTH:
        raise SemanticError("literal nested too deeply")
    cur.skip()
    start = cur.pos
    for open_, close, kind in (("[", "]", "list"), ("(", ")", "tuple")):
        if cur.accept(open_):
            items = []
            if not cur.accept(close):
                items.append(_value(cur, depth + 1))
                while cur.accept(","):
                    items.append(_value(cur, depth + 1))
                cur.expect(close)
            return (kind, items, start)
    if cur.accept("{"):
        pairs = []
        if not cur.accept("}"):
            pairs.append(_pair(cur, depth))
            while cur.accept(","):
                pairs.append(_pair(cur, depth))
            cur.expect("}")
        return ("dict", pairs, start)
    return cur.integer(signed=True)


def _pair(cur: _Cursor, depth: int):
    cur.skip()
    t = cur.text
    start = cur.pos
    while cur.pos < len(t) and (t[cur.pos].isalnum() or t[cur.pos] in "_-+"):
        cur.pos += 1
    if cur.pos == start:
        cur.fail("group element name")
    name = t[start:cur.pos]
    cur.expect(":")
    return (name, _value(cur, depth + 1), start)


def parse_element(ring: Ring, text: str) -> Element:
    """Parse an element literal of ``ring``."""
    cur = _Cursor(text)
    value = _value(cur)
    if not cur.at_end():
        cur.fail("end of literal")
    return _convert(ring, value)


def _convert(ring: Ring, value) -> Element:
    d = ring.descriptor
    if isinstance(value, int):
        return ring.from_int(value)
    kind, items, pos = value
    if isinstance(d, Poly):
        return ring.element(_int_list(items, kind, pos, "coefficient list"))
    if d is None or isinstance(d, (Zn, Integers)):
        raise WrongShape(f"at position {pos}: expected an integer literal for {ring.spec}")
    return Element(ring, _coords(d, value))


def _int_list(items, kind, pos, what):
    if kind != "list" or not items or any(not isinstance(v, int) for v in items):
        raise WrongShape(f"at position {pos}: expected a {what} of integers")
    return items


def _coords(d: RingDescriptor, value) -> tuple:
    from .rings import construct

    ring = construct(d)
    if isinstance(value, int):
        return ring.from_int(value).coords
    kind, items, pos = value
    if isinstance(d, Zn):
        raise WrongShape(f"at position {pos}: expected an integer for Z{d.n}")
    if isinstance(d, PolyQuotient):
        coeffs = _int_list(items, kind, pos, "coefficient list")
        t = ring.element((0, 1) + (0,) * (d.degree - 2)) if d.degree > 1 else ring.from_int(-d.modulus[0])
        acc, tp = ring.zero, ring.one
        for c in coeffs:
            acc = acc + tp * c
            tp = tp * t
        return acc.coords
    if isinstance(d, Product):
        if kind != "tuple" or len(items) != 2:
            raise WrongShape(f"at position {pos}: expected a pair (a, b) for {format_ring(d)}")
        return _coords(d.left, items[0]) + _coords(d.right, items[1])
    if isinstance(d, (Matrix, Triangular)):
        n = d.n
        if kind != "list" or len(items) != n:
            raise WrongShape(f"at position {pos}: expected {n} rows for {format_ring(d)}")
        out: list[int] = []
        inner_zero = construct(d.inner).zero.coords
        for r, row in enumerate(items):
            if isinstance(row, int) or row[0] != "list" or len(row[1]) != n:
                where = pos if isinstance(row, int) else row[2]
                raise WrongShape(f"at position {where}: row {r} must hold {n} entries")
            for c, entry in enumerate(row[1]):
                block = _coords(d.inner, entry)
                if isinstance(d, Triangular) and r > c and block != inner_zero:
                    raise WrongShape(f"entry ({r}, {c}) lies below the diagonal of {format_ring(d)}")
                out.extend(block)
        return ring.normalize(out)
    if isinstance(d, GroupRing):
        if kind != "dict":
            raise WrongShape(f"at position {pos}: expected {{name: coeff, ...}} for {format_ring(d)}")
        g = d.group
        b = layout(d.inner).dim
        blocks = [construct(d.inner).zero.coords] * g.order
        seen = set()
        for name, coeff, where in items:
            if name not in g.names:
                raise WrongShape(f"at position {where}: {name!r} is not an element of {g.name}")
            if name in seen:
                raise WrongShape(f"at position {where}: {name!r} given twice")
            seen.add(name)
            blocks[g.index(name)] = _coords(d.inner, coeff)
        out = [c for block in blocks for c in block]
        assert len(out) == b * g.order
        return tuple(out)
    raise WrongShape(f"no literal form for {format_ring(d)}")


def format_coords(d: RingDescriptor, coords: tuple) -> str:
    """Canonical literal for the element of ``d`` with the given coordinates."""
    if isinstance(d, (Zn, Integers)):
        return str(coords[0])
    if isinstance(d, Poly):
        return "[" + ", ".join(str(c) for c in coords or (0,)) + "]"
    if isinstance(d, PolyQuotient):
        return "[" + ", ".join(str(c) for c in coords) + "]"
    if isinstance(d, Product):
        k = layout(d.left).dim
        return f"({format_coords(d.left, coords[:k])}, {format_coords(d.right, coords[k:])})"
    if isinstance(d, (Matrix, Triangular)):
        b = layout(d.inner).dim
        n = d.n
        rows = []
        for r in range(n):
            entries = [
                format_coords(d.inner, coords[(r * n + c) * b:(r * n + c + 1) * b]) for c in range(n)
            ]
            rows.append("[" + ", ".join(entries) + "]")
        return "[" + ", ".join(rows) + "]"
    if isinstance(d, GroupRing):
        b = layout(d.inner).dim
        parts = []
        for i, name in enumerate(d.group.names):
            block = coords[i * b:(i + 1) * b]
            if any(block):
                parts.append(f"{name}: {format_coords(d.inner, block)}")
        return "{" + ", ".join(parts) + "}"
    raise TypeError(f"cannot format coordinates of {d!r}")


def format_element(x: Element) -> str:
    return str(x)
