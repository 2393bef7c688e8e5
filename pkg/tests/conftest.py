import random

from ringlab import parse_element, ring
from ringlab.descriptors import GroupRing, Matrix, PolyQuotient, Product, Triangular, Zn, galois_field
from ringlab.groups import preset

from oracles import model


def lit(r, text):
    return parse_element(r, text)


def paired(spec):
    """The ringlab ring, its oracle model and a converter model value -> Element."""
    r = ring(spec)
    m = model(r.descriptor)
    return r, m, lambda v: parse_element(r, m.literal(v))


GROUPS = ["C1", "C2", "C3", "C4", "C2xC2", "C2xC3", "S3", "D4", "Q8"]


def random_descriptor(rng: random.Random, depth: int = 3):
    """A random finite descriptor respecting the construction rules."""
    if depth == 0:
        return _leaf(rng)
    roll = rng.random()
    if roll < 0.3:
        return _leaf(rng)
    if roll < 0.5:
        left = random_descriptor(rng, depth - 1)
        right = random_descriptor(rng, depth - 1)
        while isinstance(right, Product):
            right = right.left
        return Product(left, right)
    if roll < 0.65:
        return Matrix(rng.randint(1, 4), random_descriptor(rng, depth - 1))
    if roll < 0.8:
        return Triangular(rng.randint(1, 4), random_descriptor(rng, depth - 1))
    inner = random_descriptor(rng, depth - 1)
    while isinstance(inner, (Product, GroupRing)):
        inner = inner.left if isinstance(inner, Product) else inner.inner
    return GroupRing(inner, preset(rng.choice(GROUPS)))


def _leaf(rng):
    roll = rng.random()
    if roll < 0.6:
        return Zn(rng.randint(2, 60))
    if roll < 0.8:
        p, k = rng.choice([(2, 2), (2, 3), (3, 2), (5, 2), (7, 3)])
        return galois_field(p, k)
    n = rng.randint(2, 9)
    return PolyQuotient(n, tuple(rng.randrange(n) for _ in range(rng.randint(1, 3))) + (1,))
