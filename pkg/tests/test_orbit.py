import random

import pytest

from ringlab import (
    OrbitWitness,
    classify,
    combine_product_witness,
    frobenius_lift,
    idempotent_from,
    orbit_witness,
    poly_periodicity,
    ring,
)
from ringlab.errors import NotNilIdeal, NotPeriodic, WitnessInvalid
from ringlab.orbit import ElementClass, integer_periodicity
from ringlab.structure import ideal_closure, nil_ideals

from conftest import lit, paired
from oracles import (
    nilpotent_index_oracle,
    orbit_oracle,
    poly_periodic_oracle,
    potent_oracle,
    unit_order_oracle,
)

RINGS = ["Z12", "Z8", "Z7", "Z9", "M2(Z2)", "T2(Z4)", "T3(Z2)", "Z2[S3]", "GF(2^3)", "Z3 x Z4",
         "Q(Z4,[1,1,1])", "Z2[C3]", "M2(Z3)", "M2(Z4)"]


@pytest.mark.parametrize("spec", RINGS)
def test_orbit_witness_matches_first_repeat_scan(spec):
    r, m, conv = paired(spec)
    for v in m.elements:
        i, d = orbit_oracle(m, v)
        w = orbit_witness(conv(v))
        assert (w.index, w.period) == (i, d)
        assert i + d <= len(m.elements)


@pytest.mark.parametrize("spec", ["Z12", "M2(Z2)", "T2(Z4)", "Z2[S3]"])
def test_witness_minimality_by_pairwise_scan(spec):
    r = ring(spec)
    for x in r.elements():
        w = orbit_witness(x)
        n = w.index + w.period
        powers = [None] + [x**k for k in range(1, n + 1)]
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                assert (powers[a] == powers[b]) == ((a, b) == (w.index, n))


@pytest.mark.parametrize("spec", RINGS)
def test_classify_agrees_with_oracles(spec):
    r, m, conv = paired(spec)
    for v in m.elements:
        rec = classify(conv(v))
        assert rec.nilpotency_index == nilpotent_index_oracle(m, v)
        assert rec.potent_q == potent_oracle(m, v)
        assert rec.unit_order == unit_order_oracle(m, v)
        assert rec.idempotent == (m.mul(v, v) == v)
        assert rec.involution == (m.mul(v, v) == m.one)


def test_orbit_examples():
    assert orbit_witness(lit(ring("Z12"), "2")) == OrbitWitness(2, 2)
    assert orbit_witness(lit(ring("Z7"), "2")) == OrbitWitness(1, 3)
    for spec in ("Z5", "M2(Z3)", "Z2[S3]", "ZZ", "POLY(Z4)"):
        assert orbit_witness(ring(spec).one) == OrbitWitness(1, 1)
    assert OrbitWitness(2, 2).relation == (4, 2)
    assert OrbitWitness.from_relation(4, 2) == OrbitWitness(2, 2)


def test_classify_examples():
    rec = classify(lit(ring("Z4"), "3"))
    assert rec.unit_order == 2 and rec.potent_q == 3
    assert classify(lit(ring("Z4"), "2")).nilpotency_index == 2
    assert classify(lit(ring("Z12"), "6")).nilpotency_index == 2
    assert classify(ring("Z4").zero).unit_order is None


def test_class_membership():
    z4 = ring("Z4")
    tu = ElementClass.parse("torsion-unit")
    assert [x.coords[0] for x in z4.elements() if tu.contains(x)] == [1, 3]
    assert [x.coords[0] for x in z4.elements() if ElementClass.parse("potent(3)").contains(x)] == [0, 1, 3]
    assert [x.coords[0] for x in z4.elements() if ElementClass.parse("nilpotent").contains(x)] == [0, 2]
    assert str(ElementClass.parse("potent3")) == "potent(3)"
    with pytest.raises(ValueError):
        ElementClass.parse("potent(1)")
    with pytest.raises(ValueError):
        ElementClass.parse("prime")


@pytest.mark.parametrize("spec,x,e", [("Z12", "2", "4"), ("Z4", "2", "0"), ("Z7", "3", "1")])
def test_idempotent_examples(spec, x, e):
    r = ring(spec)
    assert idempotent_from(lit(r, x)) == lit(r, e)


@pytest.mark.parametrize("spec", ["Z12", "M2(Z2)", "T3(Z2)", "Z2[S3]", "Z3[Q8]", "M2(Z4)"])
def test_idempotent_from_is_idempotent_and_commutes(spec):
    r = ring(spec)
    els = r.elements()
    if len(els) > 1000:
        els = random.Random(spec).sample(els, 1000)
    for x in els:
        e = idempotent_from(x)
        assert e * e == e
        assert e * x == x * e


def _pow_mod(base, k, n):
    return pow(base, k, n)


def test_combine_examples():
    assert combine_product_witness((4, 2), (4, 1)) == (8, 2)
    assert _pow_mod(2, 8, 12) == _pow_mod(2, 2, 12) and _pow_mod(2, 8, 7) == _pow_mod(2, 2, 7)
    assert combine_product_witness((2, 1), (2, 1)) == (2, 1)
    assert combine_product_witness((3, 1), (2, 1)) == (3, 1)
    # 2 in Z7 satisfies 2^4 = 2, not 2^3 = 2; the element with x^3 = x is 6
    assert orbit_witness(lit(ring("Z7"), "2")).relation == (4, 1)
    r = ring("Z7 x Z2")
    x = lit(r, "(6, 1)")
    assert orbit_witness(lit(ring("Z7"), "6")).relation == (3, 1)
    assert x**3 == x
    with pytest.raises(ValueError):
        combine_product_witness((1, 1), (2, 1))


@pytest.mark.parametrize("left,right", [("Z12", "Z7"), ("Z4", "Z9")])
def test_combined_witness_on_every_pair(left, right):
    L, R, P = ring(left), ring(right), ring(f"{left} x {right}")
    for x in L.elements():
        for y in R.elements():
            wx, wy = orbit_witness(x), orbit_witness(y)
            high, low = combine_product_witness(wx.relation, wy.relation)
            # direct check on plain integers, then on the product element
            nx, ny = L.characteristic, R.characteristic
            a, b = x.coords[0], y.coords[0]
            assert pow(a, high, nx) == pow(a, low, nx) and pow(b, high, ny) == pow(b, low, ny)
            pair = lit(P, f"({a}, {b})")
            assert pair**high == pair**low


def test_frobenius_examples():
    z4 = ring("Z4")
    res = frobenius_lift(z4, ideal_closure(z4, [lit(z4, "2")]), lit(z4, "3"), OrbitWitness(1, 1))
    assert (res.high, res.low) == (4, 2) and res.nil_exponent == 2 and res.power == 1
    assert pow(3, 4, 4) == pow(3, 2, 4) == 1

    z8 = ring("Z8")
    ideal = ideal_closure(z8, [lit(z8, "2")])
    assert sorted(x.coords[0] for x in ideal.members) == [0, 2, 4, 6]
    res = frobenius_lift(z8, ideal, lit(z8, "3"), OrbitWitness(1, 1))
    assert (res.high, res.low) == (8, 4) and res.nil_exponent == 3
    assert pow(3, 8, 8) == pow(3, 4, 8) == 1

    zero = ideal_closure(z8, [])
    res = frobenius_lift(z8, zero, lit(z8, "3"), OrbitWitness(1, 2))
    assert (res.high, res.low) == (3, 1)


def test_frobenius_errors():
    z8 = ring("Z8")
    with pytest.raises(WitnessInvalid):
        # 3^2 - 3 = 6 is outside (4)
        frobenius_lift(z8, ideal_closure(z8, [lit(z8, "4")]), lit(z8, "3"), OrbitWitness(1, 1))
    z6 = ring("Z6")
    with pytest.raises(NotNilIdeal):
        frobenius_lift(z6, ideal_closure(z6, [lit(z6, "2")]), lit(z6, "1"), OrbitWitness(1, 1))


@pytest.mark.parametrize("spec", ["Z12", "Z8", "T2(Z4)", "Z2[C2]", "Z6 x Z2", "Z4 x Z9"])
def test_frobenius_lift_from_quotient_orbits(spec):
    from ringlab.structure import quotient

    r = ring(spec)
    for ideal in nil_ideals(r):
        q = quotient(r, ideal)
        for a in r.elements():
            w = orbit_witness(q.project(a))
            res = frobenius_lift(r, ideal, a, w)
            assert a**res.high == a**res.low
            assert res.witness == orbit_witness(a)


def test_poly_periodicity_examples():
    r = ring("POLY(Z4)")
    dec = poly_periodicity(lit(r, "[3, 2]"))
    assert dec.periodic and dec.witness == OrbitWitness(1, 2)
    dec = poly_periodicity(lit(r, "[0, 1]"))
    assert not dec.periodic and (dec.degree, dec.coefficient) == (1, 1)
    dec = poly_periodicity(lit(r, "2"))
    assert dec.periodic and dec.witness == OrbitWitness(2, 1)
    with pytest.raises(NotPeriodic):
        orbit_witness(lit(r, "[0, 1]"))


@pytest.mark.parametrize("n", [4, 8, 9, 12])
def test_poly_periodicity_matches_power_expansion(n):
    rng = random.Random(n)
    r = ring(f"POLY(Z{n})")
    for _ in range(125):
        coeffs = [rng.randrange(n) for _ in range(rng.randint(1, 4))]
        f = lit(r, "[" + ", ".join(map(str, coeffs)) + "]")
        dec = poly_periodicity(f)
        assert dec.periodic == poly_periodic_oracle(coeffs, n), coeffs
        if dec.periodic:
            assert dec.witness.holds_for(f)


def test_integer_periodicity():
    zz = ring("ZZ")
    assert integer_periodicity(lit(zz, "1")).witness == OrbitWitness(1, 1)
    assert integer_periodicity(lit(zz, "0")).witness == OrbitWitness(1, 1)
    assert integer_periodicity(lit(zz, "-1")).witness == OrbitWitness(1, 2)
    for v in ("2", "-2", "3", "1000"):
        assert not integer_periodicity(lit(zz, v)).periodic
