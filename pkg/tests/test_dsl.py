import random

import pytest
from hypothesis import given, settings, strategies as st

from ringlab import format_ring, parse_element, parse_ring, ring
from ringlab.descriptors import GroupRing, Integers, Matrix, Poly, PolyQuotient, Product, Triangular, Zn
from ringlab.errors import RinglabError, SemanticError, SpecSyntaxError, WrongShape
from ringlab.groups import preset

from conftest import random_descriptor

def test_round_trip_random_descriptors():
    rng = random.Random(20260101)
    for _ in range(1000):
        d = random_descriptor(rng)
        text = format_ring(d)
        assert parse_ring(text) == d, text
        assert format_ring(parse_ring(text)) == text


@pytest.mark.parametrize("text,expected", [
    ("M2(Z4)", Matrix(2, Zn(4))),
    ("Z2[S3] x T2(Z4)", Product(GroupRing(Zn(2), preset("S3")), Triangular(2, Zn(4)))),
    ("ZZ", Integers()),
    ("POLY(Z4)", Poly(4)),
    ("GF(2^2)", PolyQuotient(2, (1, 1, 1))),
    ("Q(Z2,[0,0,1])", PolyQuotient(2, (0, 0, 1))),
    ("Z2 x Z3 x Z5", Product(Product(Zn(2), Zn(3)), Zn(5))),
    ("M2(Z2)[C2xC2]", GroupRing(Matrix(2, Zn(2)), preset("C2xC2"))),
])
def test_parse_examples(text, expected):
    assert parse_ring(text) == expected


@pytest.mark.parametrize("text,canonical", [
    ("Z3xZ4", "Z3 x Z4"),
    ("  M2 ( Z4 ) ", "M2(Z4)"),
    ("Z2[ S3 ]x M2(Z4)", "Z2[S3] x M2(Z4)"),
    ("Q(Z2, [1, 1, 1])", "GF(2^2)"),
    ("Q( Z4 ,[1,1])", "Q(Z4,[1,1])"),
    ("Z3[C2 x C2]", "Z3[C2xC2]"),
])
def test_canonical_printing(text, canonical):
    assert format_ring(parse_ring(text)) == canonical


@pytest.mark.parametrize("text", ["M0(Z2)", "Z1", "GF(4^2)", "M5(Z2)", "Z2[C100]", "M2(ZZ)", "ZZ x Z2",
                                  "Q(Z4,[1,2])", "Z2 x Z3[C2] x ZZ"])
def test_semantic_errors(text):
    with pytest.raises(SemanticError):
        parse_ring(text)


@pytest.mark.parametrize("text,pos", [("  z2 [ s3 ]", 2), ("M2(Z4", 4), ("Z2 x", 3), ("", 0), ("Z2]", 2),
                                      ("GF(2,2)", 4), ("Z-3", 1)])
def test_syntax_errors_carry_positions(text, pos):
    # errors at end of input are reported at the last character
    with pytest.raises(SpecSyntaxError) as info:
        parse_ring(text)
    assert info.value.position == pos
    assert 0 <= info.value.position < max(len(text), 1)


def test_keywords_are_case_sensitive():
    for text in ["zz", "m2(Z2)", "Z2[s3]", "gf(2^2)", "Z2 X Z3"]:
        with pytest.raises(SpecSyntaxError):
            parse_ring(text)


@settings(max_examples=400, deadline=None)
@given(st.text(max_size=4096))
def test_fuzz_text_only_raises_library_errors(text):
    try:
        parse_ring(text)
    except SpecSyntaxError as exc:
        assert 0 <= exc.position < max(len(text), 1)
    except RinglabError:
        pass


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=4096))
def test_fuzz_bytes(data):
    text = data.decode("latin-1")
    try:
        parse_ring(text)
    except SpecSyntaxError as exc:
        assert 0 <= exc.position < max(len(text), 1)
    except RinglabError:
        pass


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="ZMTxGFQPOLY()[],^0123456789 SDCx", max_size=64))
def test_fuzz_grammar_alphabet(text):
    try:
        d = parse_ring(text)
    except SpecSyntaxError as exc:
        assert 0 <= exc.position < max(len(text), 1)
    except RinglabError:
        pass
    else:
        assert parse_ring(format_ring(d)) == d


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=256))
def test_fuzz_element_literals(text):
    r = ring("Z2[S3] x M2(Z4)")
    try:
        parse_element(r, text)
    except SpecSyntaxError as exc:
        assert 0 <= exc.position < max(len(text), 1)
    except RinglabError:
        pass


def test_element_literal_examples():
    assert parse_element(ring("Z12"), "14") == ring("Z12").from_int(2)
    assert parse_element(ring("Z12"), "-1") == ring("Z12").from_int(11)
    t2 = ring("T2(Z4)")
    x = parse_element(t2, "[[1,2],[0,3]]")
    assert str(x) == "[[1, 2], [0, 3]]"
    with pytest.raises(WrongShape):
        parse_element(t2, "[[1,0],[2,3]]")
    g = ring("Z2[S3]")
    y = parse_element(g, "{e:1, r:1}")
    assert y == g.one + parse_element(g, "{r: 1}")


@pytest.mark.parametrize("spec,text", [
    ("M2(Z2)", "[[1,0]]"), ("M2(Z2)", "[[1,0],[0]]"), ("M2(Z2)", "[1,0]"), ("Z2[S3]", "{z: 1}"),
    ("Z2[S3]", "{e: 1, e: 1}"), ("Z2 x Z3", "(1, 2, 3)"), ("Z2 x Z3", "[1, 2]"), ("Z5", "[1]"),
    ("GF(2^2)", "{e: 1}"), ("POLY(Z4)", "(1, 2)"),
])
def test_wrong_shapes(spec, text):
    with pytest.raises(WrongShape):
        parse_element(ring(spec), text)


@pytest.mark.parametrize("spec", ["Z12", "Z2 x Z3", "M2(Z3)", "T2(Z4)", "Z2[S3]", "GF(3^2)",
                                  "Q(Z4,[1,0,1])", "Z2[C2] x Z3", "M2(Z2 x Z2)", "T2(GF(2^2))"])
def test_element_round_trip(spec):
    r = ring(spec)
    for x in r.elements():
        assert parse_element(r, str(x)) == x


def test_polynomial_literals():
    r = ring("POLY(Z4)")
    assert str(parse_element(r, "[3, 2, 0, 4]")) == "[3, 2]"
    assert str(parse_element(r, "5")) == "[1]"
    assert str(r.zero) == "[0]"
    zz = ring("ZZ")
    assert str(parse_element(zz, "-12345678901234567890")) == "-12345678901234567890"


def test_gf_literal_reduces_modulo_the_irreducible():
    r = ring("GF(2^2)")
    # t^2 = t + 1
    assert parse_element(r, "[0, 0, 1]") == parse_element(r, "[1, 1]")
