import itertools

import pytest

from ringlab.errors import InvalidDescriptor
from ringlab.groups import GroupTable, group_center, preset


def compose(p, q):
    # apply q first, then p
    return tuple(p[i] for i in q)


def closure(gens):
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def isomorphic_to(table, elements, op):
    """Brute-force search for a bijection carrying the preset table onto (elements, op)."""
    n = len(table)
    elements = list(elements)
    ident = next(e for e in elements if all(op(e, x) == x for x in elements))
    rest = [e for e in elements if e != ident]
    for perm in itertools.permutations(rest):
        f = [ident, *perm]
        if all(f[table[i][j]] == op(f[i], f[j]) for i in range(n) for j in range(n)):
            return True
    return False


@pytest.mark.parametrize("name", ["C1", "C2", "C3", "C4", "C2xC2", "C2xC3", "S3", "D4", "Q8"])
def test_presets_are_groups(name):
    g = preset(name)
    n = g.order
    t = g.table
    assert all(t[0][i] == i == t[i][0] for i in range(n))
    for a, b, c in itertools.product(range(n), repeat=3):
        assert t[t[a][b]][c] == t[a][t[b][c]]
    for a in range(n):
        assert t[a][g.inverses[a]] == 0 == t[g.inverses[a]][a]


def test_s3_matches_permutations_of_three_points():
    s3 = closure([(1, 2, 0), (1, 0, 2)])
    assert isomorphic_to(preset("S3").table, s3, compose)


def test_d4_matches_symmetries_of_a_square():
    d4 = closure([(1, 2, 3, 0), (0, 3, 2, 1)])
    assert len(d4) == 8
    assert isomorphic_to(preset("D4").table, d4, compose)


def test_q8_matches_unit_quaternions():
    # quaternions as (sign, unit) with units 1, i, j, k
    mult = {
        ("1", u): (1, u) for u in "1ijk"
    } | {(u, "1"): (1, u) for u in "1ijk"} | {
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }

    def op(a, b):
        s, u = mult[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    elements = [(s, u) for s in (1, -1) for u in "1ijk"]
    assert isomorphic_to(preset("Q8").table, elements, op)


def test_centers():
    q8 = preset("Q8")
    assert {q8.names[i] for i in group_center(q8)} == {"1", "-1"}
    s3 = preset("S3")
    assert {s3.names[i] for i in group_center(s3)} == {"e"}
    assert len(group_center(preset("C4"))) == 4
    assert len(group_center(preset("D4"))) == 2


def test_nonabelian_order_eight():
    for name in ("Q8", "D4"):
        g = preset(name)
        assert g.order == 8 and not g.is_abelian


def test_glossary_names():
    assert preset("S3").names == ("e", "r", "r2", "s", "sr", "sr2")
    assert preset("Q8").names == ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
    assert preset("C3").names == ("g0", "g1", "g2")


def test_nilpotent_flags():
    assert not preset("S3").nilpotent
    assert preset("Q8").nilpotent and preset("D4").nilpotent and preset("C2xC3").nilpotent


def test_custom_table_file(tmp_path):
    path = tmp_path / "c3.txt"
    path.write_text("3\n0 1 2\n1 2 0\n2 0 1\n")
    g = GroupTable.from_file(path)
    assert g.order == 3 and g.is_abelian


def test_non_associative_table_rejected(tmp_path):
    path = tmp_path / "bad.txt"
    # a Latin square with identity 0 that is not associative
    path.write_text("5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n")
    with pytest.raises(InvalidDescriptor):
        GroupTable.from_file(path)


def test_unknown_preset():
    with pytest.raises(InvalidDescriptor):
        preset("A5")
