import json

import pytest

from ringlab import parse_ring, ring
from ringlab.errors import CapExceeded, CorpusError
from ringlab.harness import (
    DEFAULT_SPECS,
    SUITE_IDS,
    SUITES,
    CheckReport,
    CorpusConfig,
    corpus,
    exit_code,
    parse_corpus,
    parse_suites,
    render_report,
    run_suite,
)
from ringlab.harness.report import CHECK_KEYS
from ringlab.harness.suites import Check, Outcome, run_check


def by(reports, **want):
    return [r for r in reports if all(getattr(r, k) == v for k, v in want.items())]


def test_default_corpus():
    rings = corpus()
    assert len(rings) == len(DEFAULT_SPECS) == 28
    assert [str(r) for r in DEFAULT_SPECS[:3]] == ["Z2", "Z3", "Z4"]
    small = corpus(CorpusConfig(max_size=100))
    assert parse_ring("Z3[Q8]") not in small and parse_ring("Z3[Q8]") in rings
    # symbolic rings are kept whatever the size cap
    assert parse_ring("ZZ") in small and parse_ring("POLY(Z4)") in small


def test_corpus_file(tmp_path):
    path = tmp_path / "rings.txt"
    path.write_text("# tiny corpus\nZ4\n\nM2(Z2)  # simple\nZ3xZ4\n")
    assert [d for d in corpus(CorpusConfig(path=path))] == [parse_ring(s) for s in ("Z4", "M2(Z2)", "Z3 x Z4")]
    with pytest.raises(CorpusError, match=r"bad.txt:2"):
        parse_corpus("Z4\nM0(Z2)\n", "bad.txt")
    with pytest.raises(CorpusError, match=r":1:"):
        parse_corpus("Z4 x\n")


def test_catalog():
    assert SUITE_IDS == ("NILLIFT", "TRIANG", "COMMUTE", "GROUPRING", "TPP", "POLYREMARK", "PROBLEMS", "FALSIFY")
    for checks in SUITES.values():
        assert checks and all(c.anchor for c in checks)
        assert len({c.id for c in checks}) == len(checks)
    assert parse_suites("triang, nillift") == ("NILLIFT", "TRIANG")
    assert parse_suites(None) == SUITE_IDS
    with pytest.raises(ValueError, match="BOGUS"):
        parse_suites("TRIANG,BOGUS")


def test_triang_on_t2_z4():
    reports = run_suite([parse_ring("T2(Z4)")], ["TRIANG"])
    assert [r.id for r in reports] == ["matrix-split", "periodic-equivalence", "rank-bound"]
    split = reports[0]
    assert split.status == "pass" and split.data == {"elements": 64, "max_summands": 2}
    assert all(r.status == "pass" for r in reports)


def test_nillift_on_z8():
    reports = run_suite([parse_ring("Z8")], ["NILLIFT"])
    frob = by(reports, id="claim-frobenius")[0]
    assert frob.status == "pass"
    assert frob.data == {"nil_ideals": 3, "complete": True, "triples": 24}
    assert by(reports, id="crt-split")[0].status == "pass"
    assert not by(reports, id="product-witness")


def test_falsify_tpp_probe_on_m2_f2():
    reports = run_suite([parse_ring("M2(Z2)")], ["FALSIFY"])
    probe = by(reports, id="tpp-lemma")[0]
    assert probe.status == "data"
    d = probe.data
    assert (d["characteristic"], d["tpp"], d["additively_2_torsion"], d["field"]) == (2, True, True, False)
    assert d["failure"] == "NoFrobeniusFixpoint" and d["one_plus_quotient_is_unit"] is False
    rank = by(reports, id="rank-profile")[0]
    assert rank.status == "data" and rank.data["torsion-unit"] == 2


def test_falsify_integers_probe():
    probe = run_suite([parse_ring("ZZ")], ["FALSIFY"])[0]
    assert probe.id == "commuting-zz" and probe.status == "data"
    assert probe.data["commutative"] and probe.data["additively_periodic"] and not probe.data["periodic"]


def test_polyremark_passes():
    reports = run_suite([parse_ring("POLY(Z2)"), parse_ring("POLY(Z4)")], ["POLYREMARK"])
    assert len(reports) == 4 and all(r.status == "pass" for r in reports)


def test_problems_report_data_only():
    reports = run_suite([parse_ring("Z4")], ["PROBLEMS"])
    assert reports and all(r.status == "data" for r in reports)
    # the commuting-potent experiments use a fixed ring list
    assert {r.ring for r in by(reports, id="commuting-3-4")} >= {"Z2", "Z30", "M2(Z2)"}
    z12 = by(reports, id="commuting-3-4", ring="Z12")[0]
    assert z12.data["elements"] == 12 and 0 < z12.data["fraction"] <= 1


def test_vacuity_and_skips():
    reports = run_suite([parse_ring("Z2[S3]"), parse_ring("M2(Z2)")], ["GROUPRING", "COMMUTE", "TPP"])
    nil = by(reports, id="nilpotent-equivalence")[0]
    assert nil.status == "skip" and "S3" in nil.reason
    assert by(reports, id="commutative-periodic", ring="M2(Z2)")[0].status == "skip"
    periodic = by(reports, id="group-ring-periodic")[0]
    assert periodic.status == "pass" and periodic.vacuity
    assert not by(reports, id="augmentation-quotient")[0].vacuity


def test_engine_errors_become_skips():
    def boom(r):
        raise CapExceeded(10, 5)

    rep = run_check("X", Check("boom", "anchor", lambda d: True, boom), ring("Z2"))
    assert rep.status == "skip" and rep.reason.startswith("CapExceeded")

    def bad(r):
        return Outcome("fail", counterexample="1")

    rep = run_check("X", Check("bad", "anchor", lambda d: True, bad), ring("Z2"))
    assert rep.status == "fail" and exit_code([rep]) == 1


def test_report_order():
    rings = [parse_ring(s) for s in ("Z4", "Z2", "M2(Z2)")]
    reports = run_suite(rings, ["NILLIFT", "TPP"])
    key = [(SUITE_IDS.index(r.suite), [str(x) for x in ("Z4", "Z2", "M2(Z2)")].index(r.ring), r.id) for r in reports]
    assert key == sorted(key)


def test_render_empty_and_single():
    doc = json.loads(render_report([], "json"))
    assert doc == {"version": 1, "generated_by": "ringlab", "checks": []}
    one = CheckReport("c", "S", "claim", "Z2", "pass", witness="w", millis=1.23456)
    doc = json.loads(render_report([one], "json"))
    assert list(doc["checks"][0]) == list(CHECK_KEYS)
    assert doc["checks"][0]["witness"] == "w" and doc["checks"][0]["millis"] == 1.235
    assert json.loads(render_report([one], "json", durations=False))["checks"][0]["millis"] == 0
    text = render_report([one], "text")
    assert text.splitlines()[0].split() == ["SUITE", "CHECK", "RING", "STATUS", "MS", "DETAIL"]
    assert "1 checks: 1 pass, 0 fail, 0 skip, 0 data" in text
    with pytest.raises(ValueError):
        render_report([], "xml")
    with pytest.raises(ValueError):
        CheckReport("c", "S", "a", "Z2", "maybe")


def test_exit_code_contract():
    mk = lambda s: CheckReport("c", "S", "a", "Z2", s)
    assert exit_code([]) == 0
    assert exit_code([mk("pass"), mk("skip"), mk("data")]) == 0
    assert exit_code([mk("pass"), mk("fail")]) == 1


def test_determinism_modulo_durations():
    rings = corpus(CorpusConfig(max_size=64))
    a = render_report(run_suite(rings), "json", durations=False)
    b = render_report(run_suite(rings), "json", durations=False)
    assert a == b
    assert '"status": "fail"' not in a
