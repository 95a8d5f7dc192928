from fractions import Fraction

import pytest

import omlkit


def test_fixtures_load():
    names = omlkit.fixture_names()
    assert "MO2" in names and "Peterson" in names
    assert len(omlkit.fixture("Peterson")) == 32
    assert omlkit.wagon_wheel(4).size == 44
    assert omlkit.load_lattice("123,345.").block_count == 2


def test_lattice_operations():
    L = omlkit.fixture("MO2")
    assert L.comp("x") == "x'"
    assert L.meet("x", "y") == "0"
    assert L.join("x", "y") == "1"
    assert L.leq("0", "x") and not L.leq("x", "y")
    assert L.is_orthomodular()
    assert not omlkit.fixture("O6").is_orthomodular()


def test_check_verdicts():
    r = omlkit.check(omlkit.fixture("G3"), "n-go.3")
    assert r["verdict"] == "FAILS" and not r["holds"]
    assert set(r["witness"]) == {"a1", "a2", "a3"}
    assert omlkit.check(omlkit.fixture("Peterson"), "n-go.3", workers=2)["holds"]
    assert omlkit.check(omlkit.fixture("MO2"), "a ^ b = b ^ a")["holds"]
    assert not omlkit.check_ngo_dp(omlkit.fixture("Peterson"), 4)["holds"]
    assert omlkit.check_noa(omlkit.fixture("MO2"), 3)["holds"]


def test_witness_evaluates_to_a_violation():
    L = omlkit.fixture("O6")
    r = omlkit.check(L, "om-alt")
    w = r["witness"]
    lhs = omlkit.evaluate(L, "(a == b) ^ (b == c)", w)
    rhs = omlkit.evaluate(L, "a == c", w)
    assert not L.leq(lhs, rhs)


def test_registry_and_parser():
    ids = omlkit.registry_ids()
    assert "4oa" in ids and "om-alt-v" in ids
    e = omlkit.registry_entry("3oa")
    assert e["variables"] == ["a", "c", "b"]
    assert omlkit.parse_statement("a v b = b v a") == "a v b = b v a"
    with pytest.raises(ValueError):
        omlkit.parse_statement("a v = b")
    with pytest.raises(KeyError):
        omlkit.registry_entry("no-such-id")


def test_generation():
    assert omlkit.count(2) == 1
    assert omlkit.count(1, 8, legless=True) == 14
    ds = omlkit.generate(1, 4)
    assert len(ds) == omlkit.count(1, 4)
    assert omlkit.is_legless("123,345,567,789,9A1.")
    assert omlkit.canonical_gdf("123,345.") == omlkit.canonical_gdf("345,123.")


def test_scan():
    corpus = omlkit.generate(1, 8, legless=True)
    out = omlkit.scan(corpus, "om-alt-v")
    assert out["violating"] == 0
    assert out["satisfying"] == len(corpus)


def test_states():
    L = omlkit.fixture("MO2")
    opt, state = omlkit.find_state(L, {"x": 1}, "y")
    assert opt == 0 and state["x"] == 1
    opt, _ = omlkit.find_state(omlkit.load_lattice("123."), {"a1": Fraction(1, 3)}, "a2", maximize=True)
    assert opt == Fraction(2, 3)
    assert omlkit.admits_strong_set(L)["strong"]
    r = omlkit.admits_strong_set(omlkit.fixture("G3"))
    assert not r["strong"] and r["failing_pair"] is not None
    assert not omlkit.admits_classical_strong(L)["holds"]


def test_known_verdicts():
    rows = omlkit.known_verdicts("Peterson")
    assert ("n-go.4", False) in [(s, h) for s, h, _ in rows]
