import json

import pytest

from f4tori import analyze_supplement
from f4tori.certify import (
    DEFAULT_QS,
    FAIL,
    PASS,
    SKIP,
    Check,
    NormalizerAdapter,
    build_supplement,
    even_characteristic_checks,
    expected_factors,
    field_degree,
    lift_check,
    membership,
    min_lift_order,
    n_word,
    oracle_check,
    render_tits,
    row_torus,
    select_supplement,
    summarize,
    table_rows,
    verify_tier_a,
    verify_tier_b,
    verify_tier_c,
)
from f4tori.certdata import ROWS
from f4tori.words import parse_word


@pytest.fixture(scope="module")
def tier_a():
    return verify_tier_a()


def test_tier_a_passes_everywhere(tier_a):
    bad = [c for c in tier_a if c.status != PASS]
    assert not bad, bad
    assert len(tier_a) > 100


def test_tier_a_contains_the_quoted_relations(tier_a):
    names = {c.check for c in tier_a}
    assert "relation [a,b] = [a,n24] = 1" in names
    assert any("a^4 = b^2 = h3" in n for n in names)
    assert "classes of W" in names
    assert sum(1 for c in tier_a if c.check == "|C_W(w)|") == 25


def test_tier_a_subset_skips_global_checks():
    out = verify_tier_a([24])
    assert {c.torus for c in out} == {24}
    assert all(c.status == PASS for c in out)
    assert any(c.check == "relation m^12 = 1" for c in out)


def test_even_characteristic():
    out = even_characteristic_checks()
    assert len(out) == 25 and all(c.status == PASS for c in out)


def test_check_dict_and_summary():
    c = Check(3, 5, "x", 1, 2, FAIL)
    d = c.as_dict()
    assert d == {"torus": 3, "q": 5, "check": "x", "expected": 1, "got": 2, "status": FAIL}
    json.dumps(d)
    assert summarize([c, d, Check(None, None, "y", 0, 0, PASS)]) == {PASS: 1, FAIL: 2, SKIP: 0}


def test_render_tits(G):
    assert render_tits(G.identity()) == "1"
    assert render_tits(G.h(1, 3)) == "h1h3"
    assert render_tits(G.n(2)) == "s(w2)"
    assert render_tits(G.h(4) * G.n(2)).endswith("*s(w2)")


def test_n_word_branches():
    assert n_word(2, 3) == "n2"
    assert n_word(4, 3) == "n6n3"
    assert n_word(4, 5) == "n0n6n3"


def test_field_degree():
    assert field_degree(2, 3, [None]) == 2
    assert field_degree(2, 3, [4]) == 2      # 8 | 3^2 - 1
    assert field_degree(2, 3, [5]) == 4      # 10 divides 3^4 - 1 but not 3^2 - 1
    with pytest.raises(Exception):
        field_degree(2, 3, [10**6])


def test_row8_lifts():
    T = row_torus(8, 3)
    assert list(T.factors) == [2, 20] == expected_factors(8, 3)
    assert min_lift_order(T) == 8
    assert min_lift_order(row_torus(8, 5)) == 4
    d = ROWS[8]["lift"]
    c = lift_check(8, 5, d[0], d[2], d[3])
    assert c.status == PASS and c.got == 4


def test_torus24_lift_order():
    c = lift_check(24, 5, "n8n1n2n4", None, {})
    assert c.got == 12 and c.status == PASS


def test_row2_second_construction_gives_eight():
    """The generic branch <n0, n2, n4, n8, n13> always supplements, with a
    larger intersection than the zeta construction."""
    T = row_torus(2, 3)
    ad = NormalizerAdapter(T, {})
    gens = [parse_word(w, ad) for w in ("n0", "n2", "n4", "n8", "n13")]
    assert all(all(membership(T, g)) for g in gens)
    rep = analyze_supplement(T, gens)
    assert rep.intersection == 8
    assert rep.weyl_order == 96


def test_supplement_selection():
    assert select_supplement(2, 3)["intersection"] == 4
    assert select_supplement(2, 5)["intersection"] == 8
    assert select_supplement(9, 5)["intersection"] == 4
    T, gens, s = build_supplement(8, 3)
    assert s["when"] == "e*q % 4 == 3"
    assert len(gens) == 3


@pytest.mark.parametrize("q", [3, 5])
def test_tier_b(q):
    rows = [1, 3, 8, 17, 24, 25]
    out = verify_tier_b(q, rows)
    assert {c.torus for c in out} == set(rows)
    assert all(c.status in (PASS, SKIP) for c in out), [c for c in out if c.status == FAIL]
    # skips only where the listed lift is conditioned away
    for c in out:
        if c.status == SKIP:
            assert c.torus == 8 and q == 3


def test_tier_b_is_deterministic_per_seed():
    a = verify_tier_b(5, [17], seed=1)
    b = verify_tier_b(5, [17], seed=1)
    assert [c.as_dict() for c in a] == [c.as_dict() for c in b]
    # rows are independent streams
    both = verify_tier_b(5, [17, 24], seed=1)
    assert [c.as_dict() for c in both if c.torus == 17] == [c.as_dict() for c in a]


def test_tier_b_rejects_even_q():
    with pytest.raises(ValueError):
        verify_tier_b(4, [1])


def test_oracle_checks():
    c = oracle_check(23, 3)
    assert c.status == PASS and c.got == 1
    c = oracle_check(12, 3)
    assert c.status == PASS and c.got == 2
    skipped = oracle_check(12, 3, budget=1)
    assert skipped.status == SKIP
    assert [x.torus for x in verify_tier_c(3, [23, 24])] == [23, 24]


def test_table_rows_shape():
    t = table_rows(3)
    assert t["q"] == 3
    assert len(t["table1"]) == len(t["table2"]) == 25
    row17 = t["table1"][16]
    assert row17["torus"]["got"] == [4, 4, 4, 4]
    assert row17["supplement"]["oracle"] is None
    row22 = t["table2"][21]
    assert row22["min_lift_order"] == {"expected": 4, "got": 4}
    assert row22["lift"] == "n8n16n3n2"
    failing = {r["id"] for r in t["table1"] if r["status"] == FAIL}
    assert failing <= {2, 9}
    assert all(r["status"] == PASS for r in t["table2"])
    json.dumps(t)


def test_default_qs():
    assert DEFAULT_QS == (3, 5, 7, 9, 13)
