import pytest

from plexus import basis, tables


@pytest.fixture(scope="module")
def poly():
    return tables.polyadics()


class TestPolyadics:
    def test_passes_with_expected_divergences(self, poly):
        assert poly.passed and not poly.mismatches
        assert len(poly.divergences) == 3

    def test_serial_ten_flagged_with_both_signs(self, poly):
        row = next(r for r in poly.rows if r.cells["serial"] == 10)
        assert row.status == "DIVERGES"
        assert row.cells["printed_sign"] == "-" and row.cells["rule_sign"] == "+"
        assert "printed -, rule +" in row.notes

    def test_low_ranks_cover_first_sixteen_serials(self):
        rep = tables.polyadics(max_rank=3)
        assert sorted(r.cells["serial"] for r in rep.rows) == list(range(16))
        assert [r.cells["serial"] for r in rep.divergences] == [10]

    def test_statistics_follow_rule_elsewhere(self, poly):
        for r in poly.rows:
            if r.cells["serial"] != 10:
                assert r.cells["printed_sign"] == r.cells["rule_sign"]

    def test_rank_labels(self, poly):
        labelled = [r for r in poly.divergences if r.cells["rank"] in (5, 6)]
        assert {r.cells["rank"] for r in labelled} == {5, 6}
        assert any("serial is Exp 4" in n for r in labelled for n in r.notes)

    def test_ranks_and_degrees(self, poly):
        for r in poly.rows:
            m = tables._monomial(r.cells["expr"])
            assert r.cells["rank"] == basis.rank(m) and r.cells["degree"] == basis.degree(m)

    def test_tampered_sign_is_a_mismatch(self, monkeypatch):
        gold = tables.golden("polyadics")
        rows = [dict(g, entries=[dict(e) for e in g["entries"]]) for g in gold["rows"]]
        rows[2]["entries"][0]["sign"] = "+" if rows[2]["entries"][0]["sign"] == "-" else "-"
        monkeypatch.setattr(tables, "golden", lambda kind: {**gold, "rows": rows})
        assert not tables.polyadics(max_rank=3).passed

    def test_renderings(self, poly):
        d = poly.to_dict()
        assert d["table"] == "polyadics" and d["passed"] and len(d["rows"]) == len(poly.rows)
        assert "DIVERGES" in poly.text()
        head, *body = poly.csv_rows()
        assert head[-2:] == ["status", "notes"] and len(body) == len(poly.rows)


class TestMonadics:
    def test_sixteen_columns(self):
        rep = tables.monadics()
        assert rep.passed and len(rep.rows) == 16
        assert [r.cells["log2_q"] for r in rep.rows] == list(range(16))
        assert [r.cells["serial"] for r in rep.rows] == [1 << q for q in range(16)]


class TestTree:
    def test_rule(self):
        assert tables.tree_rule(3) == {"r": 3, "algebra": "Fermi 4", "spinors": 16, "vectors": 32,
                                       "group": "SO(16,16)"}

    def test_rows(self):
        rep = tables.tree()
        assert rep.passed
        got = {r.cells["r"]: (r.cells["spinors"], r.cells["vectors"], r.cells["group"]) for r in rep.rows}
        assert got[1] == (2, 4, "SO(2,2)") and got[2] == (4, 8, "SO(4,4)") and got[3] == (16, 32, "SO(16,16)")
        assert [r.cells["r"] for r in rep.divergences] == [0]


def test_unknown_table():
    with pytest.raises(ValueError):
        tables.build("hyperbinary")
