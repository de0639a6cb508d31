import pytest
from hypothesis import given, settings, strategies as st

from plexus import basis
from plexus.basis import from_serial, iota_basis, serial, unit, wedge_basis
from plexus.errors import BudgetExceeded, ParseError, RankTooLarge

stage4 = st.integers(min_value=0, max_value=65535)
stage3 = st.integers(min_value=0, max_value=15)


def e(q):
    return from_serial(q)


def only(el):
    (m, c), = el.terms.items()
    return m, c


class TestOracles:
    def test_unit(self):
        u = unit()
        assert serial(u) == 0 and basis.rank(u) == 0 and basis.degree(u) == 0 and basis.parity(u) == 1

    @pytest.mark.parametrize("q, want", [(2, 4), (0, 1), (15, 32768)])
    def test_iota(self, q, want):
        assert serial(iota_basis(e(q))) == want

    def test_wedge_examples(self):
        assert wedge_basis(e(2), e(1)) == (1, e(3))
        assert wedge_basis(e(1), e(2)) == (-1, e(3))
        assert wedge_basis(e(1), e(1))[0] == 0

    @pytest.mark.parametrize("q, r, g", [(12, 3, 2), (7, 3, 3), (0, 0, 0)])
    def test_rank_degree(self, q, r, g):
        assert (basis.rank(e(q)), basis.degree(e(q))) == (r, g)

    @pytest.mark.parametrize("q, p", [(4, -1), (23, 1), (10, 1)])
    def test_parity_rule(self, q, p):
        assert basis.parity(e(q)) == p

    def test_serial_examples(self):
        assert serial(iota_basis(e(4))) == 16
        s, m = 1, unit()
        for q in (1, 2, 4, 8):
            sg, m = wedge_basis(e(q), m)
            s *= sg
        assert serial(m) == 15
        assert serial(from_serial(2 ** 16)) == 65536
        assert basis.rank(from_serial(2 ** 16)) == 5

    def test_from_serial_6(self):
        m = e(6)
        assert [serial(f.body) for f in m.factors] == [2, 1]

    def test_compare(self):
        assert basis.compare(e(3), e(4)) < 0
        assert basis.compare(e(5), e(5)) == 0
        big = iota_basis(e(16))
        basis.set_bit_budget(8)
        try:
            assert basis.compare(big, e(15)) > 0
        finally:
            basis.set_bit_budget(basis.DEFAULT_BIT_BUDGET)

    def test_render_parse(self):
        assert basis.render(e(6)) == "i(i(i(1))) v i(i(1))"
        assert basis.parse("i(1) v i(1)").is_zero()
        assert only(basis.parse("e6")) == (e(6), 1)

    def test_parse_normalizes_order(self):
        m, c = only(basis.parse("i(1) v i(i(1))"))
        assert m == e(3) and c == -1

    @pytest.mark.parametrize("text, pos", [("i(1 v", 5), ("e", 1), ("2/0 e1", 2), ("i(1)) ", 4)])
    def test_parse_errors_carry_position(self, text, pos):
        with pytest.raises(ParseError) as exc:
            basis.parse(text)
        assert exc.value.position == pos

    def test_enumerate(self):
        assert [serial(m) for m in basis.enumerate_stage(2)] == [0, 1, 2, 3]
        assert [len(list(basis.enumerate_stage(r))) for r in range(4)] == [1, 2, 4, 16]
        with pytest.raises(RankTooLarge):
            list(basis.enumerate_stage(5))

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            serial(iota_basis(iota_basis(iota_basis(e(16)))))
        assert serial(iota_basis(iota_basis(e(16)))) == 2 ** 65536
        with pytest.raises(BudgetExceeded):
            serial(iota_basis(iota_basis(e(16))), bit_budget=100)


class TestProperties:
    @given(stage4)
    def test_round_trip(self, q):
        assert serial(from_serial(q)) == q

    @given(st.integers(min_value=0, max_value=4096))
    def test_iota_exponentiates(self, q):
        assert serial(iota_basis(e(q))) == 2 ** q

    @given(stage4, stage4)
    def test_graded_commutativity(self, a, b):
        s, c = wedge_basis(e(a), e(b))
        s2, c2 = wedge_basis(e(b), e(a))
        if s:
            assert c2 == c
            assert s2 == s * (-1) ** (basis.degree(e(a)) * basis.degree(e(b)))
        else:
            assert s2 == 0 and a & b

    @given(stage4, stage4, stage4)
    def test_associativity(self, a, b, c):
        s1, ab = wedge_basis(e(a), e(b))
        t1, left = wedge_basis(ab, e(c))
        s2, bc = wedge_basis(e(b), e(c))
        t2, right = wedge_basis(e(a), bc)
        assert s1 * t1 == s2 * t2
        if s1 * t1:
            assert left == right and serial(left) == a + b + c

    @given(stage4, stage4)
    def test_compare_matches_serial(self, a, b):
        assert basis.compare(e(a), e(b)) == (a > b) - (a < b)

    @given(stage4)
    def test_parity_is_degree_rule(self, q):
        assert basis.parity(e(q)) == (-1) ** bin(q).count("1")

    @given(stage4)
    def test_render_parse_round_trip(self, q):
        for fmt in ("expr", "serial"):
            assert only(basis.parse(basis.render(e(q), fmt))) == (e(q), 1)

    @settings(max_examples=50)
    @given(stage3)
    def test_stage_closed_under_iota_into_next(self, q):
        assert basis.rank(iota_basis(e(q))) <= 4
        assert serial(iota_basis(e(q))) < 65536 or q >= 16
