from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plexus import basis, clifford
from plexus.clifford import (
    ANNIHILATOR,
    CREATOR,
    CliffordOperator,
    annihilator,
    anticommutator,
    apply,
    creator,
    frame_vector,
    generator_from_duplex,
    spin_generator,
)
from plexus.errors import NonCompactPlane, RankTooLarge, StageMismatch
from plexus.grassmann import DualElement, DuplexVector, Element, wedge


def oracle_apply(kind, k, x: Element) -> Element:
    """Creator: left wedge by e_(2**k). Annihilator: sum_j (-1)**(j-1) delta(u, x_j) x without x_j."""
    v = basis.from_serial(1 << k)
    if kind == CREATOR:
        return wedge(Element({v: 1}, x.stage), x)
    out = Element.zero(x.stage)
    target = v.factors[0]
    for m, c in x.terms.items():
        for j, f in enumerate(m.factors):
            if f == target:
                rest = basis.Monomial(m.factors[:j] + m.factors[j + 1:])
                out = out + Element({rest: (-1) ** j * c}, x.stage)
    return out


def oracle_word(word, x):
    for kind, k in reversed(word):
        x = oracle_apply(kind, k, x)
    return x


class TestOracles:
    def test_apply_examples(self):
        one = Element.one(2)
        assert creator(2, basis.from_serial(1))(one) == Element.basis(1, stage=2)
        e21 = Element.basis(3, stage=2)
        assert annihilator(2, basis.from_serial(1))(e21) == Element.basis(2, -1, 2)
        assert creator(2, 0)(Element.basis(1, stage=2)).is_zero()

    def test_anticommutators(self):
        a1, c1, c2, a2 = annihilator(2, 0), creator(2, 0), creator(2, 1), annihilator(2, 1)
        assert anticommutator(c1, a1) == CliffordOperator.identity(2)
        assert anticommutator(c1, c2).is_zero()
        assert anticommutator(a1, a2).is_zero()
        assert anticommutator(c1, a2).is_zero()

    def test_stage_errors(self):
        with pytest.raises(StageMismatch):
            apply(creator(2, 0), Element.one(3))
        with pytest.raises(StageMismatch):
            creator(2, 2)
        with pytest.raises(RankTooLarge):
            clifford.car_check(5)

    def test_generator_from_duplex(self):
        e1 = Element.basis(1, stage=1)
        one = CliffordOperator.identity(1)
        g = generator_from_duplex(DuplexVector(e1, DualElement.basis(1, 1, 1)))
        assert g == creator(1, 0) + annihilator(1, 0) and g * g == one
        g = generator_from_duplex(DuplexVector(e1, DualElement.basis(1, -1, 1)))
        assert g * g == -one
        g = generator_from_duplex(DuplexVector(e1, DualElement({}, 1)))
        assert g == creator(1, 0) and (g * g).is_zero()

    def test_spin_generator_squares(self):
        f = [frame_vector(2, a) for a in range(4)]
        one = CliffordOperator.identity(2)
        assert spin_generator(f[0], f[1]) * spin_generator(f[0], f[1]) == -one
        assert spin_generator(f[0], f[2]) * spin_generator(f[0], f[2]) == one
        assert spin_generator(f[0], f[0]).is_zero()

    @pytest.mark.parametrize("stage, relations", [(1, 3), (2, 10), (3, 36), (4, 528)])
    def test_car(self, stage, relations):
        rep = clifford.car_check(stage, seed=0)
        assert rep.passed and len(rep.relations) == relations

    @pytest.mark.parametrize("stage, dim", [(2, 6), (3, 28)])
    def test_closure(self, stage, dim):
        rep = clifford.so_closure_check(stage)
        assert rep.passed
        assert rep.meta["killing_det"] != 0
        assert sum(rep.meta["killing_signature"]) == dim

    def test_closure_stage4_sampled(self):
        assert clifford.so_closure_check(4, samples=20, jacobi_triples=5).passed

    def test_rotation(self):
        for a, b in clifford.compact_planes(2):
            rep = clifford.full_rotation_check(frame_vector(2, a), frame_vector(2, b))
            assert rep.passed and rep.max_deviation < 1e-12
        with pytest.raises(NonCompactPlane):
            clifford.full_rotation_check(frame_vector(2, 0), frame_vector(2, 2))

    def test_frame_anticommutators(self):
        for stage in (1, 2, 3):
            n = 2 * clifford.generator_count(stage)
            gs = [generator_from_duplex(frame_vector(stage, a)) for a in range(n)]
            from plexus.grassmann import duplex_inner
            for a in range(n):
                for b in range(n):
                    want = 2 * duplex_inner(frame_vector(stage, a), frame_vector(stage, b))
                    assert anticommutator(gs[a], gs[b]) == want * CliffordOperator.identity(stage)


words = st.lists(st.tuples(st.sampled_from([CREATOR, ANNIHILATOR]), st.integers(0, 3)), max_size=6).map(tuple)


class TestProperties:
    @given(words, st.integers(0, 2 ** 32 - 1))
    def test_normal_order_confluent(self, word, seed):
        ref = clifford.normal_order({word: 1})
        for s in range(3):
            assert clifford.normal_order({word: 1}, rng=np.random.default_rng(seed + s)) == ref

    @settings(max_examples=60)
    @given(words, st.integers(0, 15))
    def test_normal_order_preserves_action(self, word, q):
        op = CliffordOperator(3, {word: 1})
        x = Element.basis(q, stage=3)
        assert apply(op, x) == oracle_word(word, x)

    @pytest.mark.parametrize("stage", [2, 3])
    def test_matrix_matches_apply_exhaustive(self, stage):
        for g in clifford.all_generators(stage):
            op = clifford.generator(stage, g)
            m = clifford.matrix_of(op)
            for q in range(basis.hyperexp(stage)):
                x = Element.basis(q, stage=stage)
                got = {basis.from_serial(r): v for r, v in m.apply({q: Fraction(1)}).items()}
                assert Element(got, stage) == apply(op, x) == oracle_apply(op_kind(g), op_bit(g), x)

    def test_matrix_matches_apply_stage4_sampled(self):
        rng = np.random.default_rng(0)
        states = rng.choice(65536, size=1000, replace=False).astype(np.int64)
        for k in rng.choice(16, size=4, replace=False):
            for kind in (CREATOR, ANNIHILATOR):
                op = CliffordOperator(4, {((kind, int(k)),): 1}, ordered=True)
                mat, scale = clifford.int_matrix(op, states)
                for j, q in enumerate(states):
                    col = mat[:, j]
                    got = Element({basis.from_serial(int(r)): Fraction(int(v), scale)
                                   for r, v in zip(col.indices, col.data)}, 4)
                    assert got == oracle_apply(kind, int(k), Element.basis(int(q), stage=4))


def op_kind(g):
    return CREATOR if g.kind == "creator" else ANNIHILATOR


def op_bit(g):
    return basis.serial(g.index.factors[0].body)
