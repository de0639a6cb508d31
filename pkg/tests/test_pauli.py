import pytest
from hypothesis import given, settings, strategies as st

from plexus import pauli
from plexus.basis import from_serial
from plexus.clifford import CliffordOperator, annihilator, creator, generator_from_duplex
from plexus.errors import RankTooLarge, StageMismatch
from plexus.grassmann import Element


class TestFrames:
    def test_stage2(self):
        f = pauli.orthonormal_duplex_frame(2)
        assert len(f.vectors) == 4 and f.signs == (1, 1, -1, -1) and f.is_orthonormal()

    def test_stage3_signature(self):
        assert pauli.orthonormal_duplex_frame(3).signature == (4, 4)

    def test_negative_generator_squares(self):
        f = pauli.orthonormal_duplex_frame(2)
        g = generator_from_duplex(f.vectors[2])
        assert g * g == -CliffordOperator.identity(2)


class TestMetric:
    def test_symmetry_character(self):
        assert pauli.pauli_metric(2).symmetry == -1
        assert pauli.pauli_metric(3).symmetry == 1
        m4 = pauli.pauli_metric(4)
        assert m4.symmetry == 1 and m4.matrix.dim == 65536

    @pytest.mark.parametrize("stage, square", [(2, -1), (3, 1), (4, 1)])
    def test_square_is_scalar(self, stage, square):
        assert pauli.pauli_metric(stage).square == square

    def test_bounds(self):
        with pytest.raises(RankTooLarge):
            pauli.pauli_metric(5)
        with pytest.raises(ValueError):
            pauli.pauli_metric(1)

    @pytest.mark.parametrize("stage", [2, 3, 4])
    def test_order_independence(self, stage):
        assert pauli.check_order_independence(stage, trials=5).passed

    @pytest.mark.parametrize("stage", [2, 3, 4])
    def test_spin_invariance(self, stage):
        assert pauli.check_spin_invariance(stage, samples=50).passed

    def test_triplet_round_trip(self):
        m = pauli.pauli_metric(3)
        text = pauli.export_triplets(m)
        assert text.startswith("# pauli-metric stage=3 dim=16 order=f-0,f-1,f-2,f-3")
        back = pauli.import_triplets(text)
        assert back.matrix == m.matrix and back.order == m.order


class TestSkewSymmetrization:
    def test_stage3_all_planes(self):
        rep = pauli.check_skew_symmetrization(3)
        assert rep.passed and len(rep.relations) == 28

    def test_stage4_sampled(self):
        rep = pauli.check_skew_symmetrization(4, samples=200, seed=0)
        assert rep.passed and len(rep.relations) == 200

    def test_stage2_is_symmetric_not_skew(self):
        # skew beta plus invariance forces (beta G)^T = +beta G, so every plane fails
        rep = pauli.check_skew_symmetrization(2)
        assert len(rep.failures) == 6
        assert all("[symmetric]" in r.lhs for r in rep.relations)

    def test_duplex_mode_reports_its_pairing(self):
        rep = pauli.check_skew_symmetrization(3, transpose="duplex")
        assert rep.meta["transpose"] == "duplex"

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            pauli.check_skew_symmetrization(2, transpose="other")


class TestExpectation:
    def test_identity_reads_beta(self):
        beta = pauli.pauli_metric(2).matrix
        q = Element.basis(0, stage=2)
        assert pauli.pseudo_expectation(q, CliffordOperator.identity(2)) == beta.entry(0, 0)
        q = Element.basis(0, stage=2) + Element.basis(3, stage=2)
        assert pauli.pseudo_expectation(q, CliffordOperator.identity(2)) == sum(
            beta.entry(i, j) for i in (0, 3) for j in (0, 3))

    def test_zero_operator(self):
        q = Element.basis(1, stage=2)
        assert pauli.pseudo_expectation(q, CliffordOperator.zero(2)) == 0

    def test_stage_mismatch(self):
        with pytest.raises(StageMismatch):
            pauli.pseudo_expectation(Element.basis(1, stage=3), CliffordOperator.identity(2))

    @settings(max_examples=40)
    @given(st.lists(st.fractions(-3, 3, max_denominator=3), min_size=4, max_size=4), st.integers(0, 1), st.integers(0, 1))
    def test_bilinear_in_operator(self, coeffs, ka, kb):
        q = Element({from_serial(i): c for i, c in enumerate(coeffs)}, 2)
        a, b = creator(2, ka), annihilator(2, kb)
        assert pauli.pseudo_expectation(q, a + b) == pauli.pseudo_expectation(q, a) + pauli.pseudo_expectation(q, b)

    def test_frame_covariance(self):
        rep = pauli.frame_covariance_check(trials=20, seed=0, tolerance=1e-10)
        assert rep.passed and len(rep.relations) == 20
