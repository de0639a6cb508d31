import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plexus import contraction as C
from plexus import exact, yang
from plexus.errors import EmptySweep, TooLarge
from plexus.suites import random_rational_cell

SWEEP = (16, 64, 256, 1024, 4096)


@pytest.fixture(scope="module")
def rep():
    return yang.build_yang_rep()


class TestCumulate:
    def test_identity(self):
        s = C.cumulate_exact(exact.identity(8), 3)
        assert s.shape == (512, 512)
        assert s == C.ScaledSparse(3 * C.sp.identity(512, dtype=np.int64, format="csr"), 1)

    def test_trace_formula(self):
        # tr(S x) = N * tr(x) * 8**(N-1)
        x = random_rational_cell(np.random.default_rng(1))
        tx = sum((x[i, i] for i in range(8)), Fraction(0))
        for N in (1, 2, 3):
            assert C.cumulate_exact(x, N).trace() == N * tx * 8 ** (N - 1)

    def test_single_cell_is_the_cell(self, rep):
        s = C.cumulate_exact(rep.L(1, 5), 1)
        assert np.allclose(s.to_float(), np.array(rep.L(1, 5), dtype=float))

    def test_limits(self):
        with pytest.raises(TooLarge):
            C.cumulate_exact(exact.identity(8), 5)
        with pytest.raises(ValueError):
            C.cumulate_exact(exact.identity(8), 0)


class TestSpectrum:
    @pytest.mark.parametrize("N", [1, 2, 3, 4])
    def test_oracle(self, N):
        assert C.spectrum_oracle_check(N).passed

    def test_closed_form_n2(self):
        # levels 1 (k=0,2) and 0 (k=1) with degeneracies in units of 4**N
        assert C.magnitude_levels(2) == {Fraction(1): 2 * 16, Fraction(0): 2 * 16}

    def test_float_cross_check(self):
        ev = C.tensor_qi_eigenvalues(2)
        assert ev == {Fraction(1): 16, Fraction(-1): 16, Fraction(0): 32}

    @given(st.integers(1, 60))
    def test_dimension_accounting(self, N):
        total = sum(s.degeneracy for s in C.qi_spectrum(N))
        assert total == 8 ** N

    @given(st.integers(1, 200))
    def test_sector_symmetry(self, N):
        sp = C.qi_spectrum(N)
        for s in sp:
            assert s.value == -sp[N - s.k].value
            assert s.residual == 1 - s.value ** 2 >= 0

    def test_bad_n(self):
        with pytest.raises(ValueError):
            C.qi_spectrum(0)


class TestBand:
    def test_counts(self):
        assert [C.band_level_count(N) for N in (4, 16, 100, 10000)] == [1, 2, 5, 50]

    @pytest.mark.parametrize("N", SWEEP)
    def test_census(self, N):
        r = C.band_census(N)
        assert r.passed and abs(r.meta["count"] - math.sqrt(N) / 2) <= 1

    @given(st.integers(4, 5000))
    def test_monotone(self, N):
        assert C.band_level_count(N) <= C.band_level_count(N + 1)

    def test_small_n(self):
        with pytest.raises(ValueError):
            C.band_census(3)


class TestLedger:
    @pytest.mark.parametrize("N", [10, 100])
    def test_ratios(self, rep, N):
        led = C.commutator_ledger(yang.orbital_atoms(rep), N, rep)
        assert led.report.passed
        assert led.ratios == (Fraction(N), 1, Fraction(1, N))
        hbar, W = led.hbar, led.W
        assert led.targets == {"xx": hbar / W, "xp": hbar, "pp": hbar * W}

    def test_scaled_units(self, rep):
        atoms = yang.orbital_atoms(rep, chrone=2, erge=Fraction(1, 3))
        led = C.commutator_ledger(atoms, 10, rep)
        assert led.report.passed and led.W == Fraction(1, 60)
        assert led.ratios == (60, 1, Fraction(1, 60))
        d = led.to_dict()
        assert d["W"] == "1/60" and d["ratios"] == ["60", "1", "1/60"]

    def test_bad_n(self, rep):
        with pytest.raises(ValueError):
            C.commutator_ledger(yang.orbital_atoms(rep), 0, rep)


class TestCentrality:
    def test_closed_form(self):
        assert C.centrality_ratio(3) == 2 and C.centrality_ratio(4) == 1
        assert C.centrality_ratio(1002) == Fraction(1, 500)
        with pytest.raises(ValueError):
            C.centrality_ratio(2)

    @pytest.mark.parametrize("N", [3, 4])
    def test_tensor(self, N):
        r = C.centrality_check(N, seed=5)
        assert r.passed and r.meta["polarization_residual"] < 1e-8

    def test_large_n_closed_form_only(self):
        r = C.centrality_check(1000)
        assert r.passed and len(r.relations) == 1


class TestLieHomomorphism:
    def test_lorentz_sector(self):
        assert C.lorentz_sector_check(2).passed

    def test_lorentz_sector_limit(self):
        with pytest.raises(TooLarge):
            C.lorentz_sector_check(4)

    def test_self_bracket(self):
        x = random_rational_cell(np.random.default_rng(2))
        assert C.lie_hom_check(x, x, 3).passed

    def test_yang_generators(self, rep):
        assert C.lie_hom_check(rep.L(1, 5), rep.L(5, 6), 2).passed

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1), st.sampled_from([2, 3]))
    def test_random_pairs(self, seed, N):
        rng = np.random.default_rng(seed)
        assert C.lie_hom_check(random_rational_cell(rng), random_rational_cell(rng), N).passed

    def test_limit(self):
        with pytest.raises(TooLarge):
            C.lie_hom_check(exact.identity(8), exact.identity(8), 5)


class TestSweep:
    def test_slopes(self):
        res = C.contraction_sweep(SWEEP)
        assert abs(res.fit("r1_max_band").slope + 0.5) <= 0.05
        assert res.fit("r2").slope == pytest.approx(-1.0, abs=1e-12)
        assert [r.band_levels for r in res.rows] == [2, 4, 8, 16, 32]

    def test_r2_is_w(self):
        res = C.contraction_sweep([16, 32], chrone=2, erge=3)
        assert [r.r2 for r in res.rows] == [Fraction(3, 32), Fraction(3, 64)]

    def test_band_policy(self):
        res = C.contraction_sweep(SWEEP, policy="band")
        assert res.policy == "band" and all(r.r1_max_band > 0 for r in res.rows)

    def test_csv(self):
        text = C.contraction_sweep([16, 64]).csv()
        lines = text.splitlines()
        assert lines[0] == "N,W,r1_max_band,r2,band_levels,band_width"
        assert len(lines) == 3 and all(len(l.split(",")) == 6 for l in lines)

    def test_single_point_has_no_fit(self):
        assert C.contraction_sweep([16]).fits == []

    def test_errors(self):
        with pytest.raises(EmptySweep):
            C.contraction_sweep([])
        with pytest.raises(ValueError):
            C.contraction_sweep([3, 16])
        with pytest.raises(ValueError):
            C.sector_bound(16, "floor")
