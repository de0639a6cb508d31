"""Acceptance criteria, one test each, at their stated tolerances and time limits.

Every test prints a single ``criterion N: PASS|FAIL`` line (visible with or
without ``-s``) before asserting.
"""
import math
import time

import pytest

from plexus import basis, clifford, contraction, pauli, suites, tables, yang

SWEEP = (16, 64, 256, 1024, 4096)


@pytest.fixture
def verdict(capsys):
    def emit(number: int, title: str, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\ncriterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}" + (f"  [{detail}]" if detail else ""))
        assert ok, f"criterion {number} ({title}) failed: {detail}"
    return emit


def test_criterion_01_dimension_ladder(verdict):
    t = time.perf_counter()
    sizes = [sum(1 for _ in basis.enumerate_stage(r)) for r in range(5)]
    dt = time.perf_counter() - t
    ok = sizes == [1, 2, 4, 16, 65536] and [basis.hyperexp(r) for r in range(5)] == sizes and dt < 10
    verdict(1, "dimension ladder 1, 2, 4, 16, 65536", ok, f"sizes {sizes}, {dt:.2f} s")


def test_criterion_02_polyadic_table(verdict):
    rep = tables.polyadics(max_rank=4)
    flagged = [r for r in rep.rows if r.status == "DIVERGES"]
    sign_flags = [r.cells["serial"] for r in flagged if r.cells["printed_sign"] != r.cells["rule_sign"]]
    both_shown = all(r.cells["printed_sign"] and r.cells["rule_sign"] for r in flagged)
    ok = rep.passed and sign_flags == [10] and both_shown
    verdict(2, "polyadic table ranks 0-4 with serial 10 flagged", ok,
            f"{len(rep.rows)} entries, mismatches {len(rep.mismatches)}, sign divergences at {sign_flags}")


def test_criterion_03_monadic_table(verdict):
    rep = tables.monadics()
    serials = [r.cells["serial"] for r in rep.rows]
    ok = rep.passed and serials == [2 ** q for q in range(16)]
    verdict(3, "16 rank-4 monadics have serials 2^q", ok, f"{len(serials)} columns")


def test_criterion_04_car(verdict):
    t = time.perf_counter()
    reps = [clifford.car_check(s, seed=0, samples=1000) for s in (1, 2, 3, 4)]
    dt = time.perf_counter() - t
    ok = all(r.passed for r in reps) and dt < 60
    verdict(4, "CAR at stages 1-4", ok,
            f"relations {[len(r.relations) for r in reps]}, failed {sum(len(r.failures) for r in reps)}, {dt:.2f} s")


def test_criterion_05_pauli_metrics(verdict):
    sym = pauli.check_symmetry_character()
    skew = [pauli.check_skew_symmetrization(s, seed=0, samples=200) for s in (2, 3, 4)]
    failed = {r.meta["stage"]: len(r.failures) for r in skew}
    ok = sym.passed and all(r.passed for r in skew)
    verdict(5, "beta skew/symmetric character and T(beta G) = -beta G", ok,
            f"character {'ok' if sym.passed else 'wrong'}, failed planes per stage {failed}")


def test_criterion_06_closure(verdict):
    reps = [clifford.so_closure_check(s, seed=0) for s in (2, 3)]
    kinds = {"structure": 0, "jacobi": 0, "killing": 0}
    for r in reps:
        for rel in r.relations:
            key = "jacobi" if rel.relation == "jacobi" else "killing" if "killing" in rel.relation else "structure"
            kinds[key] += 1
    ok = all(r.passed for r in reps) and all(kinds.values())
    verdict(6, "so(n,n) closure, Jacobi and nondegenerate Killing form at stages 2-3", ok,
            f"checked {kinds}, failed {sum(len(r.failures) for r in reps)}")


def test_criterion_07_yang(verdict):
    rep = yang.build_yang_rep()
    struct = yang.structure_check(rep)
    _, kill = yang.killing_form(rep)
    chiral = yang.chiral_split(rep)
    ok = (struct.passed and len(struct.relations) == 105 and kill.passed and chiral.report.passed
          and chiral.report.meta["eigenspace_dims"] == [4, 4])
    verdict(7, "Yang commutators, Killing form and 4 + 4 chirality split", ok,
            f"{len(struct.relations)} commutators, Killing signature {kill.meta['signature']}, "
            f"split {chiral.report.meta['eigenspace_dims']}")


def test_criterion_08_double_valuedness(verdict):
    rep = suites.rotation(2, tolerance=1e-12)
    ok = rep.passed and rep.meta["planes"] > 0
    verdict(8, "exp(pi G) = -1 on every compact stage-2 plane", ok,
            f"{rep.meta['planes']} planes, max deviation {rep.max_deviation:.2e}")


def test_criterion_09_cumulation_oracle(verdict):
    spectra = [contraction.spectrum_oracle_check(N) for N in (2, 3, 4)]
    hom = suites.lie_homomorphism((2, 3), pairs=50, seed=0)
    ok = all(r.passed for r in spectra) and hom.passed and len(hom.relations) == 100
    verdict(9, "closed-form spectrum equals tensor cumulant; S is a Lie homomorphism", ok,
            f"spectra {[r.passed for r in spectra]}, homomorphism {len(hom.relations) - len(hom.failures)}/100")


def test_criterion_10_contraction_scaling(verdict):
    t = time.perf_counter()
    res = contraction.contraction_sweep(SWEEP)
    dt = time.perf_counter() - t
    s1, s2 = res.fit("r1_max_band").slope, res.fit("r2").slope
    bands = [(r.N, r.band_levels) for r in res.rows]
    ok_bands = all(abs(c - math.sqrt(N) / 2) <= 1 for N, c in bands)
    ok = abs(s1 + 0.5) <= 0.05 and abs(s2 + 1.0) <= 1e-12 and ok_bands and dt < 10
    verdict(10, "residual slope -0.5 +- 0.05, W slope -1, band counts", ok,
            f"r1 slope {s1:.6f}, r2 slope {s2:.12f}, bands {bands}, {dt:.3f} s")


def test_criterion_11_scaling_ledger(verdict):
    rep = yang.build_yang_rep()
    atoms = yang.orbital_atoms(rep)
    details, ok = [], True
    for N in (10, 100):
        led = contraction.commutator_ledger(atoms, N, rep)
        hbar, W = led.hbar, led.W
        want = (hbar / W, hbar, hbar * W)
        got = tuple(led.bounds[k] for k in ("xx", "xp", "pp"))
        same = all(g / got[1] == w / want[1] for g, w in zip(got, want))
        ok = ok and led.report.passed and same
        details.append(f"N={N}: " + " : ".join(str(r) for r in led.ratios))
    verdict(11, "commutator bound ratios hbar/W : hbar : hbar W", ok, "; ".join(details))
