"""Named verification suites that bundle the module checks into single reports."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import clifford, contraction, pauli, yang
from .report import Report, combine


def car(stage: int = 3, seed: int = 0, samples: int = 1000) -> Report:
    return clifford.car_check(stage, seed=seed, samples=samples)


def closure(stage: int = 2, seed: int = 0) -> Report:
    return clifford.so_closure_check(stage, seed=seed)


def pauli_suite(stage: int = 2, transpose: str = "hilbert", seed: int = 0, samples: int = 200) -> Report:
    parts = [
        pauli.check_symmetry_character(),
        pauli.check_skew_symmetrization(stage, transpose=transpose, seed=seed, samples=samples),
        pauli.check_spin_invariance(stage, seed=seed, samples=samples),
        pauli.check_order_independence(stage, seed=seed),
    ]
    return combine("pauli", parts, stage=stage, transpose=transpose, seed=seed)


def yang_suite(signature: str = "3-3-compact-i", seed: int = 0) -> Report:
    rep = yang.build_yang_rep(signature)
    _, kill = yang.killing_form(rep)
    parts = [
        yang.clifford_check(rep),
        yang.structure_check(rep),
        yang.jacobi_check(rep, seed=seed),
        kill,
        yang.lorentz_closure_check(rep),
        yang.chiral_split(rep).report,
    ]
    return combine("yang", parts, signature=signature, seed=seed)


def rotation(stage: int = 2, tolerance: float = 1e-12) -> Report:
    parts = []
    for a, b in clifford.compact_planes(stage):
        r = clifford.full_rotation_check(clifford.frame_vector(stage, a), clifford.frame_vector(stage, b), tolerance)
        r.name = f"rotation-{a}-{b}"
        parts.append(r)
    return combine("rotation", parts, stage=stage, tolerance=tolerance, planes=len(parts))


def random_rational_cell(rng: np.random.Generator, dim: int = 8, density: float = 0.3) -> np.ndarray:
    """Sparse ``dim x dim`` matrix of small rationals ``p/q``, ``|p| <= 3``, ``q in {1, 2, 3}``."""
    out = np.empty((dim, dim), dtype=object)
    for i in range(dim):
        for j in range(dim):
            if rng.random() < density:
                out[i, j] = Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4)))
            else:
                out[i, j] = Fraction(0)
    return out


def lie_homomorphism(Ns=(2, 3), pairs: int = 50, seed: int = 0) -> Report:
    rng = np.random.default_rng(seed)
    out = Report("lie-hom", meta={"Ns": list(Ns), "pairs": pairs, "seed": seed})
    for N in Ns:
        for _ in range(pairs):
            contraction.lie_hom_check(random_rational_cell(rng), random_rational_cell(rng), N, out)
    return out


def contraction_small(seed: int = 0, pairs: int = 5) -> Report:
    """Tensor-scale contraction checks: spectrum oracle, homomorphism, Lorentz sector, centrality, ledger."""
    rep = yang.build_yang_rep()
    parts = [contraction.spectrum_oracle_check(N) for N in (2, 3)]
    parts.append(lie_homomorphism((2, 3), pairs=pairs, seed=seed))
    parts.append(contraction.lorentz_sector_check(2))
    parts.append(contraction.centrality_check(3, seed=seed))
    parts.append(contraction.commutator_ledger(yang.orbital_atoms(rep), 10, rep).report)
    return combine("contraction-small", parts, seed=seed)


SUITES = ("car", "pauli", "yang", "closure", "rotation", "contraction-small")
