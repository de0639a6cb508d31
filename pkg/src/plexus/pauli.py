"""Orthonormal duplex frames and the recursive Pauli metrics built from them.

The frame of a stage pairs each monadic ``v`` with ``f+ = v (+) v^`` (square
+1) and ``f- = v (+) -v^`` (square -1). The Pauli metric is the product of
the negative-square frame generators, taken in ascending frame order. Each
factor is a signed permutation of the classical basis, so the metric is one
too and stays cheap even at 65536 dimensions.
"""
from __future__ import annotations

import io
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, TextIO

import numpy as np

from . import basis, kernels
from .clifford import (
    CliffordOperator,
    _check_stage,
    frame_permutation,
    frame_signs,
    frame_vector,
    generator_count,
    int_matrix,
)
from .errors import RankTooLarge, StageMismatch
from .grassmann import DuplexVector, Element, duplex_inner
from .report import Report
from .sparse import SignedPermutation, SignedSparseMatrix

TRANSPOSES = ("hilbert", "duplex")


@dataclass(frozen=True)
class QuadraticFrame:
    stage: int
    vectors: tuple[DuplexVector, ...]
    signs: tuple[int, ...]

    def gram(self) -> list[list[Fraction]]:
        return [[duplex_inner(v, w) for w in self.vectors] for v in self.vectors]

    def is_orthonormal(self) -> bool:
        g = self.gram()
        return all(g[i][j] == (self.signs[i] if i == j else 0)
                   for i in range(len(g)) for j in range(len(g)))

    @property
    def signature(self) -> tuple[int, int]:
        return self.signs.count(1), self.signs.count(-1)


def orthonormal_duplex_frame(stage: int) -> QuadraticFrame:
    """Frame of the stage's monadic duplex space; positive vectors first."""
    _check_stage(stage)
    n = generator_count(stage)
    return QuadraticFrame(stage, tuple(frame_vector(stage, a) for a in range(2 * n)), tuple(frame_signs(stage)))


@dataclass(frozen=True)
class PauliMetric:
    stage: int
    matrix: SignedPermutation
    order: tuple[int, ...]

    @property
    def symmetry(self) -> int:
        """+1 symmetric, -1 skew, 0 neither."""
        return self.matrix.symmetry()

    @property
    def square(self) -> int:
        """``s`` with ``beta**2 = s * 1``."""
        return self.matrix.scalar_square()

    def sparse(self) -> SignedSparseMatrix:
        m = self.matrix
        return SignedSparseMatrix(m.dim, {c: {int(m.rows[c]): int(m.signs[c])} for c in range(m.dim)})


def negative_frame_indices(stage: int) -> list[int]:
    return [a for a, s in enumerate(frame_signs(stage)) if s < 0]


def pauli_metric(stage: int, order: Sequence[int] | None = None) -> PauliMetric:
    """Product of the negative-square frame generators.

    ``order`` lists frame indices (default: the negative ones ascending);
    any ordering of the same factors changes the result by a sign only.
    """
    if stage < 2:
        raise ValueError("Pauli metrics start at stage 2")
    if stage > 4:
        raise RankTooLarge(f"stage {stage} is beyond the materializable ladder (at most 4)")
    neg = negative_frame_indices(stage)
    order = tuple(neg if order is None else order)
    if sorted(order) != neg:
        raise ValueError("order must be a permutation of the negative-square frame indices")
    beta = SignedPermutation.identity(basis.hyperexp(stage))
    for a in order:
        beta = beta @ frame_permutation(stage, a)
    return PauliMetric(stage, beta, order)


def _transpose(x: SignedPermutation, beta: SignedPermutation, mode: str) -> SignedPermutation:
    if mode == "hilbert":
        return x.T
    if mode == "duplex":
        return beta @ x.T @ beta.inverse()
    raise ValueError(f"transpose must be one of {TRANSPOSES}, not {mode!r}")


def _planes(stage: int, seed: int, samples: int) -> tuple[list[tuple[int, int]], bool]:
    planes = list(itertools.combinations(range(2 * generator_count(stage)), 2))
    if stage <= 3:
        return planes, True
    rng = np.random.default_rng(seed)
    pick = rng.choice(len(planes), size=min(samples, len(planes)), replace=False)
    return [planes[i] for i in sorted(pick)], False


def check_skew_symmetrization(stage: int, transpose: str = "hilbert", seed: int = 0, samples: int = 200) -> Report:
    """Check ``T(beta G) = -beta G`` for the grade-2 frame generators ``G``.

    ``transpose`` selects the pairing: ``hilbert`` is the plain matrix
    transpose in the orthonormal classical basis, ``duplex`` is the
    beta-adjoint ``X -> beta X^T beta^-1``. Every plane is checked at stages
    2 and 3; ``samples`` random planes (seed ``seed``) at stage 4.
    """
    if transpose not in TRANSPOSES:
        raise ValueError(f"transpose must be one of {TRANSPOSES}, not {transpose!r}")
    beta = pauli_metric(stage).matrix
    gam = [frame_permutation(stage, a) for a in range(2 * generator_count(stage))]
    planes, exhaustive = _planes(stage, seed, samples)
    rep = Report("pauli", meta={
        "stage": stage, "transpose": transpose, "planes": len(planes), "exhaustive": exhaustive,
        "seed": seed, "beta_symmetry": {1: "symmetric", -1: "skew", 0: "neither"}[beta.symmetry()],
        "beta_square": beta.scalar_square(), "backend": kernels.BACKEND,
    })
    for a, b in planes:
        bg = beta @ gam[a] @ gam[b]
        t = _transpose(bg, beta, transpose)
        ok = t == -bg
        sym = "symmetric" if t == bg else ("skew" if ok else "neither")
        rep.check(f"T(beta G{a}{b}) = -beta G{a}{b}", f"T(beta G_{a}{b}) [{sym}]", f"-beta G_{a}{b}", ok,
                  0.0 if ok else 2.0)
    return rep


def check_spin_invariance(stage: int, seed: int = 0, samples: int = 200) -> Report:
    """Check ``G^T beta + beta G = 0``: the form beta is preserved by every spin generator."""
    beta = pauli_metric(stage).matrix
    gam = [frame_permutation(stage, a) for a in range(2 * generator_count(stage))]
    planes, exhaustive = _planes(stage, seed, samples)
    rep = Report("pauli-invariance", meta={"stage": stage, "planes": len(planes), "exhaustive": exhaustive,
                                           "seed": seed})
    for a, b in planes:
        g = gam[a] @ gam[b]
        lhs = g.T @ beta
        ok = lhs == -(beta @ g)
        rep.check(f"G{a}{b}^T beta + beta G{a}{b} = 0", f"G_{a}{b}^T beta", f"-beta G_{a}{b}", ok, 0.0 if ok else 2.0)
    return rep


def check_symmetry_character() -> Report:
    """beta skew at stage 2 and symmetric at stages 3 and 4; beta squared is a scalar."""
    rep = Report("pauli-symmetry")
    for stage, want in ((2, -1), (3, 1), (4, 1)):
        m = pauli_metric(stage)
        name = {1: "symmetric", -1: "skew"}[want]
        rep.check(f"beta stage {stage} {name}", f"beta^T (stage {stage})", f"{'+' if want > 0 else '-'}beta",
                  m.symmetry == want)
        rep.check(f"beta stage {stage} squares to a scalar", "beta^2", f"{m.square:+d}", m.square != 0)
        rep.meta[f"stage{stage}_square"] = m.square
    return rep


def check_order_independence(stage: int, trials: int = 10, seed: int = 0) -> Report:
    """Reordering the factors of beta changes it by an overall sign only."""
    rng = np.random.default_rng(seed)
    ref = pauli_metric(stage).matrix
    rep = Report("pauli-order", meta={"stage": stage, "seed": seed})
    neg = negative_frame_indices(stage)
    for _ in range(trials):
        order = [int(x) for x in rng.permutation(neg)]
        m = pauli_metric(stage, order).matrix
        rep.check("beta reordered = +-beta", f"beta{tuple(order)}", "+-beta", m == ref or m == -ref)
    return rep


def pseudo_expectation(Q: Element, A: CliffordOperator, metric: PauliMetric | None = None) -> Fraction:
    """``Av_Q A = beta(Q, A Q) = sum beta_{q'q''} Q^{q'} (AQ)^{q''}``."""
    if A.stage != Q.stage:
        raise StageMismatch(f"operator of stage {A.stage} with element of stage {Q.stage}")
    metric = metric or pauli_metric(Q.stage)
    if metric.stage != Q.stage:
        raise StageMismatch(f"metric of stage {metric.stage} with element of stage {Q.stage}")
    q = {basis.serial(m): c for m, c in Q.terms.items()}
    aq = {basis.serial(m): c for m, c in A(Q).terms.items()}
    rows, signs = metric.matrix.rows, metric.matrix.signs
    return sum((int(signs[j]) * q.get(int(rows[j]), 0) * c for j, c in aq.items()), Fraction(0))


def pseudo_expectation_float(q: np.ndarray, a: np.ndarray, beta: np.ndarray) -> float:
    """Float form of ``Av_Q A`` for dense vectors and matrices."""
    return float(q @ beta @ a @ q)


def export_triplets(metric: PauliMetric, out: TextIO | None = None) -> str:
    """Write beta as ``row col sign`` lines under a header naming the stage and factor order."""
    buf = io.StringIO()
    n = generator_count(metric.stage)
    names = ",".join(f"f-{a - n}" for a in metric.order)
    buf.write(f"# pauli-metric stage={metric.stage} dim={metric.matrix.dim} order={names}\n")
    for r, c, s in metric.matrix.triplets():
        buf.write(f"{r} {c} {s:+d}\n")
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def import_triplets(text: str) -> PauliMetric:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = dict(kv.split("=", 1) for kv in lines[0].lstrip("# ").split()[1:])
    stage, dim = int(head["stage"]), int(head["dim"])
    n = generator_count(stage)
    order = tuple(int(x.split("-")[1]) + n for x in head["order"].split(","))
    rows = np.empty(dim, dtype=np.int64)
    signs = np.empty(dim, dtype=np.int8)
    for ln in lines[1:]:
        r, c, s = ln.split()
        rows[int(c)] = int(r)
        signs[int(c)] = int(s)
    return PauliMetric(stage, SignedPermutation(rows, signs), order)


def frame_covariance_check(trials: int = 20, seed: int = 0, tolerance: float = 1e-10) -> Report:
    """``Av_Q A`` is unchanged when ``Q -> R Q`` and ``A -> R A R^-1`` for a spin rotation ``R`` (stage 2)."""
    import scipy.linalg

    stage = 2
    rng = np.random.default_rng(seed)
    beta = pauli_metric(stage).matrix.dense().astype(float)
    gam = [frame_permutation(stage, a).dense().astype(float) for a in range(2 * generator_count(stage))]
    planes = list(itertools.combinations(range(len(gam)), 2))
    dim = beta.shape[0]
    rep = Report("pauli-covariance", meta={"stage": stage, "seed": seed, "tolerance": tolerance})
    for _ in range(trials):
        theta = float(rng.uniform(-np.pi, np.pi))
        a, b = planes[int(rng.integers(len(planes)))]
        r = scipy.linalg.expm(theta * gam[a] @ gam[b])
        q = rng.standard_normal(dim)
        op = rng.standard_normal((dim, dim))
        before = pseudo_expectation_float(q, op, beta)
        after = pseudo_expectation_float(r @ q, r @ op @ np.linalg.inv(r), beta)
        dev = abs(after - before)
        rep.check("Av invariant under spin rotation", f"theta={theta:.4f} plane=({a},{b})", f"{before:.6g}",
                  dev < tolerance * max(1.0, abs(before)), dev)
    return rep
