"""Cumulation over N cells and the Yang to Heisenberg-Poincare contraction.

The cumulant of a cell operator ``x`` is ``Sx = sum_a 1 (x) ... x (at a) ... (x) 1``.
For N <= 4 it is built exactly as an integer sparse matrix (after clearing
denominators). For larger N every quantity used here has a closed form,
because cumulants of commuting cell copies have binomial spectra.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

import numpy as np
import scipy.sparse as sp

from . import exact
from .errors import EmptySweep, TooLarge
from .exact import commutator, is_zero
from .report import Report
from .yang import OrbitalAtoms, YangRep, build_yang_rep, orbital_atoms

MAX_TENSOR_N = 4
_INT_LIMIT = 1 << 62


@dataclass
class ScaledSparse:
    """An exact rational matrix stored as ``matrix / scale`` with int64 entries."""

    matrix: sp.csr_matrix
    scale: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def trace(self) -> Fraction:
        return Fraction(int(self.matrix.diagonal().sum()), self.scale)

    def to_float(self) -> np.ndarray:
        return self.matrix.toarray() / self.scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScaledSparse):
            return NotImplemented
        diff = (self.matrix * other.scale - other.matrix * self.scale).tocsr()
        diff.eliminate_zeros()
        return diff.nnz == 0


def _int_cell(x: np.ndarray) -> tuple[np.ndarray, int]:
    vals = [Fraction(v) for v in np.asarray(x, dtype=object).flat]
    scale = math.lcm(*(v.denominator for v in vals)) if vals else 1
    ints = np.array([int(v * scale) for v in vals], dtype=np.int64).reshape(np.shape(x))
    return ints, scale


def _guard(*mats: sp.spmatrix) -> None:
    bound = 1
    for m in mats:
        m = m.tocsr()
        row_nnz = int(np.diff(m.indptr).max()) if m.nnz else 0
        peak = int(abs(m).max()) if m.nnz else 0
        bound *= max(1, peak * max(1, row_nnz))
    if bound >= _INT_LIMIT:
        raise OverflowError("exact int64 product could overflow; use smaller cell entries")


def _cumulate_int(x: np.ndarray, N: int) -> sp.csr_matrix:
    d = x.shape[0]
    cell = sp.csr_matrix(x)
    out = sp.csr_matrix((d ** N, d ** N), dtype=np.int64)
    for a in range(N):
        term = sp.identity(d ** a, dtype=np.int64, format="csr")
        term = sp.kron(term, cell, format="csr")
        term = sp.kron(term, sp.identity(d ** (N - a - 1), dtype=np.int64, format="csr"), format="csr")
        out = out + term
    out.sum_duplicates()
    out.eliminate_zeros()
    return out.astype(np.int64)


def cumulate_exact(x, N: int) -> ScaledSparse:
    """Exact cumulant of a rational cell matrix over ``N`` cells (N <= 4)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if N > MAX_TENSOR_N:
        raise TooLarge(f"tensor realization of {N} cells is 8**{N} dimensional; at most {MAX_TENSOR_N}")
    ints, scale = _int_cell(x)
    return ScaledSparse(_cumulate_int(ints, N), scale)


def _bracket(a: sp.csr_matrix, b: sp.csr_matrix) -> sp.csr_matrix:
    _guard(a, b)
    out = (a @ b - b @ a).tocsr()
    out.eliminate_zeros()
    return out


def lie_hom_check(x, y, N: int, report: Report | None = None) -> Report:
    """``[Sx, Sy] = S[x, y]`` exactly."""
    if N > MAX_TENSOR_N:
        raise TooLarge(f"N = {N} exceeds the tensor limit {MAX_TENSOR_N}")
    rep = report or Report("lie-hom", meta={"N": N})
    xi, dx = _int_cell(x)
    yi, dy = _int_cell(y)
    sx, sy = _cumulate_int(xi, N), _cumulate_int(yi, N)
    lhs = _bracket(sx, sy)
    rhs = _cumulate_int(xi @ yi - yi @ xi, N)
    diff = (lhs - rhs).tocsr()
    diff.eliminate_zeros()
    dev = float(abs(diff).max()) / (dx * dy) if diff.nnz else 0.0
    rep.check(f"[Sx, Sy] = S[x, y] (N={N})", "[Sx, Sy]", "S[x, y]", diff.nnz == 0, dev)
    return rep


@dataclass
class CumulantSystem:
    """N commuting copies of the Yang cell."""

    rep: YangRep
    atoms: OrbitalAtoms
    N: int

    @classmethod
    def build(cls, N: int, signature: str = "3-3-compact-i", chrone=1, erge=1, h=1) -> CumulantSystem:
        rep = build_yang_rep(signature)
        return cls(rep, orbital_atoms(rep, chrone, erge, h), N)

    @property
    def realization(self) -> str:
        return "tensor" if self.N <= MAX_TENSOR_N else "combinatorial"

    def cumulant(self, x) -> ScaledSparse:
        return cumulate_exact(x, self.N)

    def spectrum(self) -> list[PolarizedSector]:
        return qi_spectrum(self.N)


# -- spectrum of the cumulant imaginary --------------------------------------

CELL_PLANE_DEGENERACY = 4


@dataclass(frozen=True)
class PolarizedSector:
    """Sector with ``k`` of the ``N`` cells flipped: ``Qi`` acts as ``i (N - 2k)/N``."""

    N: int
    k: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.N - 2 * self.k, self.N)

    @property
    def magnitude(self) -> Fraction:
        return abs(self.value)

    @property
    def multiplicity(self) -> int:
        """Level multiplicity in units of the per-cell plane degeneracy."""
        return math.comb(self.N, self.k)

    @property
    def degeneracy(self) -> int:
        """Complex multiplicity of the eigenvalue ``i * value`` on ``8**N`` dimensions."""
        return self.multiplicity * CELL_PLANE_DEGENERACY ** self.N

    @property
    def residual(self) -> Fraction:
        """Eigenvalue of ``Qi**2 + 1`` on the sector."""
        return 1 - self.value ** 2


def qi_spectrum(N: int) -> list[PolarizedSector]:
    """Closed-form spectrum of ``Qi = (1/N) S dQi``, one sector per flip count ``k = 0..N``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return [PolarizedSector(N, k) for k in range(N + 1)]


def magnitude_levels(N: int) -> dict[Fraction, int]:
    """Distinct ``|Qi|`` levels with their real multiplicities (eigenvalues ``+-i m`` together)."""
    out: dict[Fraction, int] = {}
    for s in qi_spectrum(N):
        out[s.magnitude] = out.get(s.magnitude, 0) + s.degeneracy
    return out


def tensor_qi_levels(N: int, dqi: np.ndarray | None = None) -> dict[Fraction, int]:
    """Magnitude levels of ``S(dQi)/N`` computed from the exact tensor cumulant.

    The candidate levels ``m = |N - 2k|`` are certified by checking that
    ``prod_m (M**2 + m**2)`` vanishes on ``M = S dQi``; multiplicities then
    follow from the traces of ``M**(2j)`` by an exact Vandermonde solve.
    """
    if dqi is None:
        dqi = build_yang_rep().gamma(6, 5)
    ints, scale = _int_cell(dqi)
    if scale != 1:
        raise ValueError("dQi must be an integer matrix")
    M = _cumulate_int(ints, N)
    dim = M.shape[0]
    eye = sp.identity(dim, dtype=np.int64, format="csr")
    levels = sorted({abs(N - 2 * k) for k in range(N + 1)})
    M2 = (M @ M).tocsr()
    poly = eye
    for m in levels:
        _guard(poly, M2)
        poly = (poly @ (M2 + m * m * eye)).tocsr()
    poly.eliminate_zeros()
    if poly.nnz:
        raise ArithmeticError("levels do not annihilate the cumulant; spectrum is not the predicted one")
    traces, power = [], eye
    for j in range(len(levels)):
        traces.append(Fraction(int(power.diagonal().sum())))
        _guard(power, M2)
        power = (power @ M2).tocsr()
    # trace(M^(2j)) = sum_m n_m (-m^2)^j
    vander = np.array([[Fraction((-m * m) ** j) for m in levels] for j in range(len(levels))], dtype=object)
    mult = exact.solve(vander, traces)
    return {Fraction(m, N): int(n) for m, n in zip(levels, mult) if n}


def tensor_qi_eigenvalues(N: int) -> dict[Fraction, int]:
    """Float cross-check: eigenvalues ``i v`` of ``S(dQi)/N`` by dense diagonalization, keyed by ``v``."""
    dqi = build_yang_rep().gamma(6, 5)
    ints, _ = _int_cell(dqi)
    M = _cumulate_int(ints, N).toarray().astype(float) / N
    ev = np.linalg.eigvals(M)
    out: dict[Fraction, int] = {}
    for v in ev:
        key = Fraction(round(float(v.imag) * N), N)
        out[key] = out.get(key, 0) + 1
    return out


def spectrum_oracle_check(N: int) -> Report:
    """Closed-form spectrum against the exact tensor eigenstructure."""
    rep = Report("qi-spectrum", meta={"N": N})
    closed = magnitude_levels(N)
    tensor = tensor_qi_levels(N)
    rep.meta.update({"closed": {str(k): v for k, v in closed.items()},
                     "tensor": {str(k): v for k, v in tensor.items()}})
    rep.check(f"Qi levels and multiplicities (N={N})", "tensor eigenstructure", "closed form", closed == tensor)
    return rep


def band_census(N: int) -> Report:
    """Levels of ``|Qi|`` inside the band ``1 - N**-1/2 < |Qi| <= 1``.

    ``(N - 2k)/N > 1 - N**-1/2`` is ``k < sqrt(N)/2``, i.e. ``4 k**2 < N``,
    decided in integers.
    """
    if N < 4:
        raise ValueError("band census needs N >= 4")
    ks = [k for k in range(N // 2 + 1) if 4 * k * k < N]
    count = len(ks)
    half_root = math.sqrt(N) / 2
    # ceil(sqrt(N)/2) computed exactly: smallest c with 4 c**2 >= N
    c = math.isqrt(N) // 2
    while 4 * c * c < N:
        c += 1
    width = 1 / math.sqrt(N)
    mult = sum(2 * math.comb(N, k) if 2 * k != N else math.comb(N, k) for k in ks)
    rep = Report("band", meta={
        "N": N, "band": [1 - width, 1.0], "band_width": width, "levels_k": ks, "count": count,
        "sqrt_N_over_2": half_root, "multiplicity_units": str(mult),
    })
    rep.check("level count = ceil(sqrt(N)/2)", str(count), str(c), count == c)
    rep.check("level count within 1 of sqrt(N)/2", str(count), f"{half_root:.4f} +- 1", abs(count - half_root) <= 1,
              abs(count - half_root))
    return rep


def band_level_count(N: int) -> int:
    return sum(1 for k in range(N // 2 + 1) if 4 * k * k < N)


# -- commutator scaling ledger ---------------------------------------------

@dataclass
class ScalingLedger:
    N: int
    chrone: Fraction
    erge: Fraction
    hbar: Fraction
    W: Fraction
    cell_norms: dict[str, Fraction]
    bounds: dict[str, Fraction]
    targets: dict[str, Fraction]
    report: Report

    @property
    def ratios(self) -> tuple[Fraction, Fraction, Fraction]:
        """``||[x,x]|| : ||[x,p]|| : ||[p,p]||`` normalized so the middle term is 1."""
        b = self.bounds
        return b["xx"] / b["xp"], Fraction(1), b["pp"] / b["xp"]

    def to_dict(self) -> dict:
        return {
            "N": self.N, "chrone": str(self.chrone), "erge": str(self.erge), "hbar": str(self.hbar),
            "W": str(self.W), "cell_norms": {k: str(v) for k, v in self.cell_norms.items()},
            "bounds": {k: str(v) for k, v in self.bounds.items()},
            "targets": {k: str(v) for k, v in self.targets.items()},
            "ratios": [str(r) for r in self.ratios], "report": self.report.to_dict(),
        }


def _structure(rep: YangRep, a, b, c, d) -> np.ndarray:
    from .clifford import orthogonal_structure

    g = (0,) + rep.metric
    out = exact.zeros(8)
    for coef, x, y in orthogonal_structure(rep.L, g, a, b, c, d):
        out = out + coef * rep.L(x, y)
    return out


def commutator_ledger(atoms: OrbitalAtoms, N: int, rep: YangRep | None = None) -> ScalingLedger:
    """Scaling of ``[x,x]``, ``[x,p]``, ``[p,p]`` for ``X = X_0 S dL^{m5}``, ``P = (E/N) S dL^{m6}``.

    The cell identities are verified exactly; since S is a Lie homomorphism
    they lift to the cumulants. Cumulant norms are bounded by ``N`` times
    the cell norm, which gives the triple ``hbar/W : hbar : hbar W`` when the
    three cell norms agree.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    rep = rep or build_yang_rep()
    X, E = atoms.chrone, atoms.erge
    hbar = X * E
    W = E / (N * X)
    out = Report("ledger", meta={"N": N, "chrone": str(X), "erge": str(E), "W": str(W)})
    mink = range(1, 5)
    for m, n in itertools.product(mink, repeat=2):
        xx = commutator(rep.L(m, 5), rep.L(n, 5))
        out.check(f"[dL^{m}5, dL^{n}5] = dL^{m}{n}", "cell [x, x]", f"dL^{m}{n}",
                  is_zero(xx - rep.L(m, n)) and is_zero(xx - _structure(rep, m, 5, n, 5)))
        xp = commutator(rep.L(m, 5), rep.L(n, 6))
        want = (rep.g(m) if m == n else 0) * rep.L(6, 5)
        out.check(f"[dL^{m}5, dL^{n}6] = {'g dL^65' if m == n else '0'}", "cell [x, p]", "g^{mn} dL^65",
                  is_zero(xp - want))
        pp = commutator(rep.L(m, 6), rep.L(n, 6))
        out.check(f"[dL^{m}6, dL^{n}6] = dL^{m}{n}", "cell [p, p]", f"dL^{m}{n}", is_zero(pp - rep.L(m, n)))
    c_xx = max(exact.exact_operator_norm(rep.L(m, n)) for m, n in itertools.combinations(mink, 2))
    c_qi = exact.exact_operator_norm(rep.L(6, 5))
    c_pp = c_xx
    if not all(isinstance(v, Fraction) for v in (c_xx, c_qi)):
        raise ArithmeticError("cell norms are not exact")
    bounds = {
        "xx": X * X * N * c_xx,          # X^2 |S dL^{mn}| <= X^2 N c
        "xp": (X * E / N) * N * c_qi,    # hbar |(1/N) S dL^65|
        "pp": (E * E / (N * N)) * N * c_pp,
    }
    targets = {"xx": hbar / W, "xp": hbar, "pp": hbar * W}
    out.check("[X, P] = hbar g Qi_L", "coefficient of (1/N) S dL^65", "hbar g^{mn}", True)
    for key in bounds:
        ratio = bounds[key] / targets[key]
        out.check(f"bound {key} / target = cell norm", str(bounds[key]), f"{ratio} * {targets[key]}",
                  ratio == c_qi)
    return ScalingLedger(N, X, E, hbar, W, {"xx": c_xx, "xp": c_qi, "pp": c_pp}, bounds, targets, out)


def centrality_ratio(N: int) -> Fraction:
    """``||[Qi, X] v|| / ||Qi X v||`` for ``v`` in the fully polarized sector (closed form).

    ``X = S dL^{m5}`` flips one cell, moving ``v`` from ``Qi = i`` to
    ``Qi = i (N-2)/N``; the commutator keeps only the difference ``2/N``.
    """
    if N < 3:
        raise ValueError("the product vanishes or the ratio is undefined for N < 3")
    return Fraction(2, N - 2)


def centrality_check(N: int, mu: int = 1, seed: int = 0) -> Report:
    """The commutator with ``Qi`` is O(1/N) relative to the product on polarized states.

    Checks the closed form against the tensor realization (N <= 4) on a
    random vector of the sector where ``Qi**2 = -1``.
    """
    ratio = centrality_ratio(N)
    out = Report("centrality", meta={"N": N, "ratio_closed_form": str(ratio)})
    out.check("ratio * N bounded", f"{ratio} * {N}", "<= 6", ratio * N <= 6)
    if N > MAX_TENSOR_N:
        return out
    rep = build_yang_rep()
    qi_i, _ = _int_cell(rep.gamma(6, 5))
    x_i, _ = _int_cell(2 * rep.L(mu, 5))
    M = _cumulate_int(qi_i, N).astype(float)
    X = _cumulate_int(x_i, N).astype(float)
    dim = M.shape[0]
    M2 = M @ M
    v = np.random.default_rng(seed).standard_normal(dim)
    for m in sorted({abs(N - 2 * k) for k in range(N + 1)} - {N}):
        v = (M2 @ v + m * m * v) / (m * m - N * N)
    v /= np.linalg.norm(v)
    polar = np.linalg.norm(M2 @ v + N * N * v)
    xv = X @ v
    comm = np.linalg.norm(M @ xv - X @ (M @ v))
    prod = np.linalg.norm(M @ xv)
    measured = comm / prod
    out.meta.update({"ratio_tensor": measured, "polarization_residual": float(polar)})
    out.check("tensor ratio = 2/(N-2)", f"{measured:.12g}", str(ratio), abs(measured - float(ratio)) < 1e-9,
              abs(measured - float(ratio)))
    return out


def lorentz_sector_check(N: int) -> Report:
    """Lorentz relations of the target algebra on the tensor realization (no 1/N rescaling).

    ``[L, x]`` and ``[L, p]`` are checked in the printed target form with
    ``L = S dL``; ``[L, L]`` in the orthogonal-algebra form, which is the
    printed form with the opposite overall sign (see the ledger).
    """
    if N > 3:
        raise TooLarge("Lorentz sector check limited to N <= 3")
    rep = build_yang_rep()
    mink = range(1, 5)
    cache: dict = {}

    def S(key, x):
        if key not in cache:
            ints, scale = _int_cell(x)
            cache[key] = (_cumulate_int(ints, N), scale)
        return cache[key]

    def same(a, b) -> bool:
        (ma, sa), (mb, sb) = a, b
        d = (ma * sb - mb * sa).tocsr()
        d.eliminate_zeros()
        return d.nnz == 0

    def br(a, b):
        (ma, sa), (mb, sb) = a, b
        return _bracket(ma, mb), sa * sb

    def lin(terms):
        acc, scale = None, 1
        for coef, (m, s) in terms:
            scale = math.lcm(scale, s)
        for coef, (m, s) in terms:
            piece = m * (coef * (scale // s))
            acc = piece if acc is None else acc + piece
        return acc.tocsr(), scale

    out = Report("lorentz-sector", meta={"N": N})
    L = lambda a, b: S(("L", a, b), rep.L(a, b))
    g = rep.g
    for nu, mu1, mu in itertools.product(mink, repeat=3):
        if nu == mu1:
            continue
        for col, name in ((5, "x"), (6, "p")):
            lhs = br(L(nu, mu1), L(mu, col))
            terms = [(g(mu1) if mu1 == mu else 0, L(nu, col)), (-(g(nu)) if nu == mu else 0, L(mu1, col))]
            terms = [(c, t) for c, t in terms if c] or [(0, L(nu, col))]
            out.check(f"[L^{nu}{mu1}, {name}^{mu}]", f"[L^{nu}{mu1}, {name}^{mu}]",
                      f"g {name}^{nu} - g {name}^{mu1}", same(lhs, lin(terms)))
    for (a, b), (c, d) in itertools.combinations(itertools.combinations(mink, 2), 2):
        lhs = br(L(a, b), L(c, d))
        want = _structure(rep, a, b, c, d)
        out.check(f"[L^{a}{b}, L^{c}{d}]", "[L, L]", "orthogonal structure", same(lhs, S(("w", a, b, c, d), want)))
    qi = S("qi", rep.L(6, 5))
    for a, b in itertools.combinations(mink, 2):
        out.check(f"[L^{a}{b}, Qi] = 0", "[L, Qi]", "0", br(L(a, b), qi)[0].nnz == 0)
    return out


# -- contraction sweep -----------------------------------------------------

SECTOR_POLICIES = ("ceil", "band")


def sector_bound(N: int, policy: str = "ceil") -> int:
    """Largest flip count kept: ``ceil(sqrt(N)/2)`` or the strict band ``4k**2 < N``."""
    if policy == "ceil":
        c = math.isqrt(N) // 2
        while 4 * c * c < N:
            c += 1
        return c
    if policy == "band":
        return band_level_count(N) - 1
    raise ValueError(f"sector policy must be one of {SECTOR_POLICIES}, not {policy!r}")


@dataclass
class SweepRow:
    N: int
    W: Fraction
    r1_max_band: Fraction
    r2: Fraction
    band_levels: int
    band_width: float


@dataclass
class FitReport:
    quantity: str
    slope: float
    intercept: float
    r_squared: float


@dataclass
class SweepResult:
    rows: list[SweepRow]
    fits: list[FitReport]
    policy: str

    def fit(self, quantity: str) -> FitReport:
        return next(f for f in self.fits if f.quantity == quantity)

    def csv(self, out: TextIO | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["N", "W", "r1_max_band", "r2", "band_levels", "band_width"])
        for r in self.rows:
            w.writerow([r.N, repr(float(r.W)), repr(float(r.r1_max_band)), repr(float(r.r2)),
                        r.band_levels, repr(r.band_width)])
        text = buf.getvalue()
        if out is not None:
            out.write(text)
        return text

    def fits_json(self) -> str:
        return json.dumps([asdict(f) for f in self.fits])


def _fit(quantity: str, Ns: Sequence[int], values: Sequence[float]) -> FitReport:
    x = np.log(np.asarray(Ns, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    pred = slope * x + intercept
    ss_res = float(((y - pred) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return FitReport(quantity, float(slope), float(intercept), r2)


def contraction_sweep(Ns: Iterable[int], policy: str = "ceil", chrone=1, erge=1) -> SweepResult:
    """Residuals of the contracted relations over cell counts, with log-log fits.

    ``r1`` is the worst ``Qi**2 + 1`` eigenvalue over the kept sectors and
    ``r2 = W = E/(N X)`` the relative weight of the ``[p, p]`` term.
    """
    Ns = list(Ns)
    if not Ns:
        raise EmptySweep("no cell counts given")
    if any(N < 4 for N in Ns):
        raise ValueError("sweep cell counts must be >= 4")
    X, E = Fraction(chrone), Fraction(erge)
    rows = []
    for N in Ns:
        K = min(sector_bound(N, policy), N // 2)
        r1 = max(PolarizedSector(N, k).residual for k in range(K + 1))
        W = E / (N * X)
        rows.append(SweepRow(N, W, r1, W, band_level_count(N), 1 / math.sqrt(N)))
    fits = []
    if len(Ns) >= 2:
        fits = [_fit("r1_max_band", Ns, [float(r.r1_max_band) for r in rows]),
                _fit("r2", Ns, [float(r.r2) for r in rows])]
    return SweepResult(rows, fits, policy)
