"""The so(3,3) Yang algebra on eight-dimensional real chiral spinors.

The spinor space is the exterior algebra over three monadics (serials 0..7
of stage 3). Its six frame generators ``g(f+-_k)``, ``k = 0, 1, 2``, give
gammas of signature (3, 3): indices 1..3 square to +1 and 4..6 to -1, so
1..4 is Minkowski (+,+,+,-) and the plane 5-6 is compact. The Yang
generators are ``dL_{ab} = (1/2) g^a g^b``; the atoms of position, momentum
and the quantized imaginary use the full products ``g^{ab} = g^a g^b``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exact, kernels
from .clifford import killing_matrix, orthogonal_structure
from .errors import NotAComplexStructure
from .exact import commutator, fmat, identity, is_zero
from .report import Report

SPINOR_DIM = 8
INDICES = tuple(range(1, 7))
SIGNATURES = {
    "3-3-compact-i": (1, 1, 1, -1, -1, -1),
    "alt": (1, 1, 1, -1, 1, -1),
}
HALF = Fraction(1, 2)


def _cell_gamma(k: int, eps: int) -> np.ndarray:
    states = np.arange(SPINOR_DIM, dtype=np.int64)
    rows, signs = kernels.frame_gamma(states, k, eps)
    m = exact.zeros(SPINOR_DIM)
    for c in range(SPINOR_DIM):
        m[rows[c], c] = Fraction(int(signs[c]))
    return m


def _prod(*ms: np.ndarray) -> np.ndarray:
    out = ms[0]
    for m in ms[1:]:
        out = out.dot(m)
    return out


@dataclass
class YangRep:
    """Gammas ``g^1..g^6`` and generators ``dL_{ab}`` (a < b) of one signature mode."""

    mode: str
    metric: tuple[int, ...]
    gammas: dict[int, np.ndarray]
    generators: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)

    def g(self, n: int) -> int:
        return self.metric[n - 1]

    def gamma(self, *upper: int) -> np.ndarray:
        """``g^{a b ...} = g^a g^b ...`` (product of upper-index gammas)."""
        return _prod(*(self.gammas[a] for a in upper)) if upper else identity(SPINOR_DIM)

    def gamma_lower(self, *lower: int) -> np.ndarray:
        """``g_{a b ...}``: indices lowered with the diagonal metric."""
        sign = 1
        for a in lower:
            sign *= self.g(a)
        return sign * self.gamma(*lower)

    def L(self, a: int, b: int) -> np.ndarray:
        """``dL^{ab}`` for any ordered pair: antisymmetric, zero on the diagonal."""
        if a == b:
            return exact.zeros(SPINOR_DIM)
        if a < b:
            return self.generators[(a, b)]
        return -self.generators[(b, a)]

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.generators)

    def to_json(self) -> str:
        """Generators as a JSON bundle keyed ``L_{ab}``, entries as rational strings."""
        bundle = {
            "mode": self.mode,
            "metric": list(self.metric),
            "generators": {f"L_{{{a}{b}}}": [[str(v) for v in row] for row in m]
                           for (a, b), m in sorted(self.generators.items())},
        }
        return json.dumps(bundle)


def build_yang_rep(signature: str = "3-3-compact-i") -> YangRep:
    """Build the cell representation for a signature mode.

    ``3-3-compact-i`` is diag(+,+,+,-,-,-). ``alt`` is diag(+,+,+,-,+,-),
    realized by putting the volume element of the first mode in slot 5.
    """
    if signature not in SIGNATURES:
        raise ValueError(f"signature must be one of {sorted(SIGNATURES)}, not {signature!r}")
    gam = {k + 1: _cell_gamma(k, 1) for k in range(3)}
    gam.update({k + 4: _cell_gamma(k, -1) for k in range(3)})
    if signature == "alt":
        gam[5] = _prod(*(gam[a] for a in (6, 5, 4, 3, 2, 1)))
    rep = YangRep(signature, SIGNATURES[signature], gam)
    for a, b in itertools.combinations(INDICES, 2):
        rep.generators[(a, b)] = HALF * gam[a].dot(gam[b])
    return rep


def clifford_check(rep: YangRep) -> Report:
    """``{g^a, g^b} = 2 g^{ab}`` for all index pairs."""
    out = Report("yang-clifford", meta={"mode": rep.mode})
    one = identity(SPINOR_DIM)
    for a, b in itertools.combinations_with_replacement(INDICES, 2):
        anti = exact.anticommutator(rep.gammas[a], rep.gammas[b])
        want = 2 * rep.g(a) * one if a == b else exact.zeros(SPINOR_DIM)
        out.check(f"{{g^{a}, g^{b}}} = {2 * rep.g(a) if a == b else 0}", f"{{g^{a}, g^{b}}}",
                  "2 g^{ab}", is_zero(anti - want), exact.max_abs(anti - want))
    return out


def structure_check(rep: YangRep) -> Report:
    """All 105 commutators of distinct generators against the orthogonal structure constants."""
    out = Report("yang-structure", meta={"mode": rep.mode, "metric": list(rep.metric)})
    g = (0,) + rep.metric
    zero = exact.zeros(SPINOR_DIM)
    for (a, b), (c, d) in itertools.combinations(rep.pairs, 2):
        lhs = commutator(rep.L(a, b), rep.L(c, d))
        rhs = zero
        for coef, x, y in orthogonal_structure(rep.L, g, a, b, c, d):
            rhs = rhs + coef * rep.L(x, y)
        out.check(f"[dL{a}{b}, dL{c}{d}]", f"[dL_{a}{b}, dL_{c}{d}]", "structure constants",
                  is_zero(lhs - rhs), exact.max_abs(lhs - rhs))
    return out


def jacobi_check(rep: YangRep, triples: int = 20, seed: int = 0) -> Report:
    rng = np.random.default_rng(seed)
    pairs = rep.pairs
    out = Report("yang-jacobi", meta={"mode": rep.mode, "seed": seed})
    for _ in range(triples):
        i, j, k = (pairs[t] for t in rng.integers(len(pairs), size=3))
        x, y, z = rep.L(*i), rep.L(*j), rep.L(*k)
        jac = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) + commutator(z, commutator(x, y))
        out.check("jacobi", f"dL{i}, dL{j}, dL{k}", "0", is_zero(jac), exact.max_abs(jac))
    return out


def killing_form(rep: YangRep) -> tuple[np.ndarray, Report]:
    """Killing form in the basis ``dL_{ab}``, a < b, with regularity and sign checks."""
    pairs = rep.pairs
    kill = killing_matrix([rep.generators[p] for p in pairs])
    d = exact.det(kill)
    eig = np.linalg.eigvalsh(np.array(kill, dtype=float))
    pos, neg = int((eig > 1e-9).sum()), int((eig < -1e-9).sum())
    out = Report("yang-killing", meta={"mode": rep.mode, "det": str(d), "signature": [pos, neg],
                                       "basis": [f"L_{{{a}{b}}}" for a, b in pairs]})
    out.check("Killing form nondegenerate", "det K", "!= 0", d != 0)
    idx = {p: i for i, p in enumerate(pairs)}
    k56 = kill[idx[(5, 6)], idx[(5, 6)]]
    k14 = kill[idx[(1, 4)], idx[(1, 4)]]
    out.meta.update({"K(dL65, dL65)": str(k56), "K(dL14, dL14)": str(k14)})
    if rep.mode == "3-3-compact-i":
        out.check("dL65 compact", "K(dL65, dL65)", "< 0", k56 < 0)
        out.check("dL14 boost", "K(dL14, dL14)", "> 0", k14 > 0)
        out.check("so(3,3) signature", f"({pos}, {neg})", "(9, 6)", (pos, neg) == (9, 6))
    return kill, out


def lorentz_closure_check(rep: YangRep) -> Report:
    """The six ``dL_{mn}`` with m, n in 1..4 close among themselves."""
    lor = [p for p in rep.pairs if p[1] <= 4]
    span = exact.column_basis(np.array([[v for v in rep.L(*p).flat] for p in lor], dtype=object).T)
    out = Report("yang-lorentz", meta={"mode": rep.mode, "generators": len(lor)})
    for p, q in itertools.combinations(lor, 2):
        c = commutator(rep.L(*p), rep.L(*q))
        vec = np.array([[v] for v in c.flat], dtype=object)
        inside = exact.rank(np.hstack([span, vec])) == span.shape[1]
        out.check(f"[dL{p[0]}{p[1]}, dL{q[0]}{q[1]}] in Lorentz span", f"[dL_{p}, dL_{q}]", "span", inside)
    return out


@dataclass
class ChiralSplit:
    top: np.ndarray
    plus_basis: np.ndarray
    minus_basis: np.ndarray
    report: Report


def chiral_split(rep: YangRep) -> ChiralSplit:
    """Split the spinors by the volume element ``g^T = g^6 g^5 g^4 g^3 g^2 g^1``."""
    top = rep.gamma(6, 5, 4, 3, 2, 1)
    one = identity(SPINOR_DIM)
    out = Report("yang-chiral", meta={"mode": rep.mode})
    out.check("(g^T)^2 = 1", "(g^T)^2", "1", is_zero(top.dot(top) - one))
    plus = (one + top) * HALF
    minus = (one - top) * HALF
    pb, mb = exact.column_basis(plus), exact.column_basis(minus)
    out.meta["eigenspace_dims"] = [pb.shape[1], mb.shape[1]]
    out.check("eigenspace dimensions 4 + 4", f"{pb.shape[1]} + {mb.shape[1]}", "4 + 4",
              (pb.shape[1], mb.shape[1]) == (4, 4))
    out.check("P+ P- projectors", "P+^2, P-^2, P+ P-", "P+, P-, 0",
              is_zero(plus.dot(plus) - plus) and is_zero(minus.dot(minus) - minus) and is_zero(plus.dot(minus)))
    for p in rep.pairs:
        out.check(f"[g^T, dL{p[0]}{p[1]}] = 0", f"[g^T, dL_{p[0]}{p[1]}]", "0", is_zero(commutator(top, rep.L(*p))))
    g4321, g65 = rep.gamma(4, 3, 2, 1), rep.gamma(6, 5)
    out.check("g^4321 = -g^65 on +1 eigenspace", "(g^4321 + g^65) P+", "0", is_zero((g4321 + g65).dot(plus)))
    out.check("g^4321 = +g^65 on -1 eigenspace", "(g^4321 - g^65) P-", "0", is_zero((g4321 - g65).dot(minus)))
    return ChiralSplit(top, pb, mb, out)


@dataclass
class OrbitalAtoms:
    chrone: Fraction
    erge: Fraction
    h: Fraction
    dx: dict[int, np.ndarray]
    dp: dict[int, np.ndarray]
    dQi: np.ndarray
    dL: dict[tuple[int, int], np.ndarray]
    report: Report

    @property
    def hbar(self) -> Fraction:
        return self.chrone * self.erge


def orbital_atoms(rep: YangRep, chrone=1, erge=1, h=1) -> OrbitalAtoms:
    """Cell atoms ``dx^m = X g^{m5}``, ``dp_m = E g_{m6}``, ``dQi = g^{65}``, ``dL_{nm} = h g_{nm}``."""
    X, E, h = Fraction(chrone), Fraction(erge), Fraction(h)
    if X <= 0 or E <= 0:
        raise ValueError("chrone and erge must be positive")
    mink = range(1, 5)
    dx = {m: X * rep.gamma(m, 5) for m in mink}
    dp = {m: E * rep.gamma_lower(m, 6) for m in mink}
    dqi = rep.gamma(6, 5)
    dl = {(n, m): h * rep.gamma_lower(n, m) for n, m in itertools.combinations(mink, 2)}
    out = Report("yang-atoms", meta={"mode": rep.mode, "chrone": str(X), "erge": str(E), "h": str(h)})
    one = identity(SPINOR_DIM)
    out.check("dQi^2 = -1", "dQi^2", "-1", is_zero(dqi.dot(dqi) + one))
    for m, n in itertools.product(mink, repeat=2):
        c = commutator(dx[m], dp[n])
        want = -2 * X * E * dqi if m == n else exact.zeros(SPINOR_DIM)
        out.check(f"[dx^{m}, dp_{n}] = {'-2 hbar dQi' if m == n else '0'}", f"[dx^{m}, dp_{n}]",
                  "-2 X E delta dQi", is_zero(c - want), exact.max_abs(c - want))
    for key, l in dl.items():
        out.check(f"[dQi, dL_{key[0]}{key[1]}] = 0", f"[dQi, dL_{key}]", "0", is_zero(commutator(dqi, l)))
    for m in mink:
        out.check(f"[dQi, dx^{m}] != 0", f"[dQi, dx^{m}]", "nonzero", not is_zero(commutator(dqi, dx[m])))
        out.check(f"[dQi, dp_{m}] != 0", f"[dQi, dp_{m}]", "nonzero", not is_zero(commutator(dqi, dp[m])))
    return OrbitalAtoms(X, E, h, dx, dp, dqi, dl, out)


def _proportion(a: np.ndarray, b: np.ndarray) -> Fraction | None:
    """``c`` with ``a = c b``, or None."""
    for x, y in zip(a.flat, b.flat):
        if y != 0:
            c = Fraction(x) / y
            return c if is_zero(a - c * b) else None
    return None


def _border_atom(atoms: OrbitalAtoms, rep: YangRep, m: int, col: int) -> np.ndarray:
    """``dx^m / X`` (col 5) or ``dp^m / E`` (col 6), momentum index raised with g."""
    if col == 5:
        return atoms.dx[m] / atoms.chrone
    return rep.g(m) * atoms.dp[m] / atoms.erge


@dataclass
class YangLayout:
    labels: list[list[str]]
    operators: list[list[np.ndarray]]
    report: Report

    def text(self) -> str:
        width = max(len(s) for row in self.labels for s in row) + 2
        head = " " * 4 + "".join(f"{j:>{width}}" for j in INDICES)
        rows = [head] + [f"{i:>3} " + "".join(f"{s:>{width}}" for s in row) for i, row in zip(INDICES, self.labels)]
        return "\n".join(rows)


def yang_matrix_layout(atoms: OrbitalAtoms, rep: YangRep) -> YangLayout:
    """The 6x6 array of generators ``dL^{ab}`` labelled by the atoms they carry.

    The Lorentz block holds ``dL^{mn}``; column 5 and 6 borders hold
    ``-dx^m/X`` and ``-dp^m/E``; rows 5 and 6 hold ``dx^m/X`` and ``dp^m/E``;
    the corner holds ``dL^{56}`` and ``dL^{65}``. The report records, for
    each border label, the factor relating it to the generator in its slot.
    """
    labels, ops = [], []
    out = Report("yang-layout", meta={"mode": rep.mode})
    factors: dict[str, str] = {}
    for a in INDICES:
        lrow, orow = [], []
        for b in INDICES:
            op = rep.L(a, b)
            if a == b:
                lab, atom = "0", None
            elif a <= 4 and b <= 4 or {a, b} == {5, 6}:
                lab, atom = f"dL^{a}{b}", op
            elif b in (5, 6):
                lab = f"-dx^{a}/X" if b == 5 else f"-dp^{a}/E"
                atom = -_border_atom(atoms, rep, a, b)
            else:
                lab = f"dx^{b}/X" if a == 5 else f"dp^{b}/E"
                atom = _border_atom(atoms, rep, b, a)
            if atom is not None and lab.lstrip("-").startswith(("dx", "dp")):
                c = _proportion(op, atom)
                factors[f"({a},{b}) {lab}"] = str(c)
                out.check(f"slot ({a},{b}) carries {lab}", f"dL^{a}{b}", f"c * {lab}", c is not None and c != 0)
            lrow.append(lab)
            orow.append(op)
        labels.append(lrow)
        ops.append(orow)
    anti = all(is_zero(ops[i][j] + ops[j][i]) for i in range(6) for j in range(6))
    out.check("layout antisymmetric", "dL^{ab}", "-dL^{ba}", anti)
    out.meta["slot_factors"] = factors
    return YangLayout(labels, ops, out)


@dataclass
class PlaneReport:
    plane: np.ndarray
    commuting: list[tuple[int, int]]
    report: Report


def invariant_planes(J: np.ndarray, Q1, rep: YangRep | None = None) -> PlaneReport:
    """The plane spanned by ``Q1`` and ``J Q1`` for a complex structure ``J``.

    Checks the plane is two-dimensional and J-invariant, and that every
    generator commuting with ``J`` maps it to another plane of the same form
    ``(v, J v)``.
    """
    J = fmat(J)
    n = J.shape[0]
    if not is_zero(J.dot(J) + identity(n)):
        raise NotAComplexStructure("J squared is not -1")
    q1 = np.array([Fraction(v) for v in Q1], dtype=object)
    if all(v == 0 for v in q1):
        raise ValueError("Q1 must be nonzero")
    q2 = J.dot(q1)
    plane = np.array([q1, q2], dtype=object).T
    out = Report("invariant-plane")
    out.check("plane is 2-dimensional", "rank(Q1, J Q1)", "2", exact.rank(plane) == 2)
    out.check("J Q2 = -Q1", "J Q2", "-Q1", all(v == 0 for v in J.dot(q2) + q1))
    rep = rep or build_yang_rep()
    commuting = [p for p in rep.pairs if is_zero(commutator(rep.L(*p), J))]
    out.meta["commuting_generators"] = [f"L_{{{a}{b}}}" for a, b in commuting]
    for p in commuting:
        a = rep.L(*p)
        v1, v2 = a.dot(q1), a.dot(q2)
        out.check(f"dL{p[0]}{p[1]} maps the plane to a J-plane", "J (A Q1)", "A Q2",
                  all(v == 0 for v in J.dot(v1) - v2))
    return PlaneReport(plane, commuting, out)
