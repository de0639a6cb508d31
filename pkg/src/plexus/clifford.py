"""Dirac creation/annihilation operators on a stage and the checks built on them.

The operators of stage ``r`` act on the ``Exp r`` dimensional span of the
stage's classical basis. They are generated by one creator ``g_v`` (left
wedge by ``v``) and one annihilator ``g^v`` (left derivation by ``v``) per
monadic ``v = e_(2**k)`` of the stage, ``k < Exp(r-1)``.

Operators are kept symbolically as rational combinations of normal-ordered
words: creators first in descending index, then annihilators in ascending
index. On the bitmask encoding of basis states every word is a partial
signed permutation, which is what the kernels evaluate.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Mapping, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from . import basis, kernels
from .basis import Monomial
from .errors import NonCompactPlane, RankTooLarge, StageMismatch
from .exact import det
from .grassmann import DualElement, DuplexVector, Element
from .report import Report
from .sparse import SignedPermutation, SignedSparseMatrix

CREATOR, ANNIHILATOR = 0, 1
MAX_STAGE = 4

Letter = tuple[int, int]
Word = tuple[Letter, ...]


def _check_stage(stage: int) -> None:
    if stage < 1:
        raise ValueError(f"stage {stage} has no Clifford generators")
    if stage > MAX_STAGE:
        raise RankTooLarge(f"stage {stage} operators act on Exp {stage} dimensions; at most stage {MAX_STAGE}")


def generator_count(stage: int) -> int:
    """Number of monadics of the stage, i.e. of creator (or annihilator) generators."""
    return basis.hyperexp(stage - 1)


@dataclass(frozen=True)
class CliffordGenerator:
    """A creator or annihilator labelled by a monadic of the stage."""

    index: Monomial
    kind: str

    def __post_init__(self):
        if self.kind not in ("creator", "annihilator"):
            raise ValueError(f"kind must be 'creator' or 'annihilator', not {self.kind!r}")
        if self.index.degree != 1:
            raise ValueError("generator labels must be monadics")

    @property
    def bit(self) -> int:
        return basis.serial(self.index.factors[0].body)

    @property
    def letter(self) -> Letter:
        return (CREATOR if self.kind == "creator" else ANNIHILATOR, self.bit)


def _letter_key(letter: Letter) -> tuple[int, int]:
    kind, k = letter
    return (kind, -k) if kind == CREATOR else (kind, k)


def _disorders(word: Word) -> list[int]:
    return [
        i for i in range(len(word) - 1)
        if word[i] == word[i + 1] or _letter_key(word[i]) > _letter_key(word[i + 1])
    ]


def normal_order(words: Mapping[Word, Fraction], rng=None) -> dict[Word, Fraction]:
    """Rewrite a combination of arbitrary words into normal order.

    Rules: a repeated adjacent generator gives 0, generators of one kind
    anticommute, and ``g^u g_v = delta_uv - g_v g^u``. The leftmost
    disorder is rewritten first; pass ``rng`` to rewrite a random one.
    """
    out: dict[Word, Fraction] = {}
    stack = [(w, Fraction(c)) for w, c in words.items() if c]
    while stack:
        w, c = stack.pop()
        bad = _disorders(w)
        if not bad:
            out[w] = out.get(w, 0) + c
            continue
        i = bad[0] if rng is None else bad[int(rng.integers(len(bad)))]
        a, b = w[i], w[i + 1]
        if a == b:
            continue
        head, tail = w[:i], w[i + 2:]
        stack.append((head + (b, a) + tail, -c))
        if a[0] == ANNIHILATOR and b[0] == CREATOR and a[1] == b[1]:
            stack.append((head + tail, c))
    return {w: c for w, c in out.items() if c}


class CliffordOperator:
    """Rational combination of normal-ordered generator words acting on one stage."""

    __slots__ = ("stage", "_words")
    __hash__ = None

    def __init__(self, stage: int, words: Mapping[Word, Fraction] | None = None, *, ordered: bool = False):
        self.stage = stage
        words = words or {}
        if ordered:
            self._words = {w: Fraction(c) for w, c in words.items() if c}
        else:
            self._words = normal_order(words)
        limit = basis.hyperexp(stage - 1) if stage >= 1 else 0
        for w in self._words:
            for _, k in w:
                if not 0 <= k < limit:
                    raise StageMismatch(f"generator index {k} does not exist at stage {stage}")

    @classmethod
    def identity(cls, stage: int) -> CliffordOperator:
        return cls(stage, {(): 1}, ordered=True)

    @classmethod
    def zero(cls, stage: int) -> CliffordOperator:
        return cls(stage, {}, ordered=True)

    @property
    def words(self) -> Mapping[Word, Fraction]:
        return MappingProxyType(self._words)

    def is_zero(self) -> bool:
        return not self._words

    def _same_stage(self, other: CliffordOperator) -> None:
        if self.stage != other.stage:
            raise StageMismatch(f"stage {self.stage} vs stage {other.stage}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordOperator):
            return NotImplemented
        return self.stage == other.stage and self._words == other._words

    def __add__(self, other: CliffordOperator) -> CliffordOperator:
        self._same_stage(other)
        out = dict(self._words)
        for w, c in other._words.items():
            out[w] = out.get(w, 0) + c
        return CliffordOperator(self.stage, out, ordered=True)

    def __neg__(self) -> CliffordOperator:
        return CliffordOperator(self.stage, {w: -c for w, c in self._words.items()}, ordered=True)

    def __sub__(self, other: CliffordOperator) -> CliffordOperator:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CliffordOperator):
            self._same_stage(other)
            prod: dict[Word, Fraction] = {}
            for wa, ca in self._words.items():
                for wb, cb in other._words.items():
                    prod[wa + wb] = prod.get(wa + wb, 0) + ca * cb
            return CliffordOperator(self.stage, prod)
        c = Fraction(other)
        return CliffordOperator(self.stage, {w: c * v for w, v in self._words.items()}, ordered=True)

    def __rmul__(self, c) -> CliffordOperator:
        c = Fraction(c)
        return CliffordOperator(self.stage, {w: c * v for w, v in self._words.items()}, ordered=True)

    def __call__(self, a: Element) -> Element:
        return apply(self, a)

    def __repr__(self) -> str:
        return f"CliffordOperator(stage={self.stage}, {self})"

    def __str__(self) -> str:
        if not self._words:
            return "0"
        parts = []
        for w in sorted(self._words, key=lambda w: (len(w), [_letter_key(x) for x in w])):
            c = self._words[w]
            name = " ".join(("g_" if kind == CREATOR else "g^") + f"e{1 << k}" for kind, k in w) or "1"
            parts.append(f"{c} {name}" if c != 1 else name)
        return " + ".join(parts)


def _label_bit(label: Monomial | int, stage: int) -> int:
    if isinstance(label, Monomial):
        if label.degree != 1:
            raise ValueError("generator labels must be monadics")
        k = basis.serial(label.factors[0].body)
    else:
        k = label
    if not 0 <= k < basis.hyperexp(stage - 1):
        raise StageMismatch(f"monadic index {k} is not a generator of stage {stage}")
    return k


def creator(stage: int, label: Monomial | int) -> CliffordOperator:
    """``g_v``: left wedge by the monadic ``v`` (or by ``e_(2**k)`` given the bit ``k``)."""
    return CliffordOperator(stage, {((CREATOR, _label_bit(label, stage)),): 1}, ordered=True)


def annihilator(stage: int, label: Monomial | int) -> CliffordOperator:
    """``g^u``: left derivation by the monadic ``u``."""
    return CliffordOperator(stage, {((ANNIHILATOR, _label_bit(label, stage)),): 1}, ordered=True)


def generator(stage: int, g: CliffordGenerator) -> CliffordOperator:
    return creator(stage, g.index) if g.kind == "creator" else annihilator(stage, g.index)


def all_generators(stage: int) -> list[CliffordGenerator]:
    ms = basis.monadics_of_stage(stage)
    return [CliffordGenerator(m, "creator") for m in ms] + [CliffordGenerator(m, "annihilator") for m in ms]


def anticommutator(a: CliffordOperator, b: CliffordOperator) -> CliffordOperator:
    return a * b + b * a


def commutator(a: CliffordOperator, b: CliffordOperator) -> CliffordOperator:
    return a * b - b * a


# -- action ----------------------------------------------------------------

def _word_arrays(w: Word) -> tuple[np.ndarray, np.ndarray]:
    return (np.array([x[0] for x in w], dtype=np.int8), np.array([x[1] for x in w], dtype=np.int64))


def act_on_states(op: CliffordOperator, states: np.ndarray) -> list[tuple[np.ndarray, np.ndarray, Fraction]]:
    """Per word: image states, signs and word coefficient for a batch of basis states."""
    out = []
    for w, c in op.words.items():
        kinds, ks = _word_arrays(w)
        rows, signs = kernels.apply_word(states, kinds, ks)
        out.append((rows, signs, c))
    return out


def apply(op: CliffordOperator, a: Element) -> Element:
    """Action of an operator on an element of the same stage."""
    if op.stage != a.stage:
        raise StageMismatch(f"operator of stage {op.stage} applied to stage {a.stage}")
    if a.is_zero() or op.is_zero():
        return Element.zero(a.stage)
    monos = list(a.terms.items())
    states = np.array([basis.serial(m) for m, _ in monos], dtype=np.int64)
    coeffs = [c for _, c in monos]
    out: dict[int, Fraction] = {}
    for rows, signs, c in act_on_states(op, states):
        for i in np.flatnonzero(signs):
            r = int(rows[i])
            out[r] = out.get(r, 0) + int(signs[i]) * c * coeffs[i]
    return Element({basis.from_serial(q): v for q, v in out.items() if v}, a.stage)


def matrix_of(op: CliffordOperator) -> SignedSparseMatrix:
    """Matrix of ``op`` in the classical basis of its stage."""
    _check_stage(op.stage)
    dim = basis.hyperexp(op.stage)
    m = SignedSparseMatrix(dim)
    states = np.arange(dim, dtype=np.int64)
    for rows, signs, c in act_on_states(op, states):
        for col in np.flatnonzero(signs):
            m.add_entry(int(rows[col]), int(col), int(signs[col]) * c)
    return m


def int_matrix(op: CliffordOperator, states: np.ndarray | None = None) -> tuple[sp.csc_matrix, int]:
    """Integer sparse matrix ``D * op`` restricted to ``states`` columns, with the scale ``D``."""
    _check_stage(op.stage)
    dim = basis.hyperexp(op.stage)
    if states is None:
        states = np.arange(dim, dtype=np.int64)
    scale = math.lcm(*(c.denominator for c in op.words.values())) if op.words else 1
    rows_l, cols_l, vals_l = [], [], []
    cols = np.arange(states.size)
    for rows, signs, c in act_on_states(op, states):
        alive = signs != 0
        rows_l.append(rows[alive])
        cols_l.append(cols[alive])
        vals_l.append(signs[alive].astype(np.int64) * int(c * scale))
    if rows_l:
        data = (np.concatenate(vals_l), (np.concatenate(rows_l), np.concatenate(cols_l)))
    else:
        data = (np.zeros(0, dtype=np.int64), (np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)))
    mat = sp.csc_matrix(data, shape=(dim, states.size), dtype=np.int64)
    mat.sum_duplicates()
    mat.eliminate_zeros()
    return mat, scale


def dense(op: CliffordOperator) -> np.ndarray:
    """Exact dense matrix (Fractions) of an operator; stages up to 3."""
    if op.stage > 3:
        raise RankTooLarge("dense matrices are limited to stage 3 (16 dimensions)")
    return matrix_of(op).dense()


def float_matrix(op: CliffordOperator) -> np.ndarray:
    if op.stage > 3:
        raise RankTooLarge("dense matrices are limited to stage 3 (16 dimensions)")
    return matrix_of(op).to_scipy().toarray()


# -- frames and generators from duplex vectors -----------------------------

def frame_vector(stage: int, a: int) -> DuplexVector:
    """Frame vector ``a`` of the stage's monadic duplex space.

    With ``n`` monadics, ``a < n`` gives ``e_v (+) e^v`` (square +1) and
    ``a >= n`` gives ``e_v (+) -e^v`` (square -1), ``v = e_(2**(a mod n))``.
    """
    n = generator_count(stage)
    if not 0 <= a < 2 * n:
        raise IndexError(f"frame index {a} out of range for stage {stage}")
    m = basis.from_serial(1 << (a % n))
    eps = 1 if a < n else -1
    return DuplexVector(Element({m: 1}, stage), DualElement({m: eps}, stage))


def frame_signs(stage: int) -> list[int]:
    n = generator_count(stage)
    return [1] * n + [-1] * n


def frame_permutation(stage: int, a: int) -> SignedPermutation:
    """The frame generator ``g(f_a)`` as a signed permutation of the stage's basis."""
    _check_stage(stage)
    n = generator_count(stage)
    eps = 1 if a < n else -1
    states = np.arange(basis.hyperexp(stage), dtype=np.int64)
    return SignedPermutation(*kernels.frame_gamma(states, a % n, eps))


def generator_from_duplex(f: DuplexVector) -> CliffordOperator:
    """``v (+) v'  ->  g_v + g^(v')``, linear in both parts."""
    words: dict[Word, Fraction] = {}
    for kind, terms in ((CREATOR, f.ket.terms), (ANNIHILATOR, f.bra.coterms)):
        for m, c in terms.items():
            if m.degree != 1:
                raise ValueError(f"{basis.render(m)} is not a monadic; only the monadic duplex space acts")
            words[((kind, basis.serial(m.factors[0].body)),)] = c
    return CliffordOperator(f.stage, words, ordered=True)


def spin_generator(w1: DuplexVector, w2: DuplexVector) -> CliffordOperator:
    """Semi-commutator ``(1/2)[g(w1), g(w2)]``."""
    a, b = generator_from_duplex(w1), generator_from_duplex(w2)
    return Fraction(1, 2) * commutator(a, b)


# -- checks ----------------------------------------------------------------

def _same_columns(lhs: sp.spmatrix, rhs: sp.spmatrix) -> tuple[bool, float]:
    diff = (lhs - rhs).tocsc()
    diff.eliminate_zeros()
    dev = float(abs(diff).max()) if diff.nnz else 0.0
    return diff.nnz == 0, dev


def car_check(stage: int, seed: int = 0, samples: int = 1000) -> Report:
    """All pairwise anticommutators of the stage's generators.

    Each pair is checked symbolically by normal ordering and by its action
    on basis states: every state for stages up to 3, ``samples`` random
    states (fixed ``seed``) at stage 4.
    """
    _check_stage(stage)
    dim = basis.hyperexp(stage)
    if stage <= 3:
        states = np.arange(dim, dtype=np.int64)
    else:
        rng = np.random.default_rng(seed)
        states = np.sort(rng.choice(dim, size=min(samples, dim), replace=False)).astype(np.int64)
    n = generator_count(stage)
    letters = [(CREATOR, k) for k in range(n)] + [(ANNIHILATOR, k) for k in range(n)]
    rep = Report("car", meta={
        "stage": stage, "generators": len(letters), "states_checked": int(states.size),
        "exhaustive": stage <= 3, "seed": seed, "backend": kernels.BACKEND,
    })
    ident = sp.csc_matrix(
        (np.ones(states.size, dtype=np.int64), (states, np.arange(states.size))), shape=(dim, states.size)
    )
    zero = sp.csc_matrix((dim, states.size), dtype=np.int64)
    for a, b in itertools.combinations_with_replacement(letters, 2):
        delta = int(a[1] == b[1] and a[0] != b[0])
        name = lambda x: ("g_" if x[0] == CREATOR else "g^") + f"e{1 << x[1]}"
        expected = {(): Fraction(1)} if delta else {}
        symbolic = normal_order({(a, b): 1, (b, a): 1})
        ab, _ = int_matrix(CliffordOperator(stage, {(a, b): 1, (b, a): 1}, ordered=True), states)
        ok_m, dev = _same_columns(ab, ident if delta else zero)
        rep.check(f"{{{name(a)}, {name(b)}}} = {delta}", f"{{{name(a)}, {name(b)}}}", str(delta),
                  symbolic == expected and ok_m, dev)
    return rep


def _frame_products(stage: int) -> tuple[list[SignedPermutation], list[int]]:
    n = generator_count(stage)
    return [frame_permutation(stage, a) for a in range(2 * n)], frame_signs(stage)


def orthogonal_structure(L: Callable[[int, int], object], g: Sequence[int], n1: int, n: int, m1: int, m: int):
    """Right side of ``[L_{n'n}, L_{m'm}]`` for the orthogonal algebra of a diagonal metric ``g``."""
    terms = []
    for coef, x, y in ((g[n] if n == m1 else 0, n1, m), (-(g[n1]) if n1 == m1 else 0, n, m),
                       (g[n1] if n1 == m else 0, n, m1), (-(g[n]) if n == m else 0, n1, m1)):
        if coef:
            terms.append((coef, x, y))
    return terms


def _combine(terms, L, zero):
    out = zero
    for coef, x, y in terms:
        out = out + coef * L(x, y)
    return out


def so_closure_check(stage: int, seed: int = 0, samples: int = 100, jacobi_triples: int = 50) -> Report:
    """Closure of the grade-2 frame operators into ``so(n, n)``.

    With ``L_ab = (1/2) g(f_a) g(f_b)`` this checks
    ``[L_{n'n}, L_{m'm}] = g_{nm'} L_{n'm} - g_{n'm'} L_{nm} + g_{n'm} L_{nm'} - g_{nm} L_{n'm'}``
    for every pair of planes, the Jacobi identity on random triples, and
    that the Killing form is nondegenerate. Stage 4 checks ``samples``
    random pairs of planes and skips the Killing form.
    """
    _check_stage(stage)
    n = generator_count(stage)
    planes = list(itertools.combinations(range(2 * n), 2))
    rng = np.random.default_rng(seed)
    rep = Report("closure", meta={"stage": stage, "algebra": f"so({n},{n})", "dimension": len(planes),
                                  "seed": seed, "backend": kernels.BACKEND})
    if stage == 4:
        return _closure_sampled(stage, planes, rng, samples, rep)
    perms, g = _frame_products(stage)
    gam = [p.dense() for p in perms]
    # integer matrices of 2 L_ab = g_a g_b
    cache: dict[tuple[int, int], np.ndarray] = {}

    def G(x: int, y: int) -> np.ndarray:
        if x == y:
            return np.zeros_like(gam[0])
        if (x, y) not in cache:
            cache[(x, y)] = gam[x] @ gam[y]
        return cache[(x, y)]

    zero = np.zeros_like(gam[0])
    for (a, b), (c, d) in itertools.combinations_with_replacement(planes, 2):
        lhs = G(a, b) @ G(c, d) - G(c, d) @ G(a, b)
        rhs = 2 * _combine(orthogonal_structure(G, g, a, b, c, d), G, zero)
        dev = float(np.abs(lhs - rhs).max())
        rep.check(f"[L{a}{b}, L{c}{d}]", f"[L_{a}{b}, L_{c}{d}]", "structure constants", dev == 0, dev)
    basis_mats = [G(a, b) for a, b in planes]
    for _ in range(jacobi_triples):
        i, j, k = rng.integers(len(planes), size=3)
        x, y, z = basis_mats[i], basis_mats[j], basis_mats[k]
        br = lambda u, v: u @ v - v @ u
        jac = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
        rep.check("jacobi", f"planes {planes[i]}, {planes[j]}, {planes[k]}", "0", not jac.any(),
                  float(np.abs(jac).max()))
    kill = killing_matrix(basis_mats)
    d = det(kill)
    eig = np.linalg.eigvalsh(np.array(kill, dtype=float))
    pos, neg = int((eig > 1e-9).sum()), int((eig < -1e-9).sum())
    rep.meta.update({"killing_det": str(d), "killing_signature": [pos, neg]})
    rep.check("killing form nondegenerate", "det K", "!= 0", d != 0, 0.0)
    return rep


def _integerize(mats: Sequence[np.ndarray]) -> tuple[np.ndarray, int]:
    """Stack matrices as int64 after clearing a common denominator; returns (stack, scale)."""
    if all(m.dtype != object for m in mats):
        return np.array(mats, dtype=np.int64), 1
    scale = math.lcm(*(Fraction(v).denominator for m in mats for v in m.flat))
    return np.array([[[int(Fraction(v) * scale) for v in row] for row in m] for m in mats], dtype=np.int64), scale


def killing_matrix(basis_mats: Sequence[np.ndarray]) -> np.ndarray:
    """Exact Killing form ``tr(ad_a ad_b)`` of a Lie algebra spanned by trace-orthogonal matrices.

    Coordinates are recovered through the trace pairing, and each recovered
    expansion is verified, so a basis that does not close raises ValueError.
    """
    stack, scale = _integerize(basis_mats)
    k = len(stack)
    gram = np.einsum("iab,jba->ij", stack, stack)
    if np.count_nonzero(gram - np.diag(np.diagonal(gram))) or not np.all(np.diagonal(gram)):
        raise ValueError("basis is not trace-orthogonal with nonzero norms")
    norms = [int(v) for v in np.diagonal(gram)]
    ad = np.full((k, k, k), Fraction(0), dtype=object)
    for i in range(k):
        for j in range(i + 1, k):
            comm = stack[i] @ stack[j] - stack[j] @ stack[i]
            traces = np.einsum("ab,nba->n", comm, stack)
            cs = [Fraction(int(t), nm) for t, nm in zip(traces, norms)]
            den = math.lcm(*(c.denominator for c in cs))
            ints = np.array([int(c * den) for c in cs], dtype=np.int64)
            if not np.array_equal(np.tensordot(ints, stack, axes=1), den * comm):
                raise ValueError("commutator leaves the span: algebra does not close")
            ad[i, :, j] = cs
            ad[j, :, i] = [-c for c in cs]
    den = math.lcm(*(v.denominator for v in ad.flat))
    adi = np.array([[[int(v * den) for v in row] for row in m] for m in ad], dtype=np.int64)
    kint = np.einsum("iab,jba->ij", adi, adi)
    # basis scaled by s has ad scaled by s, so the form picks up s**2
    out = np.empty((k, k), dtype=object)
    for i in range(k):
        for j in range(k):
            out[i, j] = Fraction(int(kint[i, j]), den * den)
    return out


def _closure_sampled(stage, planes, rng, samples, rep) -> Report:
    perms, g = _frame_products(stage)
    dim = perms[0].dim
    zero = sp.csc_matrix((dim, dim), dtype=np.int64)
    cache: dict[tuple[int, int], sp.csc_matrix] = {}

    def G(x: int, y: int):
        if x == y:
            return zero
        if (x, y) not in cache:
            cache[(x, y)] = (perms[x] @ perms[y]).to_scipy()
        return cache[(x, y)]

    for _ in range(samples):
        (a, b), (c, d) = (planes[i] for i in rng.integers(len(planes), size=2))
        lhs = G(a, b) @ G(c, d) - G(c, d) @ G(a, b)
        rhs = 2 * _combine(orthogonal_structure(G, g, a, b, c, d), G, zero)
        ok, dev = _same_columns(lhs, rhs)
        rep.check(f"[L{a}{b}, L{c}{d}]", f"[L_{a}{b}, L_{c}{d}]", "structure constants", ok, dev)
        cache.clear()
    rep.meta["sampled_pairs"] = samples
    return rep


def rotation_matrix(w1: DuplexVector, w2: DuplexVector, theta: float) -> np.ndarray:
    """``exp(theta * g_{w1 w2})`` in binary64 (stages up to 3)."""
    return scipy.linalg.expm(theta * float_matrix(spin_generator(w1, w2)))


def full_rotation_check(w1: DuplexVector, w2: DuplexVector, tolerance: float = 1e-12) -> Report:
    """A rotation through ``2 pi`` acts as ``-1`` on spinors: ``exp(pi g_{w1 w2}) = -1``."""
    gen = spin_generator(w1, w2)
    sq = gen * gen
    one = CliffordOperator.identity(gen.stage)
    if sq == one:
        raise NonCompactPlane("the spin generator squares to +1; the plane is not compact")
    if sq != -one:
        raise ValueError("w1, w2 are not an orthonormal pair")
    m = float_matrix(gen)
    eye = np.eye(m.shape[0])
    half = scipy.linalg.expm(math.pi * m)
    full = scipy.linalg.expm(2 * math.pi * m)
    d1 = float(np.abs(half + eye).max())
    d2 = float(np.abs(full - eye).max())
    rep = Report("rotation", meta={"stage": gen.stage, "tolerance": tolerance})
    rep.check("exp(pi G) = -1", "exp(pi G)", "-1", d1 < tolerance, d1)
    rep.check("exp(2 pi G) = +1", "exp(2 pi G)", "+1", d2 < tolerance, d2)
    return rep


def compact_planes(stage: int) -> list[tuple[int, int]]:
    """Frame index pairs whose spin generator squares to -1 (equal frame signs)."""
    g = frame_signs(stage)
    return [(a, b) for a, b in itertools.combinations(range(len(g)), 2) if g[a] == g[b]]
