"""Linear algebra on the recursive Grassmann algebra.

Elements are finite rational combinations of basis monomials living in a
given stage. Addition is superposition, ``wedge`` is the graded exterior
product, ``iota_linear`` is the linear unitization onto the next stage's
degree-1 sector.

The Hilbert metric is the inner product induced on an exterior algebra by
its generators: products of different degree are orthogonal, and products of
equal degree pair through the determinant of their factors' Gram matrix,
with ``<i(x), i(y)> = <x, y>`` and ``<1, 1> = 1``. Started from ``|r| = r**2``
on stage 0, this makes the classical basis orthonormal at every stage.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

from . import basis
from .basis import Monomial
from .errors import StageMismatch
from .exact import det

Rational = Fraction | int


def _clean(terms: Mapping[Monomial, Rational]) -> dict[Monomial, Fraction]:
    return {m: Fraction(c) for m, c in terms.items() if c}


class Element:
    """A finite linear combination of basis monomials of one stage.

    ``stage`` defaults to the largest rank among the monomials. Equality
    compares coefficients only, since the stages nest.
    """

    __slots__ = ("_terms", "stage")
    __hash__ = None

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None, stage: int | None = None):
        self._terms = _clean(terms or {})
        top = max((m.rank for m in self._terms), default=0)
        if stage is None:
            stage = top
        elif top > stage:
            raise StageMismatch(f"monomial of rank {top} does not fit in stage {stage}")
        self.stage = stage

    @classmethod
    def basis(cls, m: Monomial | int, coefficient: Rational = 1, stage: int | None = None) -> Element:
        if isinstance(m, int):
            m = basis.from_serial(m)
        return cls({m: coefficient}, stage)

    @classmethod
    def zero(cls, stage: int = 0) -> Element:
        return cls({}, stage)

    @classmethod
    def one(cls, stage: int = 0) -> Element:
        return cls({basis.unit(): 1}, stage)

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def lift(self, stage: int) -> Element:
        """The same vector regarded as an element of a higher stage."""
        return Element(self._terms, stage)

    def coefficient(self, m: Monomial | int) -> Fraction:
        if isinstance(m, int):
            m = basis.from_serial(m)
        return self._terms.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending serial order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: Element) -> Element:
        return add(self, other)

    def __sub__(self, other: Element) -> Element:
        return add(self, scale(-1, other))

    def __neg__(self) -> Element:
        return scale(-1, self)

    def __rmul__(self, c: Rational) -> Element:
        return scale(c, self)

    def __xor__(self, other: Element) -> Element:
        return wedge(self, other)

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        return f"Element({to_text(self)!r}, stage={self.stage})"

    def __str__(self) -> str:
        return to_text(self)


def add(a: Element, b: Element) -> Element:
    if a.stage != b.stage:
        raise StageMismatch(f"cannot add stage {a.stage} and stage {b.stage} elements")
    out = dict(a._terms)
    for m, c in b._terms.items():
        out[m] = out.get(m, 0) + c
    return Element(out, a.stage)


def scale(c: Rational, a: Element) -> Element:
    c = Fraction(c)
    return Element({m: c * v for m, v in a._terms.items()}, a.stage)


def wedge(a: Element, b: Element) -> Element:
    """Graded exterior product; stages nest, so the result lives in the larger one."""
    out: dict[Monomial, Fraction] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            s, m = basis.wedge_basis(ma, mb)
            if s:
                out[m] = out.get(m, 0) + s * ca * cb
    return Element(out, max(a.stage, b.stage))


def iota_linear(a: Element) -> Element:
    """Linear unitization: ``i(sum c_k m_k) = sum c_k i(m_k)``."""
    return Element({basis.iota_basis(m): c for m, c in a._terms.items()}, a.stage + 1)


def _grade(m: Monomial, by: str) -> int:
    if by == "degree":
        return m.degree
    if by == "rank":
        return m.rank
    raise ValueError(f"grading must be 'degree' or 'rank', not {by!r}")


def grade_project(a: Element, by: str, value: int) -> Element:
    """Homogeneous component of ``a`` of the given degree or rank."""
    return Element({m: c for m, c in a._terms.items() if _grade(m, by) == value}, a.stage)


def apply_grading(a: Element, by: str) -> Element:
    """The Deg / Rank operator: multiply each homogeneous component by its grade."""
    return Element({m: c * _grade(m, by) for m, c in a._terms.items()}, a.stage)


# -- metrics ---------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def gram_inner(a: Monomial, b: Monomial) -> Fraction:
    """Inner product of two basis monomials by recursive Gram-determinant propagation."""
    if a.degree != b.degree:
        return Fraction(0)
    if a.degree == 0:
        return Fraction(1)
    g = np.empty((a.degree, a.degree), dtype=object)
    for i, fa in enumerate(a.factors):
        for j, fb in enumerate(b.factors):
            g[i, j] = gram_inner(fa.body, fb.body)
    return det(g)


def hilbert_inner(a: Element, b: Element) -> Fraction:
    """Hilbert inner product. The classical basis is orthonormal, so this pairs shared monomials."""
    if a.stage != b.stage:
        raise StageMismatch(f"stage {a.stage} vs stage {b.stage}")
    if len(a) > len(b):
        a, b = b, a
    return sum((c * b._terms[m] for m, c in a._terms.items() if m in b._terms), Fraction(0))


def hilbert_norm(a: Element) -> Fraction:
    return hilbert_inner(a, a)


class DualElement:
    """A linear functional on a stage, stored by its values on the classical basis."""

    __slots__ = ("_coterms", "stage")
    __hash__ = None

    def __init__(self, coterms: Mapping[Monomial, Rational] | None = None, stage: int | None = None):
        self._coterms = _clean(coterms or {})
        top = max((m.rank for m in self._coterms), default=0)
        if stage is None:
            stage = top
        elif top > stage:
            raise StageMismatch(f"monomial of rank {top} does not fit in stage {stage}")
        self.stage = stage

    @classmethod
    def basis(cls, m: Monomial | int, coefficient: Rational = 1, stage: int | None = None) -> DualElement:
        if isinstance(m, int):
            m = basis.from_serial(m)
        return cls({m: coefficient}, stage)

    @property
    def coterms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._coterms)

    def __call__(self, q: Element) -> Fraction:
        """Valuation ``self o q``."""
        if q.stage != self.stage:
            raise StageMismatch(f"dual of stage {self.stage} applied to stage {q.stage}")
        return sum((c * q._terms[m] for m, c in self._coterms.items() if m in q._terms), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DualElement):
            return NotImplemented
        return self._coterms == other._coterms

    def __neg__(self) -> DualElement:
        return DualElement({m: -c for m, c in self._coterms.items()}, self.stage)

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*^{basis.render(m, 'serial')}" for m, c in self._coterms.items()) or "0"
        return f"DualElement({body}, stage={self.stage})"


def hilbert_dual(a: Element) -> DualElement:
    """The Hilbert isomorphism from a stage to its dual."""
    return DualElement(dict(a._terms), a.stage)


@dataclass(frozen=True)
class DuplexVector:
    """A ket/bra pair ``Q (+) Q'`` in the duplex space of one stage."""

    ket: Element
    bra: DualElement

    def __post_init__(self):
        if self.ket.stage != self.bra.stage:
            raise StageMismatch(f"ket stage {self.ket.stage} vs bra stage {self.bra.stage}")

    @property
    def stage(self) -> int:
        return self.ket.stage

    @classmethod
    def of(cls, ket: Element | None = None, bra: DualElement | None = None, stage: int | None = None) -> DuplexVector:
        if stage is None:
            stage = max(x.stage for x in (ket, bra) if x is not None)
        ket = Element.zero(stage) if ket is None else ket.lift(stage)
        bra = DualElement({}, stage) if bra is None else DualElement(bra.coterms, stage)
        return cls(ket, bra)


def duplex_norm(v: DuplexVector) -> Fraction:
    """The neutral duplex norm: ``||Q (+) Q'|| = Q' o Q``."""
    return v.bra(v.ket)


def duplex_inner(v: DuplexVector, w: DuplexVector) -> Fraction:
    """Symmetric polarization ``(v'(w) + w'(v)) / 2`` of the duplex norm."""
    if v.stage != w.stage:
        raise StageMismatch(f"stage {v.stage} vs stage {w.stage}")
    return (v.bra(w.ket) + w.bra(v.ket)) / 2


def duplex_basis_frame(r: int) -> tuple[list[DuplexVector], list[int]]:
    """Orthonormal frame ``e_q (+) +-e^q`` of the full stage-``r`` duplex space."""
    vectors, signs = [], []
    for s in (1, -1):
        for m in basis.enumerate_stage(r):
            vectors.append(DuplexVector(Element({m: 1}, r), DualElement({m: s}, r)))
            signs.append(s)
    return vectors, signs


# -- serialization ---------------------------------------------------------

def _name(m: Monomial) -> str:
    try:
        return basis.render(m, "serial")
    except Exception:
        return basis.render(m, "expr")


def to_text(a: Element) -> str:
    """Stable text form in the expression grammar, highest serial first."""
    if a.is_zero():
        return "0"
    out = ""
    for i, (m, c) in enumerate(a.sorted_terms()):
        mag = abs(c)
        if not m.degree:
            body = str(mag)
        else:
            body = _name(m) if mag == 1 else f"{mag} {_name(m)}"
        if i == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def to_json(a: Element) -> str:
    """JSON list of ``[serial-or-expression, numerator, denominator]`` triples."""
    rows = []
    for m, c in a.sorted_terms():
        key = _name(m)
        rows.append([key, c.numerator, c.denominator])
    return json.dumps({"stage": a.stage, "terms": rows})


def from_json(text: str) -> Element:
    data = json.loads(text)
    terms: dict[Monomial, Fraction] = {}
    for key, num, den in data["terms"]:
        for m, c in basis.parse(key).terms.items():
            terms[m] = terms.get(m, 0) + c * Fraction(num, den)
    return Element(terms, data.get("stage"))


def element_from_vector(vec: Iterable, stage: int) -> Element:
    """Element whose coefficient on ``e_q`` is ``vec[q]``."""
    return Element({basis.from_serial(q): c for q, c in enumerate(vec) if c}, stage)


def element_to_vector(a: Element, dim: int | None = None) -> list[Fraction]:
    dim = basis.hyperexp(a.stage) if dim is None else dim
    out = [Fraction(0)] * dim
    for m, c in a._terms.items():
        out[basis.serial(m)] = c
    return out
