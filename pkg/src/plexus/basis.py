"""Classical basis of the recursive Grassmann algebra.

A basis monomial is a product of monadics, and a monadic is the unitization
``i(b)`` of another basis monomial ``b``. Factors are kept in strictly
decreasing serial order, so every monomial has one canonical form. Serial
numbers are the binary reading of that factor set: ``serial(i(b)) = 2**serial(b)``
and a product's serial is the sum of its factors' serials.

Every monadic is odd under exchange, so reordering factors costs the sign of
the permutation.
"""
from __future__ import annotations

from functools import cmp_to_key, lru_cache
from typing import TYPE_CHECKING, Iterable, Iterator

from .errors import BudgetExceeded, ParseError, RankTooLarge

if TYPE_CHECKING:
    from .grassmann import Element

DEFAULT_BIT_BUDGET = 2 ** 20
MAX_ENUMERABLE_RANK = 4

_bit_budget = DEFAULT_BIT_BUDGET


def set_bit_budget(bits: int) -> None:
    """Set the process-wide serial bit budget (used when no budget is passed)."""
    global _bit_budget
    if bits < 1:
        raise ValueError("bit budget must be positive")
    _bit_budget = bits


def get_bit_budget() -> int:
    return _bit_budget


class Monomial:
    """Canonical classical basis element: an ordered product of monadics.

    Instances are immutable; build them with :func:`unit`, :func:`iota_basis`,
    :func:`wedge_basis` or :func:`from_serial` rather than the constructor.
    """

    __slots__ = ("factors", "rank", "degree", "_hash", "_serial")

    def __init__(self, factors: tuple[Monadic, ...] = ()):
        self.factors = factors
        self.degree = len(factors)
        self.rank = 0 if not factors else 1 + max(f.body.rank for f in factors)
        self._hash = hash(factors)
        self._serial = None

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._hash == other._hash and self.factors == other.factors

    def __lt__(self, other: Monomial) -> bool:
        return compare(self, other) < 0

    def __le__(self, other: Monomial) -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: Monomial) -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: Monomial) -> bool:
        return compare(self, other) >= 0

    def __repr__(self) -> str:
        try:
            return f"e{int_text(serial(self))}"
        except BudgetExceeded:
            return f"Monomial({render(self)!r})"

    def __str__(self) -> str:
        return render(self, "expr")

    @property
    def is_monadic(self) -> bool:
        return self.degree == 1


class Monadic:
    """A unitized monomial ``i(body)``; always degree 1 and odd."""

    __slots__ = ("body", "_hash")

    def __init__(self, body: Monomial):
        self.body = body
        self._hash = hash((Monadic, body))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Monadic):
            return NotImplemented
        return self.body == other.body

    def __repr__(self) -> str:
        return f"Monadic({self.body!r})"

    @property
    def rank(self) -> int:
        return self.body.rank + 1


_UNIT = Monomial(())


def unit() -> Monomial:
    """The empty product ``1``: serial 0, rank 0, degree 0, parity +1."""
    return _UNIT


def compare(a: Monomial, b: Monomial) -> int:
    """Serial order without materializing serials.

    Returns -1, 0 or 1. Factors are sorted high to low, so this compares two
    binary numbers starting from their highest set bit, recursing into the
    bodies to compare bit positions.
    """
    if a is b:
        return 0
    for fa, fb in zip(a.factors, b.factors):
        if fa is fb:
            continue
        c = compare(fa.body, fb.body)
        if c:
            return c
    return (a.degree > b.degree) - (a.degree < b.degree)


def _factor_cmp(x: Monadic, y: Monadic) -> int:
    # descending
    return compare(y.body, x.body)


_factor_key = cmp_to_key(_factor_cmp)


def canonicalize(factors: Iterable[Monadic]) -> tuple[int, Monomial]:
    """Sort factors into canonical order and return ``(sign, monomial)``.

    The sign is the parity of the sorting permutation; it is 0 (with the unit
    monomial) when a factor repeats.
    """
    fs = list(factors)
    inversions = 0
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            c = compare(fs[i].body, fs[j].body)
            if c == 0:
                return 0, _UNIT
            if c < 0:
                inversions += 1
    fs.sort(key=_factor_key)
    return (-1 if inversions & 1 else 1), Monomial(tuple(fs))


def iota_basis(m: Monomial) -> Monomial:
    """Unitize ``m`` into the degree-1 monomial ``i(m)``."""
    return Monomial((Monadic(m),))


def wedge_basis(a: Monomial, b: Monomial) -> tuple[int, Monomial]:
    """Exterior product of two basis monomials, as ``(sign, monomial)``."""
    if not a.factors:
        return 1, b
    if not b.factors:
        return 1, a
    # merge two already-sorted sequences, counting crossings of odd factors
    fa, fb = a.factors, b.factors
    out = []
    i = j = 0
    crossings = 0
    while i < len(fa) and j < len(fb):
        c = compare(fa[i].body, fb[j].body)
        if c == 0:
            return 0, _UNIT
        if c > 0:
            out.append(fa[i])
            i += 1
        else:
            out.append(fb[j])
            crossings += len(fa) - i
            j += 1
    out.extend(fa[i:])
    out.extend(fb[j:])
    return (-1 if crossings & 1 else 1), Monomial(tuple(out))


def rank(m: Monomial) -> int:
    return m.rank


def degree(m: Monomial) -> int:
    return m.degree


def parity(m: Monomial) -> int:
    """Exchange parity: every monadic is odd, so this is ``(-1)**degree``."""
    return -1 if m.degree & 1 else 1


def int_text(q: int) -> str:
    """Decimal text, or ``2^k + ...`` for integers too long to print in decimal."""
    if q.bit_length() <= 4096:
        return str(q)
    top = q.bit_length() - 1
    rest = q - (1 << top)
    return f"2^{int_text(top)}" + (f" + {int_text(rest)}" if rest else "")


def serial(m: Monomial, bit_budget: int | None = None) -> int:
    """Serial number of ``m`` as an arbitrary-precision integer.

    Raises :class:`BudgetExceeded` if some factor ``i(b)`` would need more than
    ``bit_budget`` bits, i.e. ``serial(b) >= bit_budget``.
    """
    budget = _bit_budget if bit_budget is None else bit_budget
    if m._serial is not None:
        q = m._serial
        if q.bit_length() > budget:
            raise BudgetExceeded(f"serial needs {q.bit_length()} bits, budget is {budget}")
        return q
    q = 0
    for f in m.factors:
        k = serial(f.body, budget)
        if k >= budget:
            raise BudgetExceeded(f"factor serial 2**{int_text(k)} exceeds the {budget}-bit budget")
        q |= 1 << k
    m._serial = q
    return q


@lru_cache(maxsize=1 << 17)
def _from_serial_cached(q: int) -> Monomial:
    return _decode(q)


def _decode(q: int) -> Monomial:
    factors = []
    k = q.bit_length() - 1
    while k >= 0:
        if q >> k & 1:
            factors.append(Monadic(from_serial(k)))
        k -= 1
    m = Monomial(tuple(factors))
    m._serial = q
    return m


def from_serial(q: int) -> Monomial:
    """Decode a serial number: bit ``k`` set means factor ``i(from_serial(k))``."""
    if q < 0:
        raise ValueError("serial numbers are non-negative")
    if q < (1 << 17):
        return _from_serial_cached(q)
    return _decode(q)


def hyperexp(r: int) -> int:
    """``Exp r``: ``Exp 0 = 1``, ``Exp(r+1) = 2**Exp r``. The dimension of stage ``r``."""
    if r < 0:
        raise ValueError("rank must be non-negative")
    if r > 5:
        raise BudgetExceeded(f"Exp {r} cannot be represented")
    v = 1
    for _ in range(r):
        v = 1 << v
    return v


def enumerate_stage(r: int) -> Iterator[Monomial]:
    """Yield the ``Exp r`` basis monomials of stage ``r`` in serial order."""
    if r < 0:
        raise ValueError("rank must be non-negative")
    if r > MAX_ENUMERABLE_RANK:
        raise RankTooLarge(f"stage {r} has Exp {r} elements; at most stage {MAX_ENUMERABLE_RANK} is enumerable")
    for q in range(hyperexp(r)):
        yield from_serial(q)


def monadics_of_stage(r: int) -> list[Monomial]:
    """The degree-1 generators of stage ``r``, ``i(b)`` for ``b`` in stage ``r-1``."""
    if r < 1:
        return []
    if r > MAX_ENUMERABLE_RANK + 1:
        raise RankTooLarge(f"stage {r} monadics are not enumerable")
    return [from_serial(1 << k) for k in range(hyperexp(r - 1))]


# -- rendering -------------------------------------------------------------

def render(m: Monomial, format: str = "expr") -> str:
    """Render a monomial as ``expr`` text, ``nested-bar`` ASCII art or ``serial`` shorthand."""
    if format == "expr":
        return _render_expr(m)
    if format == "serial":
        return f"e{serial(m)}"
    if format == "nested-bar":
        return "\n".join(_bar_block(m))
    raise ValueError(f"unknown format {format!r}")


def _render_expr(m: Monomial) -> str:
    if not m.factors:
        return "1"
    return " v ".join(f"i({_render_expr(f.body)})" for f in m.factors)


def _bar_block(m: Monomial) -> list[str]:
    # each monadic draws a bar over its body; products sit side by side,
    # bottom-aligned, so height is rank and the stack count is degree
    if not m.factors:
        return ["o"]
    blocks = []
    for f in m.factors:
        inner = _bar_block(f.body)
        width = len(inner[0])
        blocks.append(["_" * width] + inner)
    height = max(len(b) for b in blocks)
    rows = []
    for level in range(height):
        parts = []
        for b in blocks:
            pad = height - len(b)
            parts.append(" " * len(b[0]) if level < pad else b[level - pad])
        rows.append(" ".join(parts))
    return rows


# -- parsing ---------------------------------------------------------------

def parse(text: str) -> Element:
    """Parse an element expression.

    Grammar (whitespace insignificant)::

        element  := term (('+'|'-') term)*
        term     := [rational] factor ('v' factor)*
        factor   := '1' | 'i(' element ')' | 'e' decimal
        rational := integer ['/' positive-integer]

    A leading sign on the first term is accepted. Factors may appear in any
    order; reordering signs are folded into the coefficients.
    """
    from .grassmann import Element

    terms = _Parser(text).parse()
    return Element(terms)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch: str) -> None:
        if self._peek() != ch:
            got = self._peek() or "end of input"
            raise ParseError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def _integer(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected digits", start)
        return int(self.text[start:self.pos])

    def parse(self) -> dict:
        if not self.text.strip():
            raise ParseError("empty expression", 0)
        out = self.element()
        if self._peek():
            raise ParseError(f"unexpected {self._peek()!r}", self.pos)
        return out

    def element(self) -> dict:
        from fractions import Fraction

        sign = 1
        if self._peek() and self._peek() in "+-":
            sign = -1 if self._peek() == "-" else 1
            self.pos += 1
        acc: dict = {}
        _accumulate(acc, self.term(), Fraction(sign))
        while self._peek() and self._peek() in "+-":
            sign = -1 if self._peek() == "-" else 1
            self.pos += 1
            _accumulate(acc, self.term(), Fraction(sign))
        return acc

    def term(self) -> dict:
        from fractions import Fraction

        coeff = Fraction(1)
        if self._peek().isdigit():
            num = self._integer()
            den = 1
            if self._peek() == "/":
                self.pos += 1
                den = self._integer()
                if den == 0:
                    raise ParseError("zero denominator", self.pos - 1)
            nxt = self._peek()
            if nxt and (nxt in "ie" or nxt.isdigit()):
                coeff = Fraction(num, den)
                value = self.factor()
            else:
                # the number itself is the factor: '1' is the unit, others scale it
                value = {_UNIT: Fraction(num, den)}
        else:
            value = self.factor()
        while self._peek() == "v":
            self.pos += 1
            value = _wedge_terms(value, self.factor())
        return {m: c * coeff for m, c in value.items() if c}

    def factor(self) -> dict:
        from fractions import Fraction

        ch = self._peek()
        start = self.pos
        if ch == "1":
            self.pos += 1
            return {_UNIT: Fraction(1)}
        if ch == "e":
            self.pos += 1
            if not self._peek().isdigit():
                raise ParseError("expected serial digits after 'e'", self.pos)
            return {from_serial(self._integer()): Fraction(1)}
        if ch == "i":
            self.pos += 1
            self._expect("(")
            inner = self.element()
            self._expect(")")
            return {iota_basis(m): c for m, c in inner.items()}
        raise ParseError(f"expected a factor, got {ch or 'end of input'!r}", start)


def _accumulate(acc: dict, terms: dict, scale) -> None:
    for m, c in terms.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)


def _wedge_terms(a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            s, m = wedge_basis(ma, mb)
            if s:
                _accumulate(out, {m: ca * cb}, s)
    return out
