"""Reconstruct the classical-basis tables and diff them against shipped golden data.

Golden files in ``plexus/data`` are transcriptions of the reference tables
(expression text, printed signs, printed serials). Reconstruction recomputes
every field from the basis module; disagreements listed in the golden file's
``expected_divergences`` are reported as ``DIVERGES`` rather than failures.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any

from . import basis
from .basis import Monomial
from .errors import BudgetExceeded

SIGN_TEXT = {1: "+", -1: "-"}


@lru_cache(maxsize=None)
def golden(kind: str) -> dict:
    """Load a shipped golden table (``polyadics``, ``monadics`` or ``tree``)."""
    text = resources.files("plexus").joinpath("data", f"{kind}.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class TableRow:
    cells: dict[str, Any]
    status: str = "match"          # match | DIVERGES | MISMATCH
    notes: list[str] = field(default_factory=list)


@dataclass
class TableReport:
    kind: str
    columns: list[str]
    rows: list[TableRow]

    @property
    def mismatches(self) -> list[TableRow]:
        return [r for r in self.rows if r.status == "MISMATCH"]

    @property
    def divergences(self) -> list[TableRow]:
        return [r for r in self.rows if r.status == "DIVERGES"]

    @property
    def passed(self) -> bool:
        """True when every row matches the golden table or carries an expected divergence."""
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "table": self.kind,
            "passed": self.passed,
            "columns": self.columns,
            "rows": [{**{k: _jsonable(v) for k, v in r.cells.items()}, "status": r.status, "notes": r.notes}
                     for r in self.rows],
        }

    def text(self) -> str:
        cols = self.columns + ["status"]
        data = [[str(_jsonable(r.cells.get(c, ""))) for c in self.columns] + [_status_text(r)] for r in self.rows]
        widths = [max(len(c), *(len(row[i]) for row in data)) if data else len(c) for i, c in enumerate(cols)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in data]
        return "\n".join(lines)

    def csv_rows(self) -> list[list[str]]:
        head = self.columns + ["status", "notes"]
        return [head] + [[str(_jsonable(r.cells.get(c, ""))) for c in self.columns] + [r.status, "; ".join(r.notes)]
                         for r in self.rows]


def _jsonable(v):
    if isinstance(v, int) and v.bit_length() > 64:
        return f"<{v.bit_length()}-bit>"
    return v


def _status_text(r: TableRow) -> str:
    return r.status if not r.notes else f"{r.status} ({'; '.join(r.notes)})"


def _monomial(expr: str) -> Monomial:
    el = basis.parse(expr)
    (m, c), = el.terms.items()
    if c != 1:
        raise ValueError(f"golden entry {expr!r} is not a canonical basis monomial")
    return m


def _serial_text(m: Monomial, rank: int) -> str | int:
    """Numeric serial where materializable, else ``Exp r + offset`` from the structure."""
    try:
        return basis.serial(m)
    except BudgetExceeded:
        lead, rest = m.factors[0], basis.Monomial(m.factors[1:])
        if lead.body != _tower(rank - 1):
            raise
        return f"Exp {rank - 1} + {basis.serial(rest)}"


@lru_cache(maxsize=None)
def _tower(r: int) -> Monomial:
    m = basis.unit()
    for _ in range(r):
        m = basis.iota_basis(m)
    return m


def polyadics(max_rank: int = 6) -> TableReport:
    """Ranks 0..``max_rank`` of the polyadic table with rule-based statistics."""
    gold = golden("polyadics")
    expected = {d["serial"]: d for d in gold["expected_divergences"] if "serial" in d}
    labels = {d["rank"]: d for d in gold["expected_divergences"] if d.get("field") == "first_serial_label"}
    rows: list[TableRow] = []
    for grow in gold["rows"]:
        r = grow["rank"]
        if r > max_rank:
            continue
        first = None
        for i, ent in enumerate(grow["entries"]):
            m = _monomial(ent["expr"])
            serial = _serial_text(m, r)
            rule = SIGN_TEXT[basis.parity(m)]
            cells = {"rank": basis.rank(m), "serial": serial, "degree": basis.degree(m),
                     "printed_sign": ent["sign"], "rule_sign": rule, "expr": ent["expr"]}
            row = TableRow(cells)
            if basis.rank(m) != r:
                row.status = "MISMATCH"
                row.notes.append(f"rank {basis.rank(m)} printed in row {r}")
            if "serial" in ent and ent["serial"] != serial:
                row.status = "MISMATCH"
                row.notes.append(f"printed serial {ent['serial']}")
            if i == 0:
                first = m
                label = grow.get("first_serial_label")
                if label:
                    actual = f"Exp {r - 1}"
                    if not _leads_with_tower(m, r):
                        row.status = "MISMATCH"
                        row.notes.append(f"does not start at the rank-{r} tower")
                    elif label != actual:
                        exp = labels.get(r)
                        if exp and exp["printed"] == label and exp["rule"] == actual:
                            row.status = "DIVERGES"
                        else:
                            row.status = "MISMATCH"
                        row.notes.append(f"printed label {label}, serial is {actual}")
            elif basis.compare(m, first) <= 0:
                row.status = "MISMATCH"
                row.notes.append("out of serial order")
            if rule != ent["sign"]:
                key = serial if isinstance(serial, int) else None
                if key in expected and expected[key]["printed"] == ent["sign"]:
                    if row.status == "match":
                        row.status = "DIVERGES"
                    row.notes.append(f"printed {ent['sign']}, rule {rule}")
                else:
                    row.status = "MISMATCH"
                    row.notes.append(f"sign: printed {ent['sign']}, rule {rule}")
            rows.append(row)
    return TableReport("polyadics", ["rank", "serial", "degree", "printed_sign", "rule_sign", "expr"], rows)


def _leads_with_tower(m: Monomial, r: int) -> bool:
    """The leading factor of ``m`` is the tower ``i^r(1)``, whose serial is ``Exp(r-1)``."""
    return bool(m.factors) and m.factors[0].body == _tower(r - 1)


def monadics() -> TableReport:
    """The 16 stage-4 monadics ``i(e_q)``, one column per ``log2`` of their serial."""
    gold = golden("monadics")
    rows = []
    for col in gold["columns"]:
        m = _monomial(col["expr"])
        L = col["log2_q"]
        serial = basis.serial(m)
        row = TableRow({"log2_q": L, "serial": serial, "rank": basis.rank(m), "degree": basis.degree(m),
                        "expr": col["expr"]})
        if serial != 1 << L or basis.degree(m) != 1 or m != basis.iota_basis(basis.from_serial(L)):
            row.status = "MISMATCH"
            row.notes.append(f"expected serial 2^{L}")
        rows.append(row)
    want = [basis.serial(x) for x in basis.monadics_of_stage(4)]
    if [r.cells["serial"] for r in rows] != want:
        rows.append(TableRow({"log2_q": "-", "serial": "-", "expr": "column set"}, "MISMATCH",
                             ["columns are not the stage-4 monadics"]))
    return TableReport("monadics", ["log2_q", "serial", "rank", "degree", "expr"], rows)


def tree_rule(r: int) -> dict:
    """Spinor-tree row by construction: spinors ``Exp r``, vectors ``2 Exp r``, group SO(Exp r, Exp r)."""
    n = basis.hyperexp(r)
    modes = basis.hyperexp(r - 1) if r else 0
    return {"r": r, "algebra": f"Fermi {modes}", "spinors": n, "vectors": 2 * n, "group": f"SO({n},{n})"}


def tree() -> TableReport:
    gold = golden("tree")
    expected = {(d["r"], d["field"]): d for d in gold["expected_divergences"]}
    rows = []
    for printed in gold["rows"]:
        r = printed["r"]
        rule = tree_rule(r)
        row = TableRow({**printed})
        for key in ("algebra", "spinors", "vectors", "group"):
            if printed[key] == rule[key]:
                continue
            exp = expected.get((r, key))
            if exp and exp["printed"] == printed[key] and exp["rule"] == rule[key]:
                if row.status == "match":
                    row.status = "DIVERGES"
                row.notes.append(f"{key}: printed {printed[key]}, rule {rule[key]}")
            else:
                row.status = "MISMATCH"
                row.notes.append(f"{key}: printed {printed[key]}, rule {rule[key]}")
        rows.append(row)
    return TableReport("tree", ["r", "algebra", "spinors", "vectors", "group"], rows)


TABLES = {"polyadics": polyadics, "monadics": monadics, "tree": tree}


def build(kind: str) -> TableReport:
    if kind not in TABLES:
        raise ValueError(f"unknown table {kind!r}; choose from {sorted(TABLES)}")
    return TABLES[kind]()
