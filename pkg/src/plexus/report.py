"""Verification reports shared by the checking routines."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class Relation:
    """One checked identity. ``status`` is "pass" or "fail"."""

    relation: str
    lhs: str
    rhs: str
    status: str
    max_deviation: float = 0.0

    @classmethod
    def check(cls, relation: str, lhs: str, rhs: str, ok: bool, deviation: float = 0.0) -> Relation:
        return cls(relation, lhs, rhs, "pass" if ok else "fail", float(deviation))


@dataclass
class Report:
    name: str
    relations: list[Relation] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)

    def add(self, relation: Relation) -> None:
        self.relations.append(relation)

    def check(self, relation: str, lhs: str, rhs: str, ok: bool, deviation: float = 0.0) -> bool:
        self.relations.append(Relation.check(relation, lhs, rhs, ok, deviation))
        return ok

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.relations)

    @property
    def failures(self) -> list[Relation]:
        return [r for r in self.relations if r.status != "pass"]

    @property
    def max_deviation(self) -> float:
        return max((r.max_deviation for r in self.relations), default=0.0)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "checked": len(self.relations),
            "failed": len(self.failures),
            "meta": self.meta,
            "relations": [asdict(r) for r in self.relations],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), default=str, **kw)

    def __repr__(self) -> str:
        state = "pass" if self.passed else f"{len(self.failures)} failed"
        return f"Report({self.name!r}, {len(self.relations)} relations, {state})"


def combine(name: str, reports, **meta) -> Report:
    """Concatenate several reports; each part's meta is kept under its own name."""
    out = Report(name, meta=dict(meta))
    parts = {}
    for r in reports:
        out.relations.extend(r.relations)
        parts[r.name] = {**r.meta, "checked": len(r.relations), "failed": len(r.failures)}
    out.meta["parts"] = parts
    return out
