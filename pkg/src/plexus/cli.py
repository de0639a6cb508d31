"""Command-line front end: ``plexus {tables,verify,elem,contract}``.

Exit codes: 0 when everything checked passes, 1 on a failed verification,
2 on usage, configuration or input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field, fields
from typing import Sequence

from . import basis, contraction, suites, tables
from .errors import BudgetExceeded, ParseError, PlexusError
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CONFIG_ENV = "PLEXUS_CONFIG"
FORMATS = ("text", "json", "csv")
SHOW_FIELDS = ("serial", "rank", "degree", "parity", "canonical")
MIN_SWEEP_POINTS = 5


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    stage: int | None = None
    seed: int = 0
    tolerance: float = 1e-12
    bit_budget: int = basis.DEFAULT_BIT_BUDGET
    signature: str = "3-3-compact-i"
    format: str = "text"
    transpose: str = "hilbert"
    n: list[int] = field(default_factory=lambda: [16, 64, 256, 1024, 4096])
    slope_tolerance: float = 0.05
    policy: str = "ceil"

    def validate(self) -> None:
        if not self.tolerance > 0:
            raise UsageError("tolerance must be positive")
        if not self.slope_tolerance > 0:
            raise UsageError("slope tolerance must be positive")
        if self.bit_budget < 1:
            raise UsageError("bit budget must be positive")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")
        if self.signature not in ("3-3-compact-i", "alt"):
            raise UsageError("signature must be 3-3-compact-i or alt")
        if self.transpose not in ("hilbert", "duplex"):
            raise UsageError("transpose must be hilbert or duplex")
        if self.policy not in contraction.SECTOR_POLICIES:
            raise UsageError(f"policy must be one of {contraction.SECTOR_POLICIES}")


def _int_list(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None
    return out


_CONVERT = {"stage": int, "seed": int, "tolerance": float, "bit_budget": int, "signature": str, "format": str,
            "transpose": str, "n": _int_list, "slope_tolerance": float, "policy": str}


def read_config(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment; dashes in keys become underscores."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    out = {}
    for no, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{no}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONVERT:
            raise UsageError(f"{path}:{no}: unknown key {key!r}")
        try:
            out[key] = _CONVERT[key](value)
        except ValueError:
            raise UsageError(f"{path}:{no}: bad value for {key}: {value!r}") from None
    return out


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the config file (``--config`` or ``$PLEXUS_CONFIG``), then explicit flags."""
    values = {}
    path = args.config or os.environ.get(CONFIG_ENV)
    if path:
        values.update(read_config(path))
    for f in fields(RunConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


# -- output ------------------------------------------------------------------

def _big(v: int):
    """Integers too long for JSON/str conversion become ``2^k + r`` text."""
    return v if v.bit_length() <= 4096 else basis.int_text(v)


def _emit_report(rep: Report, fmt: str, out) -> None:
    if fmt == "json":
        out.write(rep.to_json(indent=1) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["relation", "lhs", "rhs", "status", "max_deviation"])
        for r in rep.relations:
            w.writerow([r.relation, r.lhs, r.rhs, r.status, repr(r.max_deviation)])
    else:
        for r in rep.failures:
            out.write(f"FAIL  {r.relation}: {r.lhs} vs {r.rhs} (deviation {r.max_deviation:.3g})\n")
        state = "PASS" if rep.passed else "FAIL"
        out.write(f"{state}  {rep.name}: {len(rep.relations)} relations checked, {len(rep.failures)} failed\n")


# -- commands ----------------------------------------------------------------

def cmd_tables(args, cfg: RunConfig, out) -> int:
    table = tables.build(args.kind)
    if cfg.format == "json":
        out.write(json.dumps(table.to_dict(), indent=1) + "\n")
    elif cfg.format == "csv":
        csv.writer(out, lineterminator="\n").writerows(table.csv_rows())
    else:
        out.write(table.text() + "\n")
        for r in table.divergences:
            out.write(f"DIVERGES  {'; '.join(r.notes)}\n")
    return EXIT_OK if table.passed else EXIT_FAIL


_DEFAULT_STAGE = {"car": 3, "pauli": 2, "closure": 2, "rotation": 2}


def cmd_verify(args, cfg: RunConfig, out) -> int:
    suite = args.suite
    stage = cfg.stage if cfg.stage is not None else _DEFAULT_STAGE.get(suite)
    if suite == "car":
        rep = suites.car(stage, seed=cfg.seed)
    elif suite == "pauli":
        rep = suites.pauli_suite(stage, transpose=cfg.transpose, seed=cfg.seed)
    elif suite == "closure":
        rep = suites.closure(stage, seed=cfg.seed)
    elif suite == "rotation":
        if stage > 3:
            raise UsageError("rotation is checked densely; stage must be at most 3")
        rep = suites.rotation(stage, tolerance=cfg.tolerance)
    elif suite == "yang":
        rep = suites.yang_suite(cfg.signature, seed=cfg.seed)
    else:
        rep = suites.contraction_small(seed=cfg.seed)
    rep.meta.setdefault("seed", cfg.seed)
    _emit_report(rep, cfg.format, out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _monomial_fields(m, show: Sequence[str]) -> dict:
    row = {}
    for key in show:
        if key == "serial":
            try:
                row["serial"] = _big(basis.serial(m))
            except BudgetExceeded as exc:
                row["serial"] = None
                row["serial_error"] = str(exc)
        elif key == "rank":
            row["rank"] = basis.rank(m)
        elif key == "degree":
            row["degree"] = basis.degree(m)
        elif key == "parity":
            row["parity"] = basis.parity(m)
        elif key == "canonical":
            row["canonical"] = basis.render(m, "expr")
    return row


def elem_info(expr: str, show: Sequence[str]) -> dict:
    """Attributes of a parsed element; a single monomial reports its fields at top level."""
    el = basis.parse(expr)
    info: dict = {"expr": expr, "canonical": str(el), "zero": el.is_zero()}
    terms = el.sorted_terms()
    if len(terms) == 1 and terms[0][1] == 1:
        info.update(_monomial_fields(terms[0][0], show))
        if "canonical" in show:
            info["canonical"] = str(el)
    else:
        info["terms"] = [{"coefficient": str(c), **_monomial_fields(m, show)} for m, c in terms]
    if "canonical" not in show and not info["zero"]:
        info.pop("canonical")
    return info


def cmd_elem(args, cfg: RunConfig, out) -> int:
    show = [s.strip() for s in args.show.split(",") if s.strip()]
    bad = [s for s in show if s not in SHOW_FIELDS]
    if bad:
        raise UsageError(f"unknown --show field(s) {bad}; choose from {SHOW_FIELDS}")
    info = elem_info(args.expr, show)
    if cfg.format == "json":
        out.write(json.dumps(info) + "\n")
    elif cfg.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in info.items():
            w.writerow([k, json.dumps(v) if isinstance(v, (list, dict)) else v])
    else:
        for k, v in info.items():
            out.write(f"{k}: {v}\n")
    return EXIT_OK


def cmd_contract(args, cfg: RunConfig, out) -> int:
    Ns = cfg.n
    if len(Ns) < MIN_SWEEP_POINTS:
        raise UsageError(f"a slope fit needs at least {MIN_SWEEP_POINTS} sweep points, got {len(Ns)}")
    result = contraction.contraction_sweep(Ns, policy=cfg.policy)
    r1, r2 = result.fit("r1_max_band"), result.fit("r2")
    ok1 = abs(r1.slope + 0.5) <= cfg.slope_tolerance
    ok2 = abs(r2.slope + 1.0) <= 1e-9
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            result.csv(fh)
    summary = {"policy": cfg.policy, "Ns": Ns, "slope_tolerance": cfg.slope_tolerance, "csv": args.out,
               "fits": json.loads(result.fits_json()),
               "checks": {"r1_slope": "pass" if ok1 else "fail", "r2_slope": "pass" if ok2 else "fail"}}
    if cfg.format == "json":
        out.write(json.dumps(summary, indent=1) + "\n")
    elif cfg.format == "csv":
        if not args.out:
            result.csv(out)
    else:
        for f in result.fits:
            out.write(f"{f.quantity}: slope {f.slope:.6f}, intercept {f.intercept:.6f}, r^2 {f.r_squared:.6f}\n")
        out.write(f"{'PASS' if ok1 and ok2 else 'FAIL'}  r1 slope {'within' if ok1 else 'outside'} "
                  f"-0.5 +- {cfg.slope_tolerance}; r2 slope {'exactly' if ok2 else 'not'} -1\n")
    return EXIT_OK if ok1 and ok2 else EXIT_FAIL


# -- parser ------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help=f"key=value config file (default: ${CONFIG_ENV})")
    p.add_argument("--stage", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tolerance", type=float)
    p.add_argument("--bit-budget", dest="bit_budget", type=int)
    p.add_argument("--signature", choices=("3-3-compact-i", "alt"))
    p.add_argument("--format", choices=FORMATS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plexus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="reconstruct a classical-basis table and diff it against the printed one")
    p.add_argument("kind", choices=tuple(tables.TABLES))
    _common(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=suites.SUITES)
    p.add_argument("--transpose", choices=("hilbert", "duplex"), help="pairing used by the pauli suite")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("elem", help="inspect a basis expression")
    p.add_argument("expr")
    p.add_argument("--show", default=",".join(SHOW_FIELDS), help=f"comma list from {','.join(SHOW_FIELDS)}")
    _common(p)
    p.set_defaults(func=cmd_elem)

    p = sub.add_parser("contract", help="contraction sweep with log-log slope fits")
    p.add_argument("--n", type=_n_arg, help="comma-separated cell counts (>= 5 values)")
    p.add_argument("--out", help="write the sweep CSV here")
    p.add_argument("--policy", choices=contraction.SECTOR_POLICIES)
    p.add_argument("--slope-tolerance", dest="slope_tolerance", type=float)
    _common(p)
    p.set_defaults(func=cmd_contract)
    return parser


def _n_arg(text: str) -> list[int]:
    try:
        return _int_list(text)
    except UsageError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    old_budget = basis.get_bit_budget()
    try:
        cfg = resolve_config(args)
        basis.set_bit_budget(cfg.bit_budget)
        return args.func(args, cfg, out)
    except ParseError as exc:
        print(f"plexus: parse error: {exc.message} at position {exc.position}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, PlexusError, ValueError) as exc:
        print(f"plexus: {type(exc).__name__}: {exc}" if isinstance(exc, PlexusError) else f"plexus: {exc}",
              file=sys.stderr)
        return EXIT_USAGE
    finally:
        basis.set_bit_budget(old_budget)


if __name__ == "__main__":
    sys.exit(main())
