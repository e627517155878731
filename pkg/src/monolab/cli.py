"""Command-line interface: one binary exposing every engine.

Subcommands: roots, kostant, primescan, cohomology, selmer, bounds,
verify-paper.  Data goes to stdout (or --out), diagnostics to stderr.  Exit
codes: 0 success, 1 usage or resource errors, 2 reference-fixture mismatch
under --check-paper / verify-paper.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import fixtures
from .chevalley import build_chevalley_algebra
from .exact import is_probable_prime
from .group_cohomology import (
    ResourceLimitError,
    adjoint_h1_via_kostant,
    h1,
    h1_naive,
    sl2_group,
    sym_module,
)
from .principal_sl2 import build_principal_sl2, kostant_decomposition
from .prime_scan import build_report, check_against_reference
from .rootsys import SimpleType, build_root_datum
from .selmer_arith import (
    SelmerLedger,
    lgroup_euler_difference,
    lifting_prime_bounds,
    oddness_deficit,
    wiles_difference,
)
from .verify import verify_paper

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2


@dataclass
class RunConfig:
    subcommand: str
    type_name: str | None = None
    ell: int | None = None
    ell_range: tuple[int, int] | None = None
    sym: int | None = None
    twist: int = 0
    naive: bool = False
    sweep: bool = False
    ledger_path: str | None = None
    out: str | None = None
    fmt: str = "json"
    memory_budget: int | None = None
    workers: int = 1
    check_paper: bool = False
    only: list | None = None
    nightly: bool = False


def _flatten(doc, prefix=""):
    rows = []
    if isinstance(doc, dict):
        for k in sorted(doc):
            rows.extend(_flatten(doc[k], f"{prefix}{k}."))
    elif isinstance(doc, (list, tuple)):
        for i, v in enumerate(doc):
            rows.extend(_flatten(v, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], doc))
    return rows


def _emit(doc: dict, cfg: RunConfig):
    if cfg.fmt == "json":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["key", "value"])
        for key, value in _flatten(doc):
            writer.writerow([key, value])
        text = buf.getvalue()
    else:
        lines = [f"{key} = {value}" for key, value in _flatten(doc)]
        text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_ell(text: str):
    if ".." in text:
        lo, hi = text.split("..", 1)
        return None, (int(lo), int(hi))
    return int(text), None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="monolab", description=__doc__)
    sub = ap.add_subparsers(dest="subcommand", required=True)

    def common(p, with_type=True):
        if with_type:
            p.add_argument("--type", required=True, help="simple type, e.g. E6 or A3")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")

    p = sub.add_parser("roots", help="root system report for a simple type")
    common(p)

    p = sub.add_parser("kostant", help="principal sl2 and centralizer eigenbasis")
    common(p)

    p = sub.add_parser("primescan", help="obstruction-prime scan")
    common(p)
    p.add_argument("--check-paper", action="store_true", help="compare against the bundled reference lists")

    p = sub.add_parser("cohomology", help="H^0/H^1 of SL2(F_ell) on symmetric powers")
    p.add_argument("mode", nargs="?", choices=("sweep",), help="run the adjoint sweep over a prime range")
    p.add_argument("--type", help="simple type (sweep mode)")
    p.add_argument("--ell", required=True, help="prime, or range like 13..31 in sweep mode")
    p.add_argument("--sym", type=int, help="symmetric power r")
    p.add_argument("--twist", type=int, default=None, help="determinant twist exponent t for det^t (default -r//2)")
    p.add_argument("--naive", action="store_true", help="use the per-element oracle solver")
    p.add_argument("--memory-budget", type=int, help="bytes allowed for the cocycle solver")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")

    p = sub.add_parser("selmer", help="evaluate the difference formulas on a ledger file")
    p.add_argument("--ledger", required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")

    p = sub.add_parser("bounds", help="prime bounds for the lifting settings")
    common(p)

    p = sub.add_parser("verify-paper", help="run the full acceptance matrix")
    p.add_argument("--only", action="append", help="criterion name; repeatable")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--memory-budget", type=int)
    p.add_argument("--nightly", action="store_true", help="exhaustive Jacobi sweep on the large types")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    return ap


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(subcommand=ns.subcommand)
    cfg.out = getattr(ns, "out", None)
    cfg.fmt = getattr(ns, "format", "json")
    cfg.type_name = getattr(ns, "type", None)
    if getattr(ns, "ell", None) is not None:
        cfg.ell, cfg.ell_range = _parse_ell(ns.ell)
    cfg.sym = getattr(ns, "sym", None)
    cfg.twist = getattr(ns, "twist", None)
    cfg.naive = getattr(ns, "naive", False)
    cfg.sweep = getattr(ns, "mode", None) == "sweep"
    cfg.ledger_path = getattr(ns, "ledger", None)
    cfg.memory_budget = getattr(ns, "memory_budget", None)
    cfg.workers = getattr(ns, "workers", 1)
    cfg.check_paper = getattr(ns, "check_paper", False)
    cfg.only = getattr(ns, "only", None)
    cfg.nightly = getattr(ns, "nightly", False)
    return cfg


def run(cfg: RunConfig) -> int:
    """Execute one subcommand; returns the process exit code."""
    try:
        handler = _HANDLERS[cfg.subcommand]
    except KeyError:
        print(f"unknown subcommand {cfg.subcommand}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return handler(cfg)
    except (ValueError, OSError, ArithmeticError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _cmd_roots(cfg: RunConfig) -> int:
    d = build_root_datum(SimpleType.parse(cfg.type_name))
    _emit(d.to_json_dict(), cfg)
    return EXIT_OK


def _cmd_kostant(cfg: RunConfig) -> int:
    alg = build_chevalley_algebra(cfg.type_name)
    kd = kostant_decomposition(alg, build_principal_sl2(alg))
    _emit(kd.to_json_dict(), cfg)
    return EXIT_OK


def _cmd_primescan(cfg: RunConfig) -> int:
    rep = build_report(cfg.type_name)
    doc = rep.to_json_dict()
    code = EXIT_OK
    if cfg.check_paper:
        ok, expected, note = check_against_reference(rep)
        doc["check_paper"] = {"ok": ok, "expected": list(expected), "note": note}
        if not ok:
            got, want = set(rep.bad_primes), set(expected)
            print(
                f"reference mismatch for {rep.simple_type}:"
                f" unexpected {sorted(got - want)}, missing {sorted(want - got)}",
                file=sys.stderr,
            )
            code = EXIT_MISMATCH
    _emit(doc, cfg)
    return code


def _cmd_cohomology(cfg: RunConfig) -> int:
    if cfg.sweep:
        if not cfg.type_name:
            print("sweep mode needs --type", file=sys.stderr)
            return EXIT_USAGE
        lo, hi = cfg.ell_range if cfg.ell_range else (cfg.ell, cfg.ell)
        rows = []
        for ell in range(lo, hi + 1):
            if not is_probable_prime(ell):
                continue
            rows.append({"ell": ell, "h1_total": adjoint_h1_via_kostant(cfg.type_name, ell, cfg.memory_budget)})
        _emit({"simple_type": cfg.type_name, "sweep": rows}, cfg)
        return EXIT_OK
    if cfg.ell is None or cfg.sym is None:
        print("need --ell and --sym (or the sweep mode)", file=sys.stderr)
        return EXIT_USAGE
    twist = cfg.twist if cfg.twist is not None else -(cfg.sym // 2)
    G = sl2_group(cfg.ell)
    M = sym_module(cfg.ell, cfg.sym, -twist)
    rep = h1_naive(G, M) if cfg.naive else h1(G, M, cfg.memory_budget)
    doc = rep.to_json_dict()
    doc.update({"ell": cfg.ell, "sym": cfg.sym, "twist": twist, "solver": "naive" if cfg.naive else "streamed"})
    _emit(doc, cfg)
    return EXIT_OK


def _cmd_selmer(cfg: RunConfig) -> int:
    with open(cfg.ledger_path) as fh:
        ledger = SelmerLedger.from_json(fh.read())
    _emit(
        {
            "wiles_difference": wiles_difference(ledger),
            "oddness_deficit": oddness_deficit(ledger),
            "lgroup_euler_difference": lgroup_euler_difference(ledger),
        },
        cfg,
    )
    return EXIT_OK


def _cmd_bounds(cfg: RunConfig) -> int:
    _emit(lifting_prime_bounds(cfg.type_name).to_json_dict(), cfg)
    return EXIT_OK


def _cmd_verify(cfg: RunConfig) -> int:
    try:
        fixtures.assert_data_file_sync()
    except AssertionError as exc:
        print(f"FAIL fixture-sync: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    results = verify_paper(
        only=cfg.only, workers=max(1, cfg.workers), budget=cfg.memory_budget, nightly=cfg.nightly
    )
    # timing goes to stderr only, so the data stream is bit-identical across runs
    doc = {
        "criteria": [{"name": r.name, "ok": r.ok, "details": r.details} for r in results],
        "all_ok": all(r.ok for r in results),
    }
    for r in results:
        print(r.line(), file=sys.stderr)
    _emit(doc, cfg)
    return EXIT_OK if doc["all_ok"] else EXIT_MISMATCH


_HANDLERS = {
    "roots": _cmd_roots,
    "kostant": _cmd_kostant,
    "primescan": _cmd_primescan,
    "cohomology": _cmd_cohomology,
    "selmer": _cmd_selmer,
    "bounds": _cmd_bounds,
    "verify-paper": _cmd_verify,
}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv if argv is not None else sys.argv[1:])
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
