"""Command-line entry point: ``superdirac <suite> [options]``.

Exit codes: 0 when every check passes, 1 when some check fails, 2 on bad
arguments.  Reports are written atomically to ``--output`` (or stdout).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .errors import IndexOutOfRange, ParseError, SuperDiracError, UndeclaredParity
from .exprdsl import parse_equation, to_text, verify_identity
from .operators import catalog
from .report import Check, Report, check, to_jsonable, write_atomic
from .suites import (
    CELL_SUITES,
    conformal_suite,
    howe_suite,
    invariance_suite,
    osp12_suite,
    pi_power_suite,
    run_cell,
)
from .superspace import SpaceConfig

log = logging.getLogger("superdirac")

WORKERS_ENV = "SUPERDIRAC_WORKERS"


class _ArgError(Exception):
    pass


def _k_values(text: str) -> list[int]:
    """Parse ``3`` or ``1..4`` (also ``1-4``)."""
    for sep in ("..", "-"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            try:
                lo_i, hi_i = int(lo), int(hi)
            except ValueError:
                raise argparse.ArgumentTypeError(f"bad k range {text!r}") from None
            if lo_i > hi_i or lo_i < 0:
                raise argparse.ArgumentTypeError(f"bad k range {text!r}")
            return list(range(lo_i, hi_i + 1))
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("k must be non-negative")
    return [k]


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superdirac", description="Exact checks for the super Dirac operator on R^(m|2n).")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="suite", required=True)

    def common(sp, deg=None, spin=None):
        sp.add_argument("--m", type=int, required=True, help="number of bosonic coordinates")
        sp.add_argument("--n", type=int, required=True, help="half the number of fermionic coordinates")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--output", help="report file (default: stdout)")
        sp.add_argument("-v", "--verbose", action="store_true")
        if deg is not None:
            sp.add_argument("--deg", type=int, default=deg, help="highest polynomial degree checked")
            sp.add_argument("--spin-cut", type=int, default=spin, help="highest t-degree of spinors checked")

    common(sub.add_parser("verify-osp12", help="osp(1|2) relations and Stein-Weiss consistency"), 4, 3)
    common(sub.add_parser("verify-invariance", help="osp(m|2n) invariance, K_ij brackets, bivector action"), 3, 2)
    common(sub.add_parser("verify-conformal", help="conformal symmetries of the Dirac operator"), 3, 2)
    for name, helptext in (
        ("fischer", "monogenic refinement of the harmonic Fischer decomposition"),
        ("monogenics", "harmonic and monogenic kernels"),
        ("casimir", "spectrum of x times Dirac on H_k tensor S"),
        ("submodule", "submodule structure in the reducible window"),
        ("singular", "singular vectors and their weights"),
    ):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("--k", type=_k_values, required=True, help="degree or range such as 1..4")
        sp.add_argument("--Q", type=int, default=None, help="spinor t-degree cut (default k+2)")
        sp.add_argument("--manifest", help="JSON file recording finished cells, for resuming sweeps")
    sp = sub.add_parser("pi-power", help="powers of Pi_1 on the constant")
    common(sp)
    sp.add_argument("--k-max", type=int, default=None)
    common(sub.add_parser("howe-closure", help="closure and dimension of the Howe generator algebra"), 2, 2)
    sp = sub.add_parser("check", help='verify an identity such as "dirac*dirac == -laplace"')
    sp.add_argument("identity")
    common(sp, 3, 2)
    sp = sub.add_parser("list-ops", help="catalogue of named operators")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--output")
    sp.add_argument("-v", "--verbose", action="store_true")
    return p


def _workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise _ArgError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None


def _load_manifest(path: str | None) -> dict:
    if not path or not os.path.exists(path):
        return {}
    with open(path, encoding="utf-8") as fh:
        return json.load(fh).get("cells", {})


def _save_manifest(path: str, cells: dict) -> None:
    write_atomic(path, json.dumps({"cells": cells}, indent=1, sort_keys=True) + "\n")


def _cell_key(suite: str, m: int, n: int, k: int, Q: int) -> str:
    return f"{suite}|{m}|{n}|{k}|{Q}"


def _run_cells(suite: str, m: int, n: int, ks: list[int], Q: int | None, manifest: str | None) -> list[Check]:
    cells = [(k, k + 2 if Q is None else Q) for k in ks]
    done = _load_manifest(manifest)
    todo = [(k, q) for k, q in cells if _cell_key(suite, m, n, k, q) not in done]
    workers = _workers()
    if todo:
        if workers > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futs = {pool.submit(run_cell, suite, m, n, k, q): (k, q) for k, q in todo}
                for f, (k, q) in futs.items():
                    done[_cell_key(suite, m, n, k, q)] = f.result()
                    if manifest:
                        _save_manifest(manifest, done)
        else:
            for k, q in todo:
                log.info("cell %s k=%d Q=%d", suite, k, q)
                done[_cell_key(suite, m, n, k, q)] = run_cell(suite, m, n, k, q)
                if manifest:
                    _save_manifest(manifest, done)
    out = []
    for k, q in cells:
        for c in done[_cell_key(suite, m, n, k, q)]:
            data = dict(c["data"])
            data.setdefault("k", k)
            data.setdefault("Q", q)
            out.append(Check(f"{c['name']} [k={k}, Q={q}]", c["paper_anchor"], c["status"], data))
    return out


def _check_identity(cfg: SpaceConfig, text: str, deg: int, spin: int) -> list[Check]:
    lhs, rhs = parse_equation(text)
    res = verify_identity(cfg, lhs, rhs, deg, spin)
    name = f"{to_text(lhs)} == {to_text(rhs)}"
    if not res.agree:
        return [Check(name, "symbolic and evaluated routes", "fail", {**res.to_json(), "reason": "engine bug: routes disagree"})]
    return [check(name, "symbolic and evaluated routes", res.passed, **res.to_json())]


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING, format="%(message)s")
    try:
        if args.m < 1 or args.n < 0:
            raise _ArgError("need m >= 1 and n >= 0")
        cfg = SpaceConfig(args.m, args.n)
        if args.suite == "list-ops":
            ops = catalog(cfg)
            if args.format == "json":
                text = json.dumps(to_jsonable(ops), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
            else:
                text = "".join(f"{o['spec']:<24} parity={o.get('parity')}  {o.get('label', '')}\n" for o in ops)
            _emit(text, args.output)
            return 0
        params: dict = {"m": args.m, "n": args.n}
        for key in ("deg", "spin_cut", "Q", "k_max"):
            if getattr(args, key, None) is not None:
                params[key] = getattr(args, key)
        if getattr(args, "k", None) is not None:
            params["k"] = args.k
        for key in ("deg", "spin_cut", "Q", "k_max"):
            v = getattr(args, key, None)
            if v is not None and v < 0:
                raise _ArgError(f"--{key.replace('_', '-')} must be non-negative")
        if args.suite == "verify-osp12":
            checks = osp12_suite(cfg, args.deg, args.spin_cut)
        elif args.suite == "verify-invariance":
            checks = invariance_suite(cfg, args.deg, args.spin_cut)
        elif args.suite == "verify-conformal":
            checks = conformal_suite(cfg, args.deg, args.spin_cut)
        elif args.suite in CELL_SUITES:
            if args.suite == "casimir" and min(args.k) < 1:
                raise _ArgError("casimir needs k >= 1")
            checks = _run_cells(args.suite, args.m, args.n, args.k, args.Q, args.manifest)
        elif args.suite == "pi-power":
            checks = pi_power_suite(cfg, args.k_max)
        elif args.suite == "howe-closure":
            checks = howe_suite(cfg, args.deg, args.spin_cut)
        elif args.suite == "check":
            params["identity"] = args.identity
            checks = _check_identity(cfg, args.identity, args.deg, args.spin_cut)
        else:  # pragma: no cover - argparse restricts the choices
            raise _ArgError(f"unknown suite {args.suite}")
    except (_ArgError, ParseError, IndexOutOfRange, UndeclaredParity, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SuperDiracError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    report = Report(params, args.suite, checks)
    _emit(report.render(args.format), args.output)
    bad = report.first_failure()
    if bad is not None:
        reason = bad.data.get("reason", "")
        print(f"FAIL: {bad.name} ({bad.anchor}) {reason}".rstrip(), file=sys.stderr)
        witness = bad.data.get("witness") or bad.data.get("counterexample")
        if witness:
            print(f"counterexample: {json.dumps(to_jsonable(witness), sort_keys=True, ensure_ascii=False)}", file=sys.stderr)
        return 1
    return 0


def _emit(text: str, path: str | None) -> None:
    if path:
        write_atomic(path, text)
    else:
        sys.stdout.write(text)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
