"""Command-line harness.

Subcommands::

    ckv validate <file>                 structure-axiom report, exit 0/1/2
    ckv verify <file> [--theorems LIST] [--tol F] [--json]
    ckv fuzz [--count N] [--seed S] [--n N] [--m M] [--kind 1|2] [--out DIR]
    ckv case --id ID [--params K=V,...] [--out FILE]

Exit codes: 0 everything holds, 1 a violation or finding, 2 input error.
The CKV_SEED environment variable overrides the built-in default fuzz seed
(an explicit --seed beats both).  Machine-readable output (--json lines,
fuzz report files) never contains timing, so identical flags and seed give
byte-identical bytes; wall-clock timing goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .contact import validate_structure
from .errors import GeometryError, MissingArgument, ScenarioError, WrongConnectionKind
from .frames import Plane
from .fuzz import DEFAULT_SEED, FuzzConfig, run_fuzz
from .scenario import (
    KNOWN_THEOREMS,
    load_scenario,
    parse_scenario,
    save_scenario,
    scenario_from_parts,
)
from .verifier import EQUALITY_THEOREM, applicable_theorems, equality_instance, verify

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT


def cmd_validate(args) -> int:
    try:
        parsed = parse_scenario(load_scenario(args.file))
    except ScenarioError as exc:
        return _fail(str(exc))
    report = validate_structure(parsed.model, tol=args.tol)
    width = max(len(c.name) for c in report.checks)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{check.name:<{width}}  {check.max_residual:12.3e}  {status}")
    print(f"structure: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _resolve_arguments(parsed, theorem_id: str):
    """Plane / direction / k for one check, from the scenario with defaults."""
    sub = parsed.sub
    checks = parsed.checks
    plane = None
    if theorem_id in ("3.1", "4.1"):
        i, j = checks.plane if checks.plane is not None else (0, 1)
        plane = Plane(sub.tangent[i], sub.tangent[j])
    X = None
    if theorem_id in ("3.3", "4.2"):
        X = checks.X if checks.X is not None else sub.tangent[0]
    k = checks.k
    return plane, X, k


def cmd_verify(args) -> int:
    try:
        parsed = parse_scenario(load_scenario(args.file))
    except ScenarioError as exc:
        return _fail(str(exc))
    struct = validate_structure(parsed.model)
    if not struct.passed:
        failing = [c.name for c in struct.checks if not c.passed]
        return _fail(f"ambient structure axioms fail: {', '.join(failing)}")

    if args.theorems:
        ids = [t.strip() for t in args.theorems.split(",") if t.strip()]
    elif parsed.checks.theorems:
        ids = parsed.checks.theorems
    else:
        ids = list(applicable_theorems(parsed.spec.kind))
    for tid in ids:
        if tid not in KNOWN_THEOREMS:
            return _fail(f"unknown theorem id {tid!r}")

    tol = args.tol if args.tol is not None else parsed.checks.tol
    t0 = time.perf_counter()
    verdicts = []
    for tid in ids:
        plane, X, k = _resolve_arguments(parsed, tid)
        try:
            verdicts.append(verify(parsed.sub, tid, plane=plane, X=X, k=k, tol=tol))
        except (WrongConnectionKind, MissingArgument, GeometryError, ValueError) as exc:
            return _fail(f"{tid}: {exc}")
    elapsed = time.perf_counter() - t0

    if args.json:
        for v in verdicts:
            print(json.dumps(v.to_dict(), sort_keys=True))
    else:
        print(f"{'theorem':<8}{'lhs':>16}{'rhs':>16}{'slack':>14}  holds")
        for v in verdicts:
            print(f"{v.theorem_id:<8}{v.lhs:>16.8g}{v.rhs:>16.8g}{v.slack:>14.3e}  {v.holds}")
    print(f"verified {len(verdicts)} checks in {elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK if all(v.holds for v in verdicts) else EXIT_VIOLATION


def cmd_fuzz(args) -> int:
    if args.seed is not None:
        seed = args.seed
    elif os.environ.get("CKV_SEED"):
        try:
            seed = int(os.environ["CKV_SEED"])
        except ValueError:
            return _fail("CKV_SEED must be an integer")
    else:
        seed = DEFAULT_SEED
    kinds = [args.kind] if args.kind else [1, 2]

    t0 = time.perf_counter()
    reports = []
    for kind in kinds:
        cfg = FuzzConfig(count=args.count, seed=seed, kind=kind, n=args.n, m=args.m,
                         tol=args.tol)
        reports.append(run_fuzz(cfg))
    elapsed = time.perf_counter() - t0

    payload = {"reports": [r.to_dict() for r in reports]}
    blob = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    findings = sum(len(r.findings) for r in reports)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(blob, encoding="utf-8")
        for r in reports:
            for i, finding in enumerate(r.findings):
                save_scenario(out / f"finding_kind{r.config.kind}_{i:03d}.json",
                              finding["scenario"])
        print(f"report written to {out / 'report.json'}")
    else:
        sys.stdout.write(blob)
    for r in reports:
        print(
            f"kind {r.config.kind}: {r.instances} instances, {r.checks_run} checks, "
            f"{len(r.findings)} findings, max cross residual {r.max_cross_residual:.3e}",
            file=sys.stderr,
        )
    print(f"fuzz completed in {elapsed:.2f}s", file=sys.stderr)
    return EXIT_VIOLATION if findings else EXIT_OK


def _parse_params(text: str | None) -> dict:
    params: dict = {}
    if not text:
        return params
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ValueError(f"bad parameter {item!r}, expected key=value")
        key, value = item.split("=", 1)
        params[key.strip()] = float(value)
    return params


def cmd_case(args) -> int:
    try:
        params = _parse_params(args.params)
    except ValueError as exc:
        return _fail(str(exc))
    try:
        sub = equality_instance(args.id, n=args.n, params=params, seed=args.seed)
    except (ValueError, GeometryError) as exc:
        return _fail(str(exc))
    tid = EQUALITY_THEOREM[args.id]
    plane = Plane(sub.tangent[0], sub.tangent[1]) if tid in ("3.1", "4.1") else None
    verdict = verify(sub, tid, plane=plane)
    print(f"case {args.id}: theorem {tid} slack = {verdict.slack:.3e} "
          f"(lhs = {verdict.lhs:.8g}, rhs = {verdict.rhs:.8g})")
    if args.out:
        checks = {"theorems": [tid], "tol": 1e-8}
        if plane is not None:
            checks["plane"] = [0, 1]
        data = scenario_from_parts(sub.model, sub.spec, sub.tangent, sub.hhat, checks)
        save_scenario(args.out, data)
        print(f"scenario written to {args.out}")
    return EXIT_OK if abs(verdict.slack) < 1e-8 * (1 + abs(verdict.lhs) + abs(verdict.rhs)) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ckv",
        description="curvature inequality verification for submanifolds of "
                    "(kappa,mu)-contact space forms",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the ambient structure axioms")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("verify", help="evaluate inequality checks on a scenario")
    p.add_argument("file")
    p.add_argument("--theorems", help="comma-separated ids, e.g. 3.1,3.3,3.5i")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--json", action="store_true", help="one JSON report per line")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", help="seeded random verification campaign")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n", type=int, choices=(3, 4), default=None)
    p.add_argument("--m", type=int, choices=(2, 3), default=None)
    p.add_argument("--kind", type=int, choices=(1, 2), default=None,
                   help="connection kind; default runs both")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", help="directory for report.json and finding scenarios")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("case", help="construct an equality witness and report its slack")
    p.add_argument("--id", required=True, choices=sorted(EQUALITY_THEOREM))
    p.add_argument("--params", help="comma-separated key=value pairs, e.g. h11=1,h22=1")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the constructed scenario here")
    p.set_defaults(func=cmd_case)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching the input-error contract
        return int(exc.code or 0)
    return args.func(args)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
