"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage / parse / datum
error, 3 step or degree budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from ..datum import (
    GENERATOR_NAME,
    ROOT_OF_GENERATOR,
    ROOTS,
    DatumError,
    canonical_datum,
    load_datum,
    twisted_datum,
    validate_datum,
)
from ..hopfverify.report import Report
from ..pbwalg.oracle import OracleBudgetExceeded
from ..pbwalg.rewrite import BudgetExceeded, build_rewrite_system
from .expr import EvalError, ExprSyntaxError, evaluate, parse

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

SUITES = ("all", "deg1", "deg2", "deg3", "deg4", "deg5", "claims", "powers", "hopf-ideal", "antipode")


class UsageError(Exception):
    pass


def resolve_datum(source: str):
    """A JSON datum file, or ``canonical:N`` / ``twisted:N``."""
    for prefix, make in (("canonical:", canonical_datum), ("twisted:", twisted_datum)):
        if source.startswith(prefix):
            try:
                return make(int(source[len(prefix):]))
            except ValueError as exc:
                raise DatumError(f"bad datum shorthand {source!r}: {exc}") from None
    if not os.path.exists(source):
        raise DatumError(f"no such datum file: {source}")
    return load_datum(source)


def _mu_of(d):
    """Numeric parameters from the datum file when present, otherwise symbolic."""
    if not d.mu:
        return "symbolic"
    from fractions import Fraction

    return {k: Fraction(str(v)) for k, v in d.mu.items()}


def _system(d, mode: str):
    if mode == "lifting":
        from ..liftings import build_lifting

        return build_lifting(d, _mu_of(d))
    return build_rewrite_system(d, mode)


def _root_arg(name: str) -> str:
    if name in ROOTS:
        return name
    if name in ROOT_OF_GENERATOR:
        return ROOT_OF_GENERATOR[name]
    raise UsageError(f"unknown root {name!r}; use one of {' '.join(GENERATOR_NAME[r] for r in ROOTS)}")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _emit_report(args, rep: Report, meta: dict) -> int:
    timing = getattr(args, "timing", False)
    if args.json:
        sys.stdout.write(rep.dumps(meta, timing=timing) + "\n")
    else:
        sys.stdout.write(rep.text(timing=timing) + "\n")
    if rep.budget_exceeded:
        return EXIT_BUDGET
    return EXIT_OK if rep.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    d = resolve_datum(args.datum)
    rep = validate_datum(d)
    out = Report()
    if rep.ok:
        out.check("datum.valid", True, f"N={d.N}, |Gamma|={d.group.order}")
    for v in rep.violations:
        name, _, msg = v.partition(":")
        out.check("datum." + name.replace(" ", ""), False, msg.strip())
    return _emit_report(args, out, {"command": "validate"})


def cmd_normalize(args) -> int:
    d = resolve_datum(args.datum)
    rs = _system(d, args.mode)
    e = evaluate(parse(args.expr), rs)
    _emit(args, {"mode": args.mode, "expr": args.expr, "normal_form": str(e), "terms": len(e.terms)}, str(e))
    return EXIT_OK


def cmd_coproduct(args) -> int:
    from ..hopfverify.tensor import coproduct

    d = resolve_datum(args.datum)
    rs = _system(d, args.mode)
    t = coproduct(evaluate(parse(args.expr), rs))
    _emit(args, {"mode": args.mode, "expr": args.expr, "coproduct": str(t), "terms": len(t.terms)}, str(t))
    return EXIT_OK


def cmd_confluence(args) -> int:
    from ..hopfverify.checks import confluence_check

    d = resolve_datum(args.datum)
    mode = args.mode
    if mode.startswith("partial:"):
        mode = "partial:" + _root_arg(mode.split(":", 1)[1])
    rep = confluence_check(d, mode, _mu_of(d))
    return _emit_report(args, rep, {"command": "confluence", "mode": mode, "N": d.N})


def _suite_jobs(suite: str, d, tier: str) -> list:
    """Independent (function name, args) jobs making up a suite."""
    from ..datum import height

    mu = _mu_of(d)
    jobs = []
    want = {
        "deg1": (1,), "deg2": (2,), "deg3": (3,), "deg4": (4,), "deg5": (5,),
    }.get(suite, (1, 2, 3, 4, 5) if suite == "all" else ())
    for r in ROOTS:
        if height(r) in want:
            if tier == "fast" and d.N > 3 and height(r) >= 4:
                continue
            jobs.append(("verify_power_coproduct", (r, d, mu)))
    claim_of = {2: ("deg2",), 3: ("deg3-y31", "deg3-yt32"), 4: ("deg4",), 5: ("deg5",)}
    if suite == "claims":
        want = (2, 3, 4, 5)
    if suite in ("claims", "all") or suite.startswith("deg"):
        for h in want:
            for c in claim_of.get(h, ()):
                jobs.append(("verify_claim_relations", (c, d)))
    if suite in ("powers", "all"):
        for n in sorted({1, 2, 3, 4, d.N}):
            jobs.append(("verify_power_formulas", (n, d)))
        jobs.append(("beta_adjudication", ()))
    if suite in ("hopf-ideal", "all"):
        jobs.append(("verify_hopf_ideal", (d, mu)))
    if suite in ("antipode", "all"):
        jobs.append(("antipode_check", (d, mu)))
    return jobs


def _run_job(job) -> Report:
    from ..hopfverify import checks

    name, fargs = job
    try:
        return getattr(checks, name)(*fargs)
    except (BudgetExceeded, OracleBudgetExceeded) as exc:
        rep = Report()
        rep.check(f"{name}", False, f"budget exceeded: {exc}", budget_exceeded=True)
        return rep


def cmd_verify(args) -> int:
    d = resolve_datum(args.datum)
    jobs = _suite_jobs(args.suite, d, args.tier)
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            parts = list(pool.map(_run_job, jobs))
    else:
        parts = [_run_job(j) for j in jobs]
    rep = Report()
    for p in parts:
        rep.extend(p)
    return _emit_report(args, rep, {"command": "verify", "suite": args.suite, "tier": args.tier, "N": d.N})


def cmd_dims(args) -> int:
    from ..pbwalg.dims import box_count, dimension_formula, graded_dimension

    d = resolve_datum(args.datum)
    graded = graded_dimension(d, args.upto)
    lifting = _system(d, "lifting")
    truncated = graded_dimension(lifting, args.upto)
    N, order = d.N, d.group.order
    total = dimension_formula(d)
    payload = {
        "N": N,
        "group_order": order,
        "dimension": total,
        "graded_untruncated": graded,
        "graded_truncated": truncated,
    }
    lines = [
        f"dim = N^9 * |Gamma| = {N ** 9} * {order} = {total}",
        "graded (untruncated): " + " ".join(map(str, graded)),
        "graded (truncated):   " + " ".join(map(str, truncated)),
    ]
    if args.box:
        n = box_count(lifting)
        payload["box"] = n
        lines.append(f"normal exponent box: {n}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_u_alpha(args) -> int:
    from ..liftings import u_alpha

    d = resolve_datum(args.datum)
    root = _root_arg(args.root)
    rs = build_rewrite_system(d, "serre")
    u = u_alpha(root, _mu_of(d), d, rs)
    _emit(args, {"root": root, "u": str(u)}, f"{GENERATOR_NAME[root]}^{d.N} = {u}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="b3lift", description="Rewrite systems and Hopf-structure checks for B3 liftings.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("datum", help="datum JSON file, or canonical:N / twisted:N")
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check the datum congruences")
    sp = add("normalize", cmd_normalize, "normal form of an expression")
    sp.add_argument("-e", "--expr", required=True)
    sp.add_argument("--mode", choices=("serre", "nichols", "lifting"), default="serre")
    sp = add("coproduct", cmd_coproduct, "coproduct of an expression")
    sp.add_argument("-e", "--expr", required=True)
    sp.add_argument("--mode", choices=("serre", "nichols", "lifting"), default="serre")
    sp = add("confluence", cmd_confluence, "overlap check of a straightening system")
    sp.add_argument("--mode", default="lifting", help="serre, nichols, lifting or partial:<root>")
    sp = add("verify", cmd_verify, "run verification suites")
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp.add_argument("--tier", choices=("fast", "faithful"), default="faithful")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.add_argument("--timing", action="store_true", help="include per-check seconds")
    sp = add("dims", cmd_dims, "dimension formula and graded dimensions")
    sp.add_argument("--upto", type=int, default=6)
    sp.add_argument("--box", action="store_true", help="enumerate the exponent box")
    sp = add("u-alpha", cmd_u_alpha, "right side of the power relation of one root")
    sp.add_argument("--root", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "json"):
        args.json = False
    try:
        return args.func(args)
    except ExprSyntaxError as exc:
        sys.stderr.write(f"error: {exc}\n{exc.caret()}\n")
        return EXIT_USAGE
    except (EvalError, DatumError, UsageError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (BudgetExceeded, OracleBudgetExceeded) as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
