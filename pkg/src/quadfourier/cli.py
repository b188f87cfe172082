"""Command-line front end: run suites, emit tables, write JSON reports.

Exit codes: 0 all checks pass; 1 some check failed; 2 usage error,
invalid field, or over-budget parameters.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import quadric, suites
from .characters import CharacterContext
from .fields import FieldSpec
from .reports import render_aggregate_json, render_suite_json
from .scalars import complex_str

USAGE_ERROR = 2


def _parse_modulus(text):
    if text is None:
        return None
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad modulus {text!r}: expected comma-separated ints") from exc


def _field_or_exit(q, modulus_text):
    try:
        return FieldSpec(q, _parse_modulus(modulus_text))
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _print_report(report) -> None:
    head = f"suite {report.suite} (q={report.parameters.get('q')})"
    print(head)
    for c in report.checks:
        line = f"  {c.status.upper():4} {c.name}"
        if c.details:
            line += f"  [{c.details}]"
        print(line)
    print(f"  -> {'pass' if report.passed else 'FAIL'} in {report.wall_time_ms} ms")


def cmd_verify(args) -> int:
    _field_or_exit(args.q, args.modulus)
    modulus = _parse_modulus(args.modulus)
    kwargs = {"modulus": modulus, "seed": args.seed}
    try:
        if args.suite == "all":
            reports = suites.run_all(
                args.q, modulus=modulus, seed=args.seed, budget=args.budget,
                samples=args.samples,
            )
        else:
            if args.suite == "quadric":
                kwargs["d"] = args.d
                kwargs["samples"] = args.samples or 25
                kwargs["budget"] = args.budget
            elif args.suite == "mirabolic":
                kwargs["n"] = args.n
                kwargs["budget"] = args.budget
            elif args.suite == "sp4":
                kwargs["samples"] = args.samples or 10
                kwargs["budget"] = args.budget
            elif args.suite == "sl3":
                kwargs["budget"] = args.budget
            reports = [suites.run_suite(args.suite, args.q, **kwargs)]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR

    body = render_aggregate_json(reports, args.seed)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
    if args.format == "json":
        sys.stdout.write(body)
    else:
        for r in reports:
            _print_report(r)
    return 0 if all(r.passed for r in reports) else 1


def cmd_table(args) -> int:
    spec = _field_or_exit(args.q, args.modulus)
    lines = []
    if args.kind == "kloosterman":
        ctx = CharacterContext(spec)
        p = spec.p
        header = ["enc"] + [f"c{i}" for i in range(p - 1)] + ["re", "im"]
        lines.append(",".join(header))
        for code, value in enumerate(ctx.kl_table):
            z = value.to_complex()
            row = [str(code)] + [str(c) for c in value.coeffs]
            row += [f"{z.real:.6f}", f"{z.imag:.6f}"]
            lines.append(",".join(row))
    elif args.kind == "casesfor":
        ctx = CharacterContext(spec)
        try:
            qset = quadric.QuadricSet(args.d, ctx, max_points=args.budget)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return USAGE_ERROR
        lines.append("stratum,formula,brute_force,match")
        reps = _stratum_representatives(qset)
        for stratum in quadric.Stratum:
            formula = quadric.case_sum_formula(stratum, args.d, args.q)
            pair = reps.get(stratum)
            if pair is None:
                lines.append(f"{stratum.value},{formula},,vacuous")
                continue
            val = quadric.double_kernel_sum(qset, *pair)
            match = val.is_rational() and val.as_rational() == formula
            lines.append(
                f"{stratum.value},{formula},{val.as_rational()},{str(match).lower()}"
            )
    else:  # pragma: no cover
        return USAGE_ERROR
    body = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return 0


def _stratum_representatives(qset) -> dict:
    """First pair per stratum in lexicographic pair order (deterministic)."""
    reps = {}
    n = qset.size
    for i in range(n):
        for j in range(n):
            s = quadric.classify_pair(qset.points.decode(i), qset.points.decode(j))
            if s not in reps:
                reps[s] = (qset.points.decode(i), qset.points.decode(j))
                if len(reps) == len(quadric.Stratum):
                    return reps
    return reps


def cmd_count(args) -> int:
    spec = _field_or_exit(args.q, args.modulus)
    try:
        formula = quadric.point_count_formula(args.d, args.q)
        brute = quadric.count_points_bruteforce(args.d, spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(f"points={brute} formula={formula}")
    return 0 if brute == formula else 1


def cmd_report(args) -> int:
    if not args.all and not args.suite:
        print("error: select suites with --all or --suite", file=sys.stderr)
        return USAGE_ERROR
    qs = args.q or [3]
    for q in qs:
        _field_or_exit(q, args.modulus)
    modulus = _parse_modulus(args.modulus)
    names = list(suites.SUITE_NAMES) if args.all else args.suite
    reports = []
    failed = False
    for q in qs:
        for name in names:
            kwargs = {"modulus": modulus, "seed": args.seed}
            if name in ("quadric", "sp4"):
                kwargs["samples"] = args.samples or (25 if name == "quadric" else 10)
            if name in ("quadric", "sl3", "sp4", "mirabolic"):
                kwargs["budget"] = args.budget
            try:
                rep = suites.run_suite(name, q, **kwargs)
            except ValueError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return USAGE_ERROR
            reports.append(rep)
            failed |= not rep.passed
    body = render_aggregate_json(reports, args.seed)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadfourier",
        description="Exact verification of finite-field Fourier transforms "
        "on quadric cones and flag-coset models.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common_field(p):
        p.add_argument("--q", type=int, default=3, help="field size (prime power)")
        p.add_argument(
            "--modulus",
            default=None,
            help="little-endian mod-p coefficients of the field modulus, e.g. 1,0,1",
        )

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument(
        "--suite",
        required=True,
        choices=list(suites.SUITE_NAMES) + ["all"],
    )
    common_field(pv)
    pv.add_argument("--d", type=int, default=2, help="quadric dimension")
    pv.add_argument("--n", type=int, default=None, help="mirabolic block size")
    pv.add_argument("--samples", type=int, default=None)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--budget", type=int, default=None, help="max enumerated points")
    pv.add_argument("--out", default=None, help="write the JSON report here")
    pv.add_argument("--format", choices=["text", "json"], default="text")
    pv.set_defaults(func=cmd_verify)

    pt = sub.add_parser("table", help="emit a CSV table")
    pt.add_argument("kind", choices=["kloosterman", "casesfor"])
    common_field(pt)
    pt.add_argument("--d", type=int, default=2)
    pt.add_argument("--budget", type=int, default=None)
    pt.add_argument("--out", default=None)
    pt.add_argument("--format", choices=["csv"], default="csv")
    pt.set_defaults(func=cmd_table)

    pc = sub.add_parser("count", help="count quadric points")
    pc.add_argument("what", choices=["points"])
    common_field(pc)
    pc.add_argument("--d", type=int, default=2)
    pc.set_defaults(func=cmd_count)

    pr = sub.add_parser("report", help="aggregated JSON report over suites")
    pr.add_argument("--all", action="store_true")
    pr.add_argument("--suite", action="append", choices=list(suites.SUITE_NAMES))
    pr.add_argument("--q", type=int, action="append")
    pr.add_argument("--modulus", default=None)
    pr.add_argument("--samples", type=int, default=None)
    pr.add_argument("--seed", type=int, default=0)
    pr.add_argument("--budget", type=int, default=None)
    pr.add_argument("--out", default=None)
    pr.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
