"""Command-line interface.

Subcommands: bounds, estimate-k, estimate-km, arithmetic, verify, corpus gen.
Shared flags: --p --n --m --lambda --operator --corpus --seed --budget --tol
--out.  Exit code is nonzero whenever a registered invariant fails.
"""

from __future__ import annotations

import argparse
import json
import sys

from .corpus import default_corpus, disk_grid, homogeneous_corpus, moebius_corpus, save_corpus
from .harness import (ARITHMETIC_SCHEMA, BOUNDS_COLUMNS, BOUNDS_SCHEMA,
                      ExperimentConfig, SUITES, bounds_table, fmt_exp,
                      parse_exp, parse_operator, run_arithmetic, run_experiment,
                      verify_suite, write_csv)
from .spaces import SpaceSpec


def _float_list(s: str) -> tuple[float, ...]:
    return tuple(parse_exp(x) for x in s.split(","))


def _int_list(s: str) -> tuple[int, ...]:
    return tuple(int(x) for x in s.split(","))


def _add_grid_flags(sub, with_m: bool = False):
    sub.add_argument("--p", type=_float_list, default=(2.0,),
                     help="comma list of domain exponents (inf allowed)")
    sub.add_argument("--n", type=_int_list, default=(1,),
                     help="comma list of dimensions")
    sub.add_argument("--lambda", dest="lam", type=_float_list, default=(1.0,),
                     help="comma list of lambda values")
    if with_m:
        sub.add_argument("--m", type=_int_list, default=(2,),
                         help="comma list of homogeneity degrees")
    sub.add_argument("--operator", action="append", default=None,
                     help="operator descriptor (repeatable); default scalar identity")
    sub.add_argument("--corpus", default="default",
                     help="default | moebius | path to a corpus JSON")
    sub.add_argument("--truncation", type=int, default=60)
    sub.add_argument("--a-values", type=_float_list, default=None,
                     help="disk-automorphism parameters; 'grid' uses 0.10..0.99")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--budget", type=int, default=12)
    sub.add_argument("--tol", type=float, default=1e-9)
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--out", default=None, help="CSV output path")


def _config_from_args(args, ms=()) -> ExperimentConfig:
    a_values = args.a_values if args.a_values is not None else (0.3, 0.6, 0.9, 0.99)
    return ExperimentConfig(
        ps=args.p, ns=args.n, lams=args.lam, ms=tuple(ms),
        operators=tuple(args.operator or ["scalar"]),
        corpus=args.corpus, truncation=args.truncation, a_values=tuple(a_values),
        seed=args.seed, tol=args.tol, budget=args.budget, workers=args.workers,
        arithmetic=getattr(args, "arithmetic", False),
        envelopes=getattr(args, "envelopes", False), out=args.out)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="bohrlab",
                                     description="Bohr radius estimation laboratory")
    subs = parser.add_subparsers(dest="command", required=True)

    b = subs.add_parser("bounds", help="closed-form bound table over a grid")
    b.add_argument("--p", type=_float_list, default=(1.0, 2.0, 4.0, float("inf")))
    b.add_argument("--n", type=_int_list, default=(2, 4, 8, 16))
    b.add_argument("--lambda", dest="lam", type=_float_list, default=(1.5, 2.0))
    b.add_argument("--q", type=_float_list, default=(2.0,))
    b.add_argument("--opnorm", type=float, default=None)
    b.add_argument("--out", default=None)

    k = subs.add_parser("estimate-k", help="corpus upper estimates of K with formula lowers")
    _add_grid_flags(k)
    k.add_argument("--envelopes", action="store_true")
    k.add_argument("--arithmetic", action="store_true",
                   help="also emit arithmetic-radius rows")

    km = subs.add_parser("estimate-km", help="upper estimates of the homogeneous K_m")
    _add_grid_flags(km, with_m=True)

    a = subs.add_parser("arithmetic", help="arithmetic Bohr radius lower estimates")
    _add_grid_flags(a)

    v = subs.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", default="all",
                   help=f"one of {sorted(SUITES)} or 'all'")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--instances", type=int, default=None,
                   help="instance count for the lemma31 suite")
    v.add_argument("--out", default=None, help="write the JSON report here")

    c = subs.add_parser("corpus", help="corpus utilities")
    csubs = c.add_subparsers(dest="corpus_command", required=True)
    g = csubs.add_parser("gen", help="generate a corpus JSON file")
    g.add_argument("--kind", choices=("default", "moebius", "homogeneous"),
                   default="default")
    g.add_argument("--p", type=parse_exp, default=2.0)
    g.add_argument("--n", type=int, default=1)
    g.add_argument("--m", type=int, default=2, help="degree for homogeneous corpora")
    g.add_argument("--d", type=int, default=1, help="coefficient dimension")
    g.add_argument("--q", type=parse_exp, default=2.0, help="coefficient exponent")
    g.add_argument("--truncation", type=int, default=60)
    g.add_argument("--a-values", type=_float_list, default=None)
    g.add_argument("--size", type=int, default=4)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    args = parser.parse_args(argv)

    if args.command == "bounds":
        rows = bounds_table(args.p, args.n, args.lam, qs=args.q, opnorm=args.opnorm)
        if args.out:
            write_csv(args.out, BOUNDS_SCHEMA, BOUNDS_COLUMNS, rows)
            print(f"wrote {len(rows)} rows to {args.out}")
        else:
            print(",".join(BOUNDS_COLUMNS))
            for row in rows:
                print(",".join(str(x) for x in row))
        return 0

    if args.command == "estimate-k":
        result = run_experiment(_config_from_args(args))
        for row in result.rows:
            print(",".join(str(x) for x in row))
        for viol in result.violations:
            print(f"VIOLATION: {viol}", file=sys.stderr)
        if result.csv_path:
            print(f"wrote {len(result.rows)} rows to {result.csv_path}")
        return 0 if result.passed else 1

    if args.command == "estimate-km":
        result = run_experiment(_config_from_args(args, ms=args.m))
        for row in result.rows:
            print(",".join(str(x) for x in row))
        for viol in result.violations:
            print(f"VIOLATION: {viol}", file=sys.stderr)
        return 0 if result.passed else 1

    if args.command == "arithmetic":
        result = run_arithmetic(_config_from_args(args))
        for row in result.rows:
            print(",".join(str(x) for x in row))
        if result.csv_path:
            print(f"wrote {len(result.rows)} rows to {result.csv_path}")
        return 0

    if args.command == "verify":
        names = sorted(SUITES) if args.suite == "all" else [args.suite]
        reports = []
        ok = True
        for name in names:
            kwargs = {}
            if name == "lemma31" and args.instances:
                kwargs["instances"] = args.instances
            report = verify_suite(name, seed=args.seed, **kwargs)
            reports.append(report)
            status = "PASS" if report["passed"] else "FAIL"
            print(f"{status} {name}: {report['checks']} checks, "
                  f"{len(report['failures'])} failures")
            for f in report["failures"][:10]:
                print(f"  {f}", file=sys.stderr)
            ok = ok and report["passed"]
        if args.out:
            with open(args.out, "w") as fh:
                json.dump(reports, fh, indent=1)
        return 0 if ok else 1

    if args.command == "corpus" and args.corpus_command == "gen":
        codomain = SpaceSpec(args.q, args.d)
        if args.kind == "moebius":
            a_values = args.a_values if args.a_values is not None else disk_grid()
            corpus = moebius_corpus(a_values, args.truncation, args.n, args.p, codomain)
        elif args.kind == "homogeneous":
            corpus = homogeneous_corpus(args.m, args.n, args.p, codomain,
                                        count=args.size, seed=args.seed)
        else:
            corpus = default_corpus(args.n, args.p, codomain, seed=args.seed,
                                    truncation=args.truncation)
        save_corpus(corpus, args.out)
        print(f"wrote {len(corpus)} corpus members to {args.out}")
        return 0

    parser.error("unhandled command")
    return 2


if __name__ == "__main__":
    raise SystemExit(main())
