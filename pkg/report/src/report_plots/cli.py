"""The `report` command: results CSV in, labeled figure panels out."""

from __future__ import annotations

import argparse
import sys

from .render import CURVE_KINDS, PlotSpec, SchemaError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="report", description="Render figures from bohrlab results CSVs")
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        help="results CSV path (repeatable)")
    parser.add_argument("--group", default="p,lambda,operator",
                        help="comma list of panel grouping columns")
    parser.add_argument("--out", default="figures", help="output directory")
    parser.add_argument("--format", dest="fmt", choices=("png", "svg"),
                        default="png")
    parser.add_argument("--curves", default=",".join(CURVE_KINDS),
                        help="subset of lower,upper,envelopes")
    args = parser.parse_args(argv)

    try:
        spec = PlotSpec(inputs=tuple(args.inputs),
                        group=tuple(g.strip() for g in args.group.split(",") if g.strip()),
                        out_dir=args.out, fmt=args.fmt,
                        curves=tuple(c.strip() for c in args.curves.split(",") if c.strip()))
        reports = render(spec)
    except (SchemaError, ValueError, OSError) as err:
        print(f"report: {err}", file=sys.stderr)
        return 2

    for rep in reports:
        extras = f", {len(rep.reference_lines)} reference line(s)" \
            if rep.reference_lines else ""
        print(f"{rep.path}: {len(rep.series)} series{extras}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
