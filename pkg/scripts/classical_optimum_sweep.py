#!/usr/bin/env python3
"""Best classical orientation versus HCP strength for one pulse ordering.

The optimized objective saturates once p_a is a few units: the sweep
shows the plateau and how the optimal aligning strength and delays
scale with 1/p_a along it.
"""
import argparse
import sys

from rotorkick import (CSV_HEADER, Branch, Engine, OptimizationProblem,
                       PulseOrder, result_csv_row, sweep)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", default="laser-first",
                    choices=[o.value for o in PulseOrder])
    ap.add_argument("--branch", default="prompt",
                    choices=[b.value for b in Branch])
    ap.add_argument("--pa-list", default="5,10,20,50,100",
                    help="comma-separated ascending HCP strengths")
    ap.add_argument("--starts", type=int, default=0,
                    help="extra random optimizer starts per point")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--out", default=None, help="CSV path (default stdout)")
    args = ap.parse_args(argv)

    p_as = [float(s) for s in args.pa_list.split(",")]
    template = OptimizationProblem(engine=Engine.CLASSICAL,
                                   order=PulseOrder(args.order),
                                   p_a=p_as[0], branch=Branch(args.branch))
    rows = sweep(template, p_as, extra_starts=args.starts, seed=args.seed)

    lines = [CSV_HEADER]
    for row in rows:
        if row.error is not None:
            lines.append(f"# skipped p_a={row.p_a:g}: {row.error}")
        else:
            lines.append(result_csv_row(row.result))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
