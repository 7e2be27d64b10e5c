"""Sweep sampled neighborliness over a (d, n) grid and write a CSV table.

    python3 scripts/kcurve_sweep.py --d 2..6 --n 1..4 --trials 20 --out kcurve.csv
"""
import argparse
import sys

from cs_neighborly.cli import METHODS, parse_range
from cs_neighborly.harness import ExperimentSpec, rows_to_csv, run_kcurve


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--d", default="2..5")
    p.add_argument("--n", default="1..3")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=sorted(METHODS), default="dual-face")
    p.add_argument("--precision", type=int, default=2**20)
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--cross-check", action="store_true")
    p.add_argument("--out")
    args = p.parse_args(argv)
    spec = ExperimentSpec(
        d_values=parse_range(args.d),
        n_values=parse_range(args.n),
        trials=args.trials,
        seed=args.seed,
        method=METHODS[args.method],
        precision=args.precision,
        cross_check=args.cross_check,
        max_k=args.max_k,
        output=args.out,
    )
    text = rows_to_csv(run_kcurve(spec, args.threads))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
