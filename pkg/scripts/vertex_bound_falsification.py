"""Look for 2-neighborly cs d-polytopes with more than 2^d vertices.

None should exist; every hit is printed and makes the exit status nonzero.
Samples are Gaussian transforms with m = d + n vectors, m > 2^(d-1).

    python3 scripts/vertex_bound_falsification.py --trials 200
"""
import argparse
import sys
from collections import Counter

from cs_neighborly.constructions import sample_gaussian_configuration
from cs_neighborly.dominance import max_neighborliness
from cs_neighborly.harness import trial_seed
from cs_neighborly.transform import is_valid_vertex_transform

CELLS = [(2, m) for m in range(3, 11)] + [(3, m) for m in range(5, 9)] + [(4, m) for m in range(9, 12)]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=5)
    p.add_argument("--precision", type=int, default=2**16)
    args = p.parse_args(argv)
    hits = 0
    print("d,m,trials,valid,k_hist")
    for d, m in CELLS:
        hist = Counter()
        valid = 0
        for trial in range(args.trials):
            t = sample_gaussian_configuration(m, m - d, trial_seed(args.seed, d, m - d, trial), args.precision)
            valid += is_valid_vertex_transform(t) is None
            k = max_neighborliness(t, max_k=2).k_max
            hist[k] += 1
            if k >= 2:
                hits += 1
                print(f"# HIT d={d} m={m} trial={trial}", file=sys.stderr)
        cells = " ".join(f"{k}:{v}" for k, v in sorted(hist.items()))
        print(f"{d},{m},{args.trials},{valid},{cells}")
    return 1 if hits else 0


if __name__ == "__main__":
    sys.exit(main())
