"""Tabulate the exact s-ratio of a sampled subspace against the 1/2 threshold.

For each s the ratio sup |||x|||_s / ||x||_1 is printed next to whether
some s-set is dominant; the two columns must agree.

    python3 scripts/ratio_threshold.py --m 9 --n 3 --seed 0
"""
import argparse

from cs_neighborly.constructions import sample_gaussian_configuration
from cs_neighborly.dominance import euclidean_l1_distortion, min_dominant_size, subspace_ratio


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--m", type=int, default=9)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--precision", type=int, default=2**12)
    args = p.parse_args(argv)
    t = sample_gaussian_configuration(args.m, args.n, args.seed, args.precision)
    md = min_dominant_size(t)
    dist = euclidean_l1_distortion(t)
    print(f"m={t.m} n={t.dim} min_dominant={md} l2/l1 distortion={dist.value:.4f} (exact={dist.exact})")
    print("s,ratio,ratio_float,ratio>=1/2,dominant_s_set")
    for s in range(1, t.m + 1):
        r = subspace_ratio(t, s)
        print(f"{s},{r},{float(r):.6f},{r >= 0.5},{md is not None and s >= md}")


if __name__ == "__main__":
    main()
