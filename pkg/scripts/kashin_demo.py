"""Certify the e_i / Ue_i configuration for a few random orthogonal U.

Prints the exact neighborliness (both dual methods), the sampled Kashin
margin and the l2/l1 distortion of the subspace for each seed.

    python3 scripts/kashin_demo.py --d 3 4 --seeds 0 1 2
"""
import argparse

from cs_neighborly.constructions import (
    gg_margin,
    kashin_configuration,
    kashin_margin,
    random_orthogonal,
)
from cs_neighborly.core import DUAL_FACE_SCAN, DUAL_SIGN_ENUM
from cs_neighborly.dominance import max_neighborliness
from cs_neighborly.transform import is_valid_vertex_transform


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--d", type=int, nargs="+", default=[2, 3, 4])
    p.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    p.add_argument("--samples", type=int, default=5000)
    args = p.parse_args(argv)
    print("d,seed,valid,k_face,k_sign,kashin_margin,distortion,implied_constant")
    for d in args.d:
        for seed in args.seeds:
            t = kashin_configuration(d, seed)
            valid = is_valid_vertex_transform(t) is None
            kf = max_neighborliness(t, DUAL_FACE_SCAN).k_max
            ks = max_neighborliness(t, DUAL_SIGN_ENUM).k_max
            km = kashin_margin(random_orthogonal(d, seed), args.samples, seed)
            g = gg_margin(t, samples=args.samples, seed=seed)
            print(f"{d},{seed},{valid},{kf},{ks},{km.value:.4f},{g.value:.4f},{g.implied_constant:.4f}")


if __name__ == "__main__":
    main()
