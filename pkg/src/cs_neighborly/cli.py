"""Command-line entry point: ``cs-neighborly <command> ...``.

Exit codes: 0 ok, 2 parse error, 3 rank deficiency, 4 size guard,
5 failed precondition.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import combinatorics as comb
from .constructions import (
    DEFAULT_PRECISION,
    gg_margin,
    kashin_configuration,
    sample_gaussian_configuration,
)
from .core import DUAL_FACE_SCAN, DUAL_SIGN_ENUM, PRIMAL_ORACLE, max_neighborliness_primal
from .dominance import max_neighborliness, subspace_ratio
from .errors import CsNeighborlyError, ParseError
from .harness import ExperimentSpec, rows_to_csv, run_kcurve
from .io import (
    configuration_to_dict,
    dumps,
    family_to_json,
    fraction_str,
    load_configuration,
    load_family,
    report_to_dict,
    save_configuration,
)
from .transform import cs_transform, inverse_transform, primal_of, transform_of

METHODS = {"dual-face": DUAL_FACE_SCAN, "dual-sign": DUAL_SIGN_ENUM, "primal": PRIMAL_ORACLE, "both": "both"}
CROSS_CHECK_MAX_M = 8


def parse_range(text: str) -> tuple[int, ...]:
    """"4", "2..5" (inclusive) or "2,3,7"."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            vals = tuple(range(int(lo), int(hi) + 1))
        else:
            vals = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ParseError(f"bad range {text!r}") from exc
    if not vals:
        raise ParseError(f"empty range {text!r}")
    return vals


def _emit(obj, out: str | None) -> None:
    text = dumps(obj)
    print(text)
    if out:
        Path(out).write_text(text + "\n")


def cmd_transform(args) -> int:
    c = load_configuration(args.input)
    t = cs_transform(c) if c.role == "primal" else inverse_transform(c)
    save_configuration(t, args.output)
    return 0


def cmd_certify(args) -> int:
    c = load_configuration(args.input)
    method = METHODS[args.method]
    if method == PRIMAL_ORACLE:
        rep = max_neighborliness_primal(primal_of(c), args.max_k)
    else:
        first = DUAL_FACE_SCAN if method == "both" else method
        rep = max_neighborliness(c, first, args.max_k, args.force)
        if method == "both":
            other = max_neighborliness(c, DUAL_SIGN_ENUM, args.max_k, args.force)
            if other.k_max != rep.k_max:
                raise AssertionError(f"dual methods disagree: {rep.k_max} != {other.k_max}")
    out = report_to_dict(rep, c.m)
    if args.cross_check:
        if c.m <= CROSS_CHECK_MAX_M:
            k_primal = max_neighborliness_primal(primal_of(c), args.max_k).k_max
            out["cross_check"] = {"primal_k_max": k_primal, "agree": k_primal == rep.k_max}
            if k_primal != rep.k_max:
                _emit(out, args.out)
                return 1
        else:
            out["cross_check"] = {"skipped": f"m = {c.m} > {CROSS_CHECK_MAX_M}"}
    _emit(out, args.out)
    return 0


def cmd_kcurve(args) -> int:
    spec = ExperimentSpec(
        d_values=parse_range(args.d),
        n_values=parse_range(args.n),
        trials=args.trials,
        seed=args.seed,
        method=METHODS[args.method],
        output=args.out,
        precision=args.precision,
        cross_check=args.cross_check,
        max_k=args.max_k,
        timing=args.timing,
    )
    text = rows_to_csv(run_kcurve(spec, args.threads), spec.timing)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_family(args) -> int:
    fam = comb.greedy_family(args.m, args.s, args.order, args.seed)
    _emit(family_to_json(fam.members), args.out)
    return 0


def cmd_pack(args) -> int:
    c = primal_of(load_configuration(args.config))
    members = load_family(args.family)
    if any(len(a) != args.s for a in members):
        raise ParseError(f"every family member must have {args.s} elements")
    fam = comb.SetFamily(c.m, args.s, tuple(members))
    rep = comb.translate_packing_check(c, args.s, fam)
    print(rep.summary())
    return 0 if rep.passed else 1


def cmd_bound(args) -> int:
    print(comb.nonexistence_bound(args.d, args.m, args.s))
    return 0


def cmd_sample(args) -> int:
    if args.kashin is not None:
        t = kashin_configuration(args.kashin, args.seed)
    else:
        if args.m is None or args.n is None:
            raise ParseError("sample needs --m and --n (or --kashin D)")
        t = sample_gaussian_configuration(args.m, args.n, args.seed, args.precision)
    if args.primal:
        t = inverse_transform(t)
    if args.out:
        save_configuration(t, args.out)
    else:
        print(dumps(configuration_to_dict(t)))
    return 0


def cmd_gelfand(args) -> int:
    t = transform_of(load_configuration(args.config))
    r = subspace_ratio(t, args.s, args.method)
    _emit({"s": args.s, "ratio": fraction_str(r), "ratio_float": float(r), "dominant_at_s": r >= 0.5}, args.out)
    return 0


def cmd_distortion(args) -> int:
    t = transform_of(load_configuration(args.config))
    rep = gg_margin(t, args.d, args.samples, args.seed)
    out = {
        "mode": rep.mode,
        "distortion": rep.value,
        "implied_constant": rep.implied_constant,
        "samples": rep.samples,
    }
    if rep.squared is not None:
        out["distortion_squared"] = fraction_str(rep.squared)
    _emit(out, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cs-neighborly", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("transform", help="write the cs transform (or its inverse for transform files)")
    s.add_argument("input")
    s.add_argument("output")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("certify", help="exact neighborliness with a dominance witness")
    s.add_argument("input")
    s.add_argument("--max-k", type=int, default=None)
    s.add_argument("--method", choices=sorted(METHODS), default="dual-face")
    s.add_argument("--cross-check", action="store_true")
    s.add_argument("--force", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("kcurve", help="CSV table of sampled neighborliness per (d, n)")
    s.add_argument("--d", required=True, help="e.g. 4, 2..5 or 2,4")
    s.add_argument("--n", required=True)
    s.add_argument("--trials", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--method", choices=sorted(METHODS), default="dual-face")
    s.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    s.add_argument("--cross-check", action="store_true")
    s.add_argument("--max-k", type=int, default=None)
    s.add_argument("--threads", type=int, default=None)
    s.add_argument("--timing", action="store_true", help="fill the seconds column (not reproducible)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_kcurve)

    s = sub.add_parser("family", help="greedy bounded-intersection family")
    s.add_argument("m", type=int)
    s.add_argument("s", type=int)
    s.add_argument("order", nargs="?", choices=[comb.LEX, comb.SEEDED_SHUFFLE], default=comb.LEX)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("pack", help="verify the translate packing for a family")
    s.add_argument("config")
    s.add_argument("s", type=int)
    s.add_argument("family")
    s.set_defaults(func=cmd_pack)

    s = sub.add_parser("bound", help="counting nonexistence test")
    s.add_argument("d", type=int)
    s.add_argument("m", type=int)
    s.add_argument("s", type=int)
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("sample", help="Gaussian or Kashin transform configuration")
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--kashin", type=int, metavar="D")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    s.add_argument("--primal", action="store_true", help="write the inverse transform instead")
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)

    s = sub.add_parser("gelfand", help="sup |||x|||_s / ||x||_1 over the subspace")
    s.add_argument("config")
    s.add_argument("s", type=int)
    s.add_argument("--method", choices=["gauge", "cells", "vertices"], default="gauge")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gelfand)

    s = sub.add_parser("distortion", help="sup ||x||_2 / ||x||_1 and the implied rate constant")
    s.add_argument("config")
    s.add_argument("--d", type=int, default=None)
    s.add_argument("--samples", type=int, default=20000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_distortion)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CsNeighborlyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
