"""Empirical k(d, n) sweeps over Gaussian transform samples.

Every trial draws its own seed from (seed, d, n, trial) so results do not
depend on how cells are scheduled across workers.
"""
from __future__ import annotations

import csv
import io
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .constructions import DEFAULT_PRECISION, sample_gaussian_configuration
from .core import DUAL_FACE_SCAN, DUAL_SIGN_ENUM, PRIMAL_ORACLE, max_neighborliness_primal
from .dominance import max_neighborliness
from .transform import inverse_transform, is_valid_vertex_transform

CSV_COLUMNS = ["d", "n", "m", "trials", "k_min", "k_med", "k_max", "valid_frac", "seconds"]
CROSS_CHECK_MAX_M = 7
THREADS_ENV = "CS_NEIGHBORLY_THREADS"


@dataclass(frozen=True)
class ExperimentSpec:
    d_values: tuple[int, ...]
    n_values: tuple[int, ...]
    trials: int = 10
    seed: int = 0
    method: str = DUAL_FACE_SCAN
    output: Optional[str] = None
    precision: int = DEFAULT_PRECISION
    command: str = "kcurve"
    cross_check: bool = False
    max_k: Optional[int] = None
    timing: bool = False

    def __post_init__(self):
        if not self.d_values or not self.n_values:
            raise ValueError("d and n ranges must be nonempty")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if min(self.d_values) < 1 or min(self.n_values) < 1:
            raise ValueError("d and n must be positive")


@dataclass(frozen=True)
class KTableRow:
    d: int
    n: int
    m: int
    trials: int
    k_values: tuple[int, ...]
    valid_frac: float
    seconds: float = 0.0

    @property
    def k_min(self):
        return min(self.k_values) if self.k_values else None

    @property
    def k_max(self):
        return max(self.k_values) if self.k_values else None

    @property
    def k_med(self):
        return statistics.median(self.k_values) if self.k_values else None

    def csv_fields(self, timing: bool) -> list[str]:
        def fmt(x):
            return "" if x is None else f"{x:g}"

        return [
            str(self.d),
            str(self.n),
            str(self.m),
            str(self.trials),
            fmt(self.k_min),
            fmt(self.k_med),
            fmt(self.k_max),
            f"{self.valid_frac:g}",
            f"{self.seconds:.3f}" if timing else "",
        ]


def trial_seed(seed: int, d: int, n: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, d, n, trial]).generate_state(1, dtype=np.uint64)[0])


def certify_k(t, method: str, max_k: Optional[int] = None) -> int:
    if method == PRIMAL_ORACLE:
        return max_neighborliness_primal(inverse_transform(t), max_k).k_max
    if method == "both":
        a = max_neighborliness(t, DUAL_FACE_SCAN, max_k).k_max
        b = max_neighborliness(t, DUAL_SIGN_ENUM, max_k).k_max
        if a != b:
            raise AssertionError(f"dual methods disagree: {a} != {b}")
        return a
    return max_neighborliness(t, method, max_k).k_max


def run_cell(spec: ExperimentSpec, d: int, n: int) -> KTableRow:
    start = time.perf_counter()
    m = d + n
    ks = []
    for trial in range(spec.trials):
        t = sample_gaussian_configuration(m, n, trial_seed(spec.seed, d, n, trial), spec.precision)
        if is_valid_vertex_transform(t) is not None:
            continue
        k = certify_k(t, spec.method, spec.max_k)
        if spec.cross_check and m <= CROSS_CHECK_MAX_M:
            kp = max_neighborliness_primal(inverse_transform(t), spec.max_k).k_max
            if kp != k:
                raise AssertionError(f"cross-check failed at d={d} n={n} trial={trial}: {k} != {kp}")
        ks.append(k)
    return KTableRow(d, n, m, spec.trials, tuple(ks), len(ks) / spec.trials, time.perf_counter() - start)


def _run_cell_args(args):
    return run_cell(*args)


def thread_cap(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        return max(1, explicit)
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def run_kcurve(spec: ExperimentSpec, threads: Optional[int] = None) -> list[KTableRow]:
    cells = [(spec, d, n) for d in spec.d_values for n in spec.n_values]
    workers = min(thread_cap(threads), len(cells))
    if workers <= 1:
        return [run_cell(*c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order
        return list(pool.map(_run_cell_args, cells))


def rows_to_csv(rows: Sequence[KTableRow], timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.csv_fields(timing))
    return buf.getvalue()
