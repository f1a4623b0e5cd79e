"""Benchmark harness: repeated z-rotation synthesis, one aggregated row per ε."""

from __future__ import annotations

import csv
import json
import random
import statistics
from dataclasses import dataclass, field
from fractions import Fraction
from typing import IO, Iterable, Sequence

from .approx import Limits, SynthesisError, as_fraction, min_k, synthesize_rz
from .exact import evaluate_word
from .highprec import RealLike
from .verify import SynthStats, op_norm_error

__all__ = ["BenchRow", "RECORD_FIELDS", "benchmark", "run_once", "write_table", "write_jsonl"]

RECORD_FIELDS = (
    "epsilon",
    "k",
    "t_count",
    "error_bound",
    "runtime_s",
    "candidates",
    "time_per_candidate_s",
)


@dataclass
class BenchRow:
    epsilon: Fraction
    k: int  # largest final k over the runs
    k_initial: int
    t_count: int  # largest over the runs
    error_bound: float  # largest certified bound over the runs
    runtime_s: float  # mean
    candidates: float  # mean
    time_per_candidate_s: float
    runs: int
    failures: int = 0
    error: str | None = None
    per_run: list[SynthStats] = field(default_factory=list, repr=False)

    def record(self) -> dict:
        return {
            "epsilon": float(self.epsilon),
            "k": self.k,
            "t_count": self.t_count,
            "error_bound": self.error_bound,
            "runtime_s": self.runtime_s,
            "candidates": self.candidates,
            "time_per_candidate_s": self.time_per_candidate_s,
        }

    def median_candidates(self) -> float:
        return statistics.median(s.candidates_tried for s in self.per_run)


def run_once(theta: RealLike, epsilon, seed: int, limits: Limits | None = None) -> SynthStats:
    """One synthesis, with the emitted word re-evaluated and re-verified."""
    res = synthesize_rz(theta, epsilon, random.Random(seed), limits)
    u = evaluate_word(res.word)
    if u != res.unitary:
        raise AssertionError("emitted word does not evaluate to the synthesized operator")
    bound = op_norm_error(u, theta)
    if not bound.surely_le(as_fraction(epsilon)):
        raise AssertionError(f"verification failed: bound {bound} > {epsilon}")
    res.stats.error_bound = bound
    return res.stats


def benchmark(
    theta: RealLike,
    epsilons: Sequence,
    runs: int,
    rng: random.Random | int | None = 0,
    limits: Limits | None = None,
) -> list[BenchRow]:
    """Run ``runs`` independent syntheses per ε and aggregate them into one row each.

    Each run gets its own seed drawn from ``rng``. A failing run is counted
    in ``failures`` and noted in ``error`` without aborting the table.
    """
    if rng is None or isinstance(rng, int):
        rng = random.Random(rng)
    rows = []
    for eps in epsilons:
        eps = as_fraction(eps)
        stats: list[SynthStats] = []
        failures = 0
        err = None
        for _ in range(runs):
            seed = rng.getrandbits(64)
            try:
                stats.append(run_once(theta, eps, seed, limits))
            except (SynthesisError, AssertionError) as e:
                failures += 1
                err = f"{type(e).__name__}: {e}"
        if stats:
            mean_t = statistics.fmean(s.wall_time for s in stats)
            mean_c = statistics.fmean(s.candidates_tried for s in stats)
            row = BenchRow(
                eps,
                max(s.k for s in stats),
                stats[0].k_initial,
                max(s.t_count for s in stats),
                max(float(s.error_bound) for s in stats),
                mean_t,
                mean_c,
                mean_t / mean_c if mean_c else 0.0,
                runs,
                failures,
                err,
                stats,
            )
        else:
            k0 = min_k(eps)
            row = BenchRow(eps, k0, k0, 0, float("nan"), 0.0, 0.0, 0.0, runs, failures, err, [])
        rows.append(row)
    return rows


def write_table(rows: Iterable[BenchRow], fh: IO[str], delimiter: str = ",") -> None:
    w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
    w.writerow(RECORD_FIELDS)
    for r in rows:
        rec = r.record()
        w.writerow([_fmt(rec[f]) for f in RECORD_FIELDS])


def write_jsonl(rows: Iterable[BenchRow], fh: IO[str]) -> None:
    for r in rows:
        fh.write(json.dumps(r.record()) + "\n")


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)
