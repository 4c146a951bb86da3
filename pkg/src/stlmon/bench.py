"""Benchmark harness: chirp input, timing cells, and the standard suite.

The input signal is a chirp whose instantaneous frequency falls linearly
from ``f0`` to ``f1`` over the duration:

    x(t) = sin(2*pi*(f0*t + (f1 - f0)*t^2 / (2*T))),   T = duration

so the phase derivative is 2*pi*(f0 + (f1 - f0)*t/T), equal to 2*pi*f1 at
t = T.  The default benchmark samples it at 1 Hz for 20,000 samples.
"""

from __future__ import annotations

import math
import statistics
import time
from dataclasses import dataclass, asdict

import numpy as np

from .engine import Algorithm, Monitor, Semantics, Step

#: Standard benchmark formulas over the chirp signal "x".
SUITE_FORMULAS = {
    "phi1": "(x < 0.5) && (x > -0.5)",
    "phi2": "G[0, 1000] (x > 0.5 -> F[0, 100] (x < 0))",
    "phi3": "(x < 0.5) U[0, 1000] (x < 0)",
}

#: Sweep upper bounds: 1 plus 100..5000 in steps of 100.
SWEEP_BOUNDS = [1] + list(range(100, 5001, 100))

#: RoSI sweeps are capped here; beyond it the runtime is prohibitive.
ROSI_SWEEP_CAP = 1000


@dataclass(frozen=True)
class ChirpSpec:
    f0: float = 0.1
    f1: float = 1e-4
    duration: float = 20000.0
    sample_rate: float = 1.0

    def __post_init__(self):
        if self.f0 <= 0 or self.f1 <= 0 or self.duration <= 0 or self.sample_rate <= 0:
            raise ValueError("chirp parameters must be positive")


def generate_chirp(spec: ChirpSpec = ChirpSpec()) -> list[Step]:
    """Sample the chirp at t = k/rate for duration*rate samples, signal "x"."""
    count = int(round(spec.duration * spec.sample_rate))
    t = np.arange(count) / spec.sample_rate
    phase = 2.0 * math.pi * (spec.f0 * t + (spec.f1 - spec.f0) * t * t / (2.0 * spec.duration))
    values = np.sin(phase)
    times = t.tolist()
    vals = values.tolist()
    return [Step("x", vals[k], times[k]) for k in range(count)]


@dataclass(frozen=True)
class BenchResult:
    formula: str
    semantics: str
    algorithm: str
    samples: int
    runs: int
    per_sample_mean: float  # microseconds
    per_sample_std: float  # microseconds
    cache_avg: float
    cache_max: int

    def to_dict(self) -> dict:
        return asdict(self)


def run_cell(
    formula: str,
    semantics,
    steps: list[Step],
    runs: int = 50,
    algorithm=Algorithm.INCREMENTAL,
    variables=None,
    warmup: bool = True,
) -> BenchResult:
    """Time one (formula, semantics) cell over a prepared step list.

    Feeds a fresh monitor per run, timing each update; reports the mean and
    standard deviation of the per-run per-sample means, in microseconds.
    The warm-up run is excluded from the statistics.
    """
    semantics = Semantics.from_tag(semantics)
    algorithm = Algorithm.from_tag(algorithm)
    run_means: list[float] = []
    stats = None
    total = max(1, runs) + (1 if warmup else 0)
    for run in range(total):
        monitor = Monitor(formula, semantics=semantics, algorithm=algorithm, variables=variables)
        elapsed = 0.0
        clock = time.perf_counter
        for step in steps:
            t0 = clock()
            monitor.update(step)
            elapsed += clock() - t0
        if warmup and run == 0:
            continue
        run_means.append(elapsed / len(steps) * 1e6)
        stats = monitor.cache_stats()
    mean = statistics.fmean(run_means)
    std = statistics.stdev(run_means) if len(run_means) > 1 else 0.0
    return BenchResult(
        formula=formula,
        semantics=semantics.value,
        algorithm=algorithm.value,
        samples=len(steps),
        runs=len(run_means),
        per_sample_mean=mean,
        per_sample_std=std,
        cache_avg=stats.average,
        cache_max=stats.maximum,
    )


def suite_cells(semantics_filter: str = "all") -> list[tuple[str, Semantics]]:
    """(formula, semantics) cells of the standard suite, sweeps included."""
    if semantics_filter == "all":
        semantics = list(Semantics)
    else:
        semantics = [Semantics.from_tag(semantics_filter)]
    cells: list[tuple[str, Semantics]] = []
    for name, formula in SUITE_FORMULAS.items():
        for sem in semantics:
            cells.append((formula, sem))
    for b in SWEEP_BOUNDS:
        for template in (f"G[0, {b}] (x > 0)", f"F[0, {b}] (x > 0)", f"(x > 0) U[0, {b}] (x < 0)"):
            for sem in semantics:
                if sem is Semantics.ROSI and b > ROSI_SWEEP_CAP:
                    continue
                cells.append((template, sem))
    return cells


def run_suite(
    samples: int = 20000,
    runs: int = 50,
    semantics_filter: str = "all",
    algorithm=Algorithm.INCREMENTAL,
    filter_substring: str | None = None,
    progress=None,
) -> list[BenchResult]:
    """Run the standard suite; cells execute sequentially."""
    spec = ChirpSpec(duration=float(samples))
    steps = generate_chirp(spec)
    results = []
    cells = suite_cells(semantics_filter)
    if filter_substring:
        cells = [c for c in cells if filter_substring in c[0]]
    for formula, sem in cells:
        if progress:
            progress(formula, sem)
        results.append(run_cell(formula, sem, steps, runs=runs, algorithm=algorithm))
    return results


REPORT_SCHEMA = "stlmon-bench-report/v1"


def report_to_dict(results: list[BenchResult]) -> dict:
    return {"schema": REPORT_SCHEMA, "results": [r.to_dict() for r in results]}


def format_table(results: list[BenchResult]) -> str:
    header = (
        f"{'formula':<40} {'semantics':<22} {'algo':<12} "
        f"{'mean us':>10} {'std us':>9} {'K avg':>10} {'K max':>8}"
    )
    lines = [header, "-" * len(header)]
    for r in results:
        lines.append(
            f"{r.formula:<40.40} {r.semantics:<22} {r.algorithm:<12} "
            f"{r.per_sample_mean:>10.3f} {r.per_sample_std:>9.3f} "
            f"{r.cache_avg:>10.1f} {r.cache_max:>8}"
        )
    return "\n".join(lines)
