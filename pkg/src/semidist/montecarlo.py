"""Monte Carlo verification of coverage and size.

Each replication j draws its sample from a stream derived from
(seed, j), so reports are reproducible and independent of how the
replications are partitioned across workers.  Gates use 4-sigma
binomial bands around the nominal level, which keeps the false-alarm
probability of a passing implementation below 1e-4.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Sequence

from .framework import (
    Hypothesis,
    TestProblem,
    confidence_region,
    quantity_value,
    rejection_region,
)
from .measurement import Sample, State, TwoSampleState, sample, stream

__all__ = [
    "ExperimentPlan",
    "ExperimentReport",
    "coverage_experiment",
    "size_experiment",
    "power_curve",
]


@dataclass(frozen=True)
class ExperimentPlan:
    """One experiment: a problem, the true state, the level (gamma for
    coverage, alpha for size/power), the replication count and the seed.
    A hypothesis is present exactly for size and power runs."""

    problem: TestProblem
    truth: State | TwoSampleState
    level: float
    replications: int
    seed: int
    hypothesis: Hypothesis | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"level must lie in (0, 1), got {self.level!r}")
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")
        if self.problem.two_sample != isinstance(self.truth, TwoSampleState):
            raise ValueError("truth does not match the problem's sample structure")


@dataclass(frozen=True)
class ExperimentReport:
    hits: int
    replications: int
    rate: float
    band: tuple[float, float]
    passed: bool
    seed: int


def _binomial_band(p: float, j: int) -> tuple[float, float]:
    half = 4.0 * math.sqrt(p * (1.0 - p) / j)
    return p - half, p + half


def _draw(plan: ExperimentPlan, j: int) -> Sample:
    return sample(
        plan.truth,
        plan.problem.n,
        plan.problem.m,
        rng=stream(plan.seed, j),
    )


def _coverage_hits(plan: ExperimentPlan, start: int, stop: int) -> int:
    target = quantity_value(plan.problem, plan.truth)
    hits = 0
    for j in range(start, stop):
        region = confidence_region(plan.problem, _draw(plan, j), plan.level)
        hits += region.contains(target)
    return hits


def _rejection_hits(plan: ExperimentPlan, start: int, stop: int) -> int:
    region = rejection_region(plan.problem, plan.hypothesis, plan.level)
    hits = 0
    for j in range(start, stop):
        hits += region.contains(_draw(plan, j))
    return hits


def _run_chunked(plan: ExperimentPlan, counter, workers: int) -> int:
    j = plan.replications
    if workers <= 1 or j < 2 * workers:
        return counter(plan, 0, j)
    bounds = [round(k * j / workers) for k in range(workers + 1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(counter, plan, bounds[k], bounds[k + 1])
            for k in range(workers)
        ]
        return sum(f.result() for f in futures)


def coverage_experiment(plan: ExperimentPlan, workers: int = 1) -> ExperimentReport:
    """Fraction of replications whose confidence region covers the true
    quantity value; passes when the rate is no more than 4 binomial
    sigmas below the nominal gamma (conservative entries may exceed it).
    """
    if plan.hypothesis is not None:
        raise ValueError("coverage plans take no hypothesis")
    hits = _run_chunked(plan, _coverage_hits, workers)
    rate = hits / plan.replications
    band = _binomial_band(plan.level, plan.replications)
    return ExperimentReport(
        hits, plan.replications, rate, band, rate >= band[0], plan.seed
    )


def size_experiment(plan: ExperimentPlan, workers: int = 1) -> ExperimentReport:
    """Fraction of replications rejected under a true-null state; passes
    when the rate is no more than 4 binomial sigmas above alpha."""
    if plan.hypothesis is None:
        raise ValueError("size plans need a hypothesis")
    truth_value = quantity_value(plan.problem, plan.truth)
    if not plan.hypothesis.holds_at(truth_value):
        raise ValueError(
            f"truth has quantity value {truth_value!r}, outside the null"
        )
    hits = _run_chunked(plan, _rejection_hits, workers)
    rate = hits / plan.replications
    band = _binomial_band(plan.level, plan.replications)
    return ExperimentReport(
        hits, plan.replications, rate, band, rate <= band[1], plan.seed
    )


def power_curve(
    plan: ExperimentPlan,
    truth_grid: Sequence[State | TwoSampleState],
    workers: int = 1,
) -> list[ExperimentReport]:
    """Rejection rate across a grid of true states (null or not); the
    band is descriptive (4 sigmas around the observed rate) and every
    report passes by construction.
    """
    if plan.hypothesis is None:
        raise ValueError("power plans need a hypothesis")
    if not truth_grid:
        raise ValueError("empty truth grid")
    reports = []
    for truth in truth_grid:
        point = replace(plan, truth=truth)
        hits = _run_chunked(point, _rejection_hits, workers)
        rate = hits / point.replications
        band = _binomial_band(rate, point.replications) if 0.0 < rate < 1.0 else (rate, rate)
        reports.append(
            ExperimentReport(hits, point.replications, rate, band, True, point.seed)
        )
    return reports
