"""Normal measurement model: states, estimators and sampling.

A state is a point (mu, sigma) of R x R+.  Observing the model n times
yields a measured value x = (x_1, ..., x_n) of i.i.d. Normal(mu, sigma^2)
draws; two-sample problems observe two independent blocks.  The
estimator maps (sample mean, sum of squared deviations, and the two
standard-deviation scalings) and the pushforward probabilities of the
mean and SS statistics live here.

Sampling is stream-based: each (seed, replication) pair deterministically
derives an independent generator, so any partition of replications over
workers reproduces the sequential results exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .distributions import chi_squared, cdf, normal

__all__ = [
    "State",
    "TwoSampleState",
    "Sample",
    "stream",
    "sample",
    "mu_bar",
    "ss_bar",
    "sigma_bar",
    "sigma_bar_prime",
    "normal_prob",
    "image_prob_mean",
    "image_prob_ss",
]

Interval = tuple[float, float]


@dataclass(frozen=True)
class State:
    """A population state (mu, sigma) with sigma > 0."""

    mu: float
    sigma: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mu):
            raise ValueError(f"mu must be finite, got {self.mu!r}")
        if not (math.isfinite(self.sigma) and self.sigma > 0.0):
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")


@dataclass(frozen=True)
class TwoSampleState:
    """A pair of independent population states."""

    first: State
    second: State


@dataclass(frozen=True)
class Sample:
    """A measured value: one tuple of reals, plus a second block for
    two-sample problems."""

    values: tuple[float, ...]
    second: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.values) < 1:
            raise ValueError("sample must contain at least one value")
        if self.second is not None and len(self.second) < 1:
            raise ValueError("second block must contain at least one value")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def m(self) -> int | None:
        return None if self.second is None else len(self.second)


def stream(seed: int, replication: int = 0) -> np.random.Generator:
    """Reproducible generator for one replication, derived from (seed, j).

    Streams for distinct replications are statistically independent and
    do not depend on the order they are created in.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(replication,))
    return np.random.Generator(np.random.PCG64(ss))


def sample(
    state: State | TwoSampleState,
    n: int,
    m: int | None = None,
    *,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
) -> Sample:
    """Draw a measured value: n i.i.d. normal draws from ``state`` (and an
    independent block of m draws from the second state for two-sample
    problems).  Deterministic given ``seed``; pass ``rng`` instead to use
    an externally derived stream.
    """
    if (seed is None) == (rng is None):
        raise ValueError("exactly one of seed and rng must be given")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if rng is None:
        rng = stream(seed)
    if isinstance(state, TwoSampleState):
        if m is None or m < 1:
            raise ValueError(f"two-sample draw needs m >= 1, got {m}")
        x = rng.normal(state.first.mu, state.first.sigma, n)
        y = rng.normal(state.second.mu, state.second.sigma, m)
        return Sample(tuple(x.tolist()), tuple(y.tolist()))
    if m is not None:
        raise ValueError("m is only meaningful for a TwoSampleState")
    x = rng.normal(state.mu, state.sigma, n)
    return Sample(tuple(x.tolist()))


# ---------------------------------------------------------------------------
# Estimator maps
# ---------------------------------------------------------------------------


def mu_bar(values: Sequence[float]) -> float:
    """Arithmetic mean (x_1 + ... + x_n) / n."""
    if len(values) < 1:
        raise ValueError("mean of an empty sample")
    return math.fsum(values) / len(values)


def ss_bar(values: Sequence[float]) -> float:
    """Sum of squared deviations from the sample mean; 0 iff all equal."""
    if len(values) < 1:
        raise ValueError("sum of squares of an empty sample")
    center = mu_bar(values)
    return math.fsum((v - center) ** 2 for v in values)


def sigma_bar(values: Sequence[float]) -> float:
    """sqrt(SS / n): the n-denominator standard deviation."""
    return math.sqrt(ss_bar(values) / len(values))


def sigma_bar_prime(values: Sequence[float]) -> float:
    """sqrt(SS / (n - 1)): the (n-1)-denominator standard deviation.

    Tied to sigma_bar by sigma_bar = sqrt((n-1)/n) * sigma_bar_prime.
    """
    n = len(values)
    if n < 2:
        raise ValueError(f"sigma_bar_prime needs n >= 2, got n={n}")
    return math.sqrt(ss_bar(values) / (n - 1))


# ---------------------------------------------------------------------------
# Interval probabilities of the model and its images
# ---------------------------------------------------------------------------


def _as_intervals(interval: Interval | Iterable[Interval]) -> list[Interval]:
    if (
        isinstance(interval, tuple)
        and len(interval) == 2
        and all(isinstance(v, (int, float)) for v in interval)
    ):
        return [interval]
    out = list(interval)  # type: ignore[arg-type]
    if not out:
        raise ValueError("empty interval union")
    return out


def _normal_interval_mass(mu: float, sd: float, lo: float, hi: float) -> float:
    if hi <= lo:
        raise ValueError(f"empty interval ({lo!r}, {hi!r})")
    upper = 1.0 if hi == math.inf else cdf(normal(), (hi - mu) / sd)
    lower = 0.0 if lo == -math.inf else cdf(normal(), (lo - mu) / sd)
    return upper - lower


def normal_prob(state: State, interval: Interval | Iterable[Interval]) -> float:
    """Probability the single-draw observation lands in ``interval``.

    ``interval`` is an (a, b) pair (endpoints may be +-inf) or an
    iterable of disjoint pairs whose masses are summed.
    """
    return math.fsum(
        _normal_interval_mass(state.mu, state.sigma, lo, hi)
        for lo, hi in _as_intervals(interval)
    )


def image_prob_mean(
    state: State, n: int, interval: Interval | Iterable[Interval]
) -> float:
    """Probability that the n-sample mean lands in ``interval``.

    The mean of n draws is Normal(mu, sigma/sqrt(n)).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    sd = state.sigma / math.sqrt(n)
    return math.fsum(
        _normal_interval_mass(state.mu, sd, lo, hi)
        for lo, hi in _as_intervals(interval)
    )


def image_prob_ss(
    state: State, n: int, interval: Interval | Iterable[Interval]
) -> float:
    """Probability that the n-sample sum of squared deviations lands in
    ``interval`` (a subset of (0, inf)).

    SS / sigma^2 is chi-squared with n - 1 degrees of freedom, so the
    mass is the chi-squared mass of interval / sigma^2.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    spec = chi_squared(n - 1)
    var = state.sigma**2
    total = 0.0
    for lo, hi in _as_intervals(interval):
        if hi <= lo:
            raise ValueError(f"empty interval ({lo!r}, {hi!r})")
        if lo < 0.0:
            raise ValueError(f"SS interval must lie in (0, inf), got lo={lo!r}")
        upper = 1.0 if hi == math.inf else cdf(spec, hi / var)
        lower = cdf(spec, lo / var) if lo > 0.0 else 0.0
        total += upper - lower
    return total
