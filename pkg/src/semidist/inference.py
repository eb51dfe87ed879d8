"""Maximum likelihood for the normal model and the likelihood ratio test.

The likelihood here is the normalized form: the density ratio against
the best attainable density, so its supremum over the admissible
parameter region is exactly 1.  The ratio test calibrates a cutoff
epsilon(alpha) so that the worst-case null probability of landing in
the low-likelihood set stays at or below alpha; for the known-sigma
mean problem this reproduces the same critical radius as the
distance-based construction, which is the cross-check the test suite
pins down.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from scipy.optimize import minimize

from .distributions import cdf, normal
from .framework import Hypothesis, HypothesisKind
from .measurement import State, mu_bar, sigma_bar

__all__ = [
    "RegionKind",
    "ParameterRegion",
    "LikelihoodValue",
    "log_likelihood",
    "likelihood",
    "normalized_likelihood",
    "mle_normal",
    "GaussianMeanModel",
    "LrtRegion",
    "lrt_lambda",
    "lrt_region",
]

_SIGMA_FLOOR = 1e-12


class RegionKind(Enum):
    FULL = "full"
    MU_FIXED = "mu_fixed"
    MU_HALF_LINE = "mu_half_line"
    SIGMA_FIXED = "sigma_fixed"
    CUSTOM = "custom"


@dataclass(frozen=True)
class ParameterRegion:
    """A constraint set K inside the (mu, sigma) state space."""

    kind: RegionKind
    mu0: float | None = None
    sigma0: float | None = None
    side: str | None = None
    predicate: Callable[[State], bool] | None = None

    @staticmethod
    def full() -> "ParameterRegion":
        return ParameterRegion(RegionKind.FULL)

    @staticmethod
    def mu_fixed(mu0: float) -> "ParameterRegion":
        return ParameterRegion(RegionKind.MU_FIXED, mu0=mu0)

    @staticmethod
    def mu_half_line(mu0: float, side: str = "lower") -> "ParameterRegion":
        if side not in ("lower", "upper"):
            raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")
        return ParameterRegion(RegionKind.MU_HALF_LINE, mu0=mu0, side=side)

    @staticmethod
    def sigma_fixed(sigma0: float) -> "ParameterRegion":
        if sigma0 <= 0.0:
            raise ValueError(f"sigma0 must be positive, got {sigma0!r}")
        return ParameterRegion(RegionKind.SIGMA_FIXED, sigma0=sigma0)

    @staticmethod
    def custom(predicate: Callable[[State], bool]) -> "ParameterRegion":
        return ParameterRegion(RegionKind.CUSTOM, predicate=predicate)

    def contains(self, state: State) -> bool:
        if self.kind is RegionKind.FULL:
            return True
        if self.kind is RegionKind.MU_FIXED:
            return state.mu == self.mu0
        if self.kind is RegionKind.MU_HALF_LINE:
            return state.mu <= self.mu0 if self.side == "lower" else state.mu >= self.mu0
        if self.kind is RegionKind.SIGMA_FIXED:
            return state.sigma == self.sigma0
        return bool(self.predicate(state))


@dataclass(frozen=True)
class LikelihoodValue:
    log_likelihood: float
    normalized_ratio: float


def log_likelihood(x: Sequence[float], state: State) -> float:
    """Log density of the n i.i.d. normal draws at ``state``."""
    n = len(x)
    if n < 1:
        raise ValueError("empty sample")
    ssq = math.fsum((v - state.mu) ** 2 for v in x)
    return -0.5 * n * math.log(2.0 * math.pi * state.sigma**2) - ssq / (
        2.0 * state.sigma**2
    )


def likelihood(
    x: Sequence[float],
    state: State,
    region: ParameterRegion | None = None,
) -> LikelihoodValue:
    """Likelihood at ``state`` normalized by the maximum over ``region``
    (the full space by default), so the region's maximizer scores 1."""
    region = region if region is not None else ParameterRegion.full()
    top = mle_normal(x, region)
    raw = log_likelihood(x, state)
    return LikelihoodValue(raw, math.exp(min(raw - log_likelihood(x, top), 0.0)))


def normalized_likelihood(x: Sequence[float], state: State) -> float:
    """Density ratio against the unconstrained maximum; 1 exactly at the
    sample-mean / sample-sd state."""
    return likelihood(x, state).normalized_ratio


def _sigma_hat(x: Sequence[float], mu: float) -> float:
    return math.sqrt(math.fsum((v - mu) ** 2 for v in x) / len(x))


def mle_normal(x: Sequence[float], region: ParameterRegion) -> State:
    """Likelihood maximizer over the region.

    Closed forms everywhere a profile exists: the unconstrained maximizer
    is (mean, sd); fixing mu re-centers the sd; a half-line on mu clamps
    the mean to its boundary.  Custom regions fall back to derivative-free
    maximization seeded at the closed-form estimate.
    """
    n = len(x)
    if n < 1:
        raise ValueError("empty sample")
    kind = region.kind
    if kind is RegionKind.SIGMA_FIXED:
        return State(mu_bar(x), region.sigma0)
    if kind is RegionKind.MU_FIXED:
        s = _sigma_hat(x, region.mu0)
        if s == 0.0:
            raise ValueError("degenerate sample: zero deviation at the fixed mean")
        return State(region.mu0, s)
    if kind is RegionKind.FULL or kind is RegionKind.MU_HALF_LINE:
        mu = mu_bar(x)
        if kind is RegionKind.MU_HALF_LINE:
            mu = min(mu, region.mu0) if region.side == "lower" else max(mu, region.mu0)
        s = _sigma_hat(x, mu)
        if s == 0.0:
            raise ValueError("degenerate sample: maximum-likelihood sigma is 0")
        return State(mu, s)
    # Custom region: penalized Nelder-Mead, seeded from the best feasible
    # point among the closed-form estimate and a coarse grid around it.
    mu0, s0 = mu_bar(x), max(sigma_bar(x), 1e-6)

    def objective(p: Sequence[float]) -> float:
        mu, sigma = p
        if sigma < _SIGMA_FLOOR or not region.predicate(State(mu, max(sigma, _SIGMA_FLOOR))):
            return 1e300
        return -log_likelihood(x, State(mu, sigma))

    seeds = [(mu0, s0)]
    span = max(max(x) - min(x), s0)
    seeds += [
        (mu0 + i * span / 5.0, s0 * 2.0**j)
        for i in range(-10, 11)
        for j in range(-6, 7)
    ]
    feasible = [(objective(p), p) for p in seeds]
    feasible = [item for item in feasible if item[0] < 1e299]
    if not feasible:
        raise ValueError("no admissible state found in the custom region")
    best = None
    for _, seed in sorted(feasible)[:3]:
        res = minimize(
            objective,
            seed,
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000},
        )
        if res.fun < 1e299 and (best is None or res.fun < best.fun):
            best = res
    if best is None:
        raise ValueError("no admissible state found in the custom region")
    return State(float(best.x[0]), max(float(best.x[1]), _SIGMA_FLOOR))


# ---------------------------------------------------------------------------
# Likelihood ratio test for the known-sigma mean problem
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussianMeanModel:
    """Sampling model of the mean estimator with known sigma: the n-sample
    mean is Normal(mu, sigma/sqrt(n)), so the image-observable likelihood
    has the closed ratio form exp(-n (theta - mu)^2 / (2 sigma^2))."""

    n: int
    sigma: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.sigma <= 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma!r}")

    @property
    def scale(self) -> float:
        return self.sigma / math.sqrt(self.n)


def lrt_lambda(theta: float, model: GaussianMeanModel, hypothesis: Hypothesis) -> float:
    """Profile of the normalized likelihood over the null set: the best
    score any null state gives to the estimate value ``theta``."""
    if hypothesis.kind is HypothesisKind.LOWER_HALF_LINE and theta <= hypothesis.value:
        return 1.0
    z = (theta - hypothesis.value) / model.scale
    return math.exp(-0.5 * z * z)


def _exceedance(model: GaussianMeanModel, hypothesis: Hypothesis, eps: float) -> float:
    # Worst-case null probability of the estimate landing where the
    # profile likelihood is <= eps; attained at the null boundary.
    if eps >= 1.0:
        return 1.0
    r = math.sqrt(-2.0 * math.log(eps))
    upper = 1.0 - cdf(normal(), r)
    if hypothesis.kind is HypothesisKind.POINT:
        return 2.0 * upper
    return upper


@dataclass(frozen=True)
class LrtRegion:
    """Rejection region of the ratio test: estimate values whose profile
    likelihood over the null falls at or below the calibrated cutoff."""

    model: GaussianMeanModel
    hypothesis: Hypothesis
    alpha: float
    epsilon: float
    radius: float

    def contains(self, theta: float) -> bool:
        return lrt_lambda(theta, self.model, self.hypothesis) <= self.epsilon


def lrt_region(
    hypothesis: Hypothesis, alpha: float, model: GaussianMeanModel
) -> LrtRegion:
    """Calibrate the cutoff by root-finding on the exceedance probability.

    The exceedance is continuous and increasing in epsilon, so bisection
    lands on the supremal epsilon whose worst-case null probability stays
    <= alpha; the region boundary then sits at ``radius`` from the null
    value in estimate space.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _exceedance(model, hypothesis, mid) <= alpha:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-18:
            break
    eps = lo
    radius = model.scale * math.sqrt(-2.0 * math.log(eps))
    return LrtRegion(model, hypothesis, alpha, eps, radius)
