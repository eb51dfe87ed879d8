"""Confidence intervals and hypothesis tests as two sides of one
semi-distance construction on the normal model, with exact special-function
numerics and a Monte Carlo coverage/size harness."""

from .distributions import (
    DistributionSpec,
    Family,
    Tails,
    cdf,
    chi_squared,
    fisher_f,
    normal,
    pdf,
    quantile,
    student_t,
    symmetric_log_interval_eta,
    upper_tail_log_eta,
    z_alpha,
)
from .framework import (
    ConfidenceRegion,
    Hypothesis,
    HypothesisKind,
    Region,
    SemiDistance,
    SemiDistanceKind,
    SureRegion,
    TestProblem,
    TestResult,
    confidence_region,
    estimate,
    eta_alpha,
    eta_gamma,
    mean_diff_z,
    mean_diff_z_upper,
    mean_t,
    mean_t_upper,
    mean_z,
    mean_z_upper,
    quantity_value,
    rejection_region,
    run_test,
    sure_region,
    variance,
    variance_ratio,
    variance_ratio_upper,
    variance_upper,
)
from .inference import (
    GaussianMeanModel,
    LikelihoodValue,
    ParameterRegion,
    lrt_lambda,
    lrt_region,
    mle_normal,
    normalized_likelihood,
)
from .measurement import (
    Sample,
    State,
    TwoSampleState,
    image_prob_mean,
    image_prob_ss,
    mu_bar,
    normal_prob,
    sample,
    sigma_bar,
    sigma_bar_prime,
    ss_bar,
    stream,
)
from .montecarlo import (
    ExperimentPlan,
    ExperimentReport,
    coverage_experiment,
    power_curve,
    size_experiment,
)

__version__ = "0.1.0"
