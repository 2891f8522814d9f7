#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rslab/oracles.hpp"
#include "rslab/policies.hpp"

namespace rslab {

// Output of a large-deviations rate computation. For closed forms the
// bracket is zero; for the variational solvers it reports the final search
// interval around the minimizer.
struct RateResult {
  double rate = 0.0;
  double minimizer = 0.0;
  double bracket_width = 0.0;
  std::int64_t evaluations = 0;
};

// LD rate of the deterministic static split at fraction p:
//   delta^2 / (2 (sigma1^2/p + sigma2^2/(1-p))).
double rate_ds(const TwoDesignParams& params, double p);

// Optimal DS rate delta^2 / (2 (sigma1+sigma2)^2), attained at the
// standard-deviation-proportional split p* = sigma1/(sigma1+sigma2).
RateResult optimal_rate_ds(const TwoDesignParams& params);

// LD rate of equal allocation: delta^2 / (4 (sigma1^2 + sigma2^2)).
double rate_ea(const TwoDesignParams& params);

// LD rate of the randomized static policy: infimum over alpha in [0,1] of
// the DS rate at alpha plus the Bernoulli KL penalty kl(alpha, p). Solved by
// a dense grid plus golden-section refinement.
RateResult rate_rs(const TwoDesignParams& params, double p);

// LD rate of the two-phase policy: minimum over p of the discounted DS rate
// plus the warmup estimation penalty. The objective diverges at both
// endpoints; solved on [1e-9, 1-1e-9] by grid zoom plus golden section.
RateResult rate_two_phase(const TwoDesignParams& params, double alpha0);

// Objective functions behind the two solvers (exposed for the independent
// grid cross-checks).
double rs_rate_objective(const TwoDesignParams& params, double p, double alpha);
double two_phase_rate_objective(const TwoDesignParams& params, double alpha0,
                                double p);

// Finite-sample PFS upper bound for warmup-heavy policies with per-design
// warmup N0 = floor(alpha0 * T): the geometric tail sums
//   e^{-delta^2 N0 / (8 s1^2)} / (1 - e^{-delta^2 / (8 s1^2)})
//   + sum_{i>=2} e^{-dbar_i^2 N0 / (2 s_i^2)} / (1 - e^{-dbar_i^2 / (2 s_i^2)})
// with designs relabeled by decreasing mean, delta = mu_1 - mu_2 and
// dbar_i = mu_2 - mu_i + delta/2. Clipped to [0,1].
double finite_sample_upper_bound(const ProblemInstance& instance, double alpha0,
                                 std::int64_t budget);

// PFS lower bound for any two-design variance-driven policy:
//   1 - Phi(delta * sqrt(T) / (sigma1 + sigma2)).
double variance_driven_lower_bound(const TwoDesignParams& params,
                                   std::int64_t budget);

// Pointwise empirical rates -log(pfs)/T plus decay-shape regressions of
// log pfs against T (exponential decay) and against log T (polynomial decay).
struct DecayDiagnostics {
  std::vector<std::pair<std::int64_t, double>> pointwise;
  double exponential_slope = 0.0;   // log pfs ~ T
  double exponential_r2 = 0.0;
  double polynomial_slope = 0.0;    // log pfs ~ log T
  double polynomial_r2 = 0.0;
};

DecayDiagnostics empirical_ld_rate(
    std::span<const std::pair<std::int64_t, double>> pfs_curve);

// Worst-case ratio between the optimal DS rate and the DS rate at fraction p
// over a sigma grid; approaches max{1/p, 1/(1-p)} as the grid widens and is
// minimized at p = 1/2, which is what makes equal allocation robust.
struct RobustnessPoint {
  double p = 0.0;
  double worst_ratio = 0.0;
};

std::vector<RobustnessPoint> ea_robustness_check(
    std::span<const double> p_grid,
    std::span<const std::pair<double, double>> sigma_grid);

}  // namespace rslab
