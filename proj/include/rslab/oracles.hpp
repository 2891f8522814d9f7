#pragma once

#include <cstdint>

namespace rslab {

// Two-design problem: design 1 is best by delta = mu1 - mu2 > 0.
struct TwoDesignParams {
  double delta = 1.0;
  double sigma1 = 1.0;
  double sigma2 = 1.0;
};

// Exact PFS of the deterministic static split N1 = floor(pT), N2 = floor((1-p)T):
//   Phi(-delta / sqrt(sigma1^2/N1 + sigma2^2/N2)).
double pfs_ds(const TwoDesignParams& params, double p, std::int64_t budget);

// Exact PFS of the randomized static policy: binomial mixture over the number
// of design-1 decisions k, with sample counts (k+1, T-k+1). Weights are
// accumulated in log space so budgets up to 1e4 do not overflow.
double pfs_rs(const TwoDesignParams& params, double p, std::int64_t budget);

// Density of the phase-I fraction estimate p_hat = S1/(S1+S2) from n0 warmup
// samples per design. Evaluated through log-gamma for stability.
double phat_density(double p, std::int64_t n0, double sigma1, double sigma2);

// Exact PFS of the two-phase policy: the normal miss probability integrated
// against the p_hat density, split at the floor breakpoints of the phase-II
// counts and integrated adaptively on each piece.
double pfs_two_phase(const TwoDesignParams& params, double alpha0,
                     std::int64_t budget);

}  // namespace rslab
