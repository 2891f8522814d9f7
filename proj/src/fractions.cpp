#include "rslab/fractions.hpp"

#include <cmath>
#include <stdexcept>

namespace rslab {

namespace {
constexpr double kMinGap = 1e-12;
}

void compute_betas_into(std::span<const double> means,
                        std::span<const double> stds, std::size_t* best_index,
                        std::vector<double>& betas, double* beta_total) {
  const std::size_t k = means.size();
  if (k < 2 || stds.size() != k) {
    throw std::invalid_argument("compute_fractions: need K >= 2 designs");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < k; ++i) {
    if (means[i] > means[best]) best = i;  // ties keep the smallest index
  }
  betas.resize(k);

  // Suboptimal weights first; the best design's weight depends on them.
  // beta_i^2 / s_i^2 = s_i^2 / gap^4, folded into one reciprocal per design.
  double cross = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!(stds[i] > 0.0)) {
      throw std::invalid_argument("compute_fractions: stds must be > 0");
    }
    if (i == best) continue;
    double gap = means[best] - means[i];
    if (gap < kMinGap) gap = kMinGap;
    const double inv_gap_sq = 1.0 / (gap * gap);
    const double variance = stds[i] * stds[i];
    const double beta = variance * inv_gap_sq;
    betas[i] = beta;
    cross += variance * inv_gap_sq * inv_gap_sq;
    total += beta;
  }
  betas[best] = stds[best] * std::sqrt(cross);
  total += betas[best];

  *best_index = best;
  *beta_total = total;
}

void compute_fractions_into(std::span<const double> means,
                            std::span<const double> stds,
                            std::size_t* best_index,
                            std::vector<double>& betas,
                            std::vector<double>& alphas) {
  double total = 0.0;
  compute_betas_into(means, stds, best_index, betas, &total);
  const std::size_t k = means.size();
  alphas.resize(k);
  const double inv_total = 1.0 / total;
  for (std::size_t i = 0; i < k; ++i) alphas[i] = betas[i] * inv_total;
}

FractionOutput compute_fractions(std::span<const double> means,
                                 std::span<const double> stds) {
  FractionOutput out;
  compute_fractions_into(means, stds, &out.best_index, out.betas, out.alphas);
  return out;
}

}  // namespace rslab
