#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rslab {

// Result of the budget-fraction computation: the observed-best design, the
// unnormalized weights beta and the allocation fractions alpha (sum to 1).
struct FractionOutput {
  std::size_t best_index = 0;
  std::vector<double> betas;
  std::vector<double> alphas;
};

// Computes the allocation fractions from per-design means and standard
// deviations (true parameters or plug-in estimates; the formula is the same):
//   beta_i = s_i^2 / (m_best - m_i)^2            for i != best
//   beta_best = s_best * sqrt(sum_{i != best} beta_i^2 / s_i^2)
//   alpha = beta / sum(beta)
// Mean gaps are clamped below at 1e-12 so tied means stay finite.
// Requires K >= 2 and strictly positive stds.
FractionOutput compute_fractions(std::span<const double> means,
                                 std::span<const double> stds);

// In-place variant reusing caller buffers (hot path for sequential policies).
// `betas` and `alphas` are resized to means.size().
void compute_fractions_into(std::span<const double> means,
                            std::span<const double> stds,
                            std::size_t* best_index,
                            std::vector<double>& betas,
                            std::vector<double>& alphas);

// Unnormalized weights only. The sequential policies pick designs by ratios
// of betas, so they can skip the per-design normalization.
void compute_betas_into(std::span<const double> means,
                        std::span<const double> stds, std::size_t* best_index,
                        std::vector<double>& betas, double* beta_total);

}  // namespace rslab
