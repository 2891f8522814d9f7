#include "rslab/rates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "rslab/stats.hpp"

namespace rslab {

namespace {

void check_params(const TwoDesignParams& params) {
  if (!(params.delta > 0.0) || !(params.sigma1 > 0.0) || !(params.sigma2 > 0.0)) {
    throw std::invalid_argument(
        "two-design params: need delta > 0 and positive sigmas");
  }
}

// Dense-grid bracketing followed by grid zoom and golden-section refinement.
// The grid stage guards against non-convex objectives handing a local method
// the wrong valley; the zoom stage keeps boundary-hugging minimizers inside
// the bracket before golden section polishes to the target width.
struct ScalarMinimizer {
  std::function<double(double)> objective;
  double best_x = 0.0;
  double best_f = 0.0;
  std::int64_t evaluations = 0;

  double eval(double x) {
    const double f = objective(x);
    ++evaluations;
    if (evaluations == 1 || f < best_f) {
      best_f = f;
      best_x = x;
    }
    return f;
  }

  // Returns the final bracket width.
  double run(double lo, double hi, int grid_points, int zoom_rounds,
             double target_width) {
    double bracket_lo = lo;
    double bracket_hi = hi;
    for (int round = 0; round <= zoom_rounds; ++round) {
      const int n = (round == 0) ? grid_points : 64;
      const double a = bracket_lo;
      const double h = (bracket_hi - bracket_lo) / n;
      int best_j = 0;
      double best_val = 0.0;
      for (int j = 0; j <= n; ++j) {
        const double f = eval(a + h * j);
        if (j == 0 || f < best_val) {
          best_val = f;
          best_j = j;
        }
      }
      bracket_lo = a + h * std::max(0, best_j - 1);
      bracket_hi = a + h * std::min(n, best_j + 1);
      if (bracket_hi - bracket_lo <= target_width) return bracket_hi - bracket_lo;
    }

    constexpr double kInvPhi = 0.6180339887498948482;
    double x1 = bracket_hi - kInvPhi * (bracket_hi - bracket_lo);
    double x2 = bracket_lo + kInvPhi * (bracket_hi - bracket_lo);
    double f1 = eval(x1);
    double f2 = eval(x2);
    while (bracket_hi - bracket_lo > target_width) {
      if (f1 <= f2) {
        bracket_hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = bracket_hi - kInvPhi * (bracket_hi - bracket_lo);
        f1 = eval(x1);
      } else {
        bracket_lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = bracket_lo + kInvPhi * (bracket_hi - bracket_lo);
        f2 = eval(x2);
      }
    }
    return bracket_hi - bracket_lo;
  }
};

double linear_r2(const std::vector<double>& x, const std::vector<double>& y,
                 double* slope) {
  const std::size_t n = x.size();
  const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) {
    *slope = 0.0;
    return 0.0;
  }
  *slope = sxy / sxx;
  if (syy == 0.0) return 1.0;
  double r2 = (sxy * sxy) / (sxx * syy);
  return std::min(1.0, r2);
}

}  // namespace

double rate_ds(const TwoDesignParams& params, double p) {
  check_params(params);
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("rate_ds: p must be in (0,1)");
  }
  return params.delta * params.delta /
         (2.0 * (params.sigma1 * params.sigma1 / p +
                 params.sigma2 * params.sigma2 / (1.0 - p)));
}

RateResult optimal_rate_ds(const TwoDesignParams& params) {
  check_params(params);
  const double spread = params.sigma1 + params.sigma2;
  RateResult result;
  result.rate = params.delta * params.delta / (2.0 * spread * spread);
  result.minimizer = params.sigma1 / spread;
  return result;
}

double rate_ea(const TwoDesignParams& params) {
  check_params(params);
  return params.delta * params.delta /
         (4.0 * (params.sigma1 * params.sigma1 + params.sigma2 * params.sigma2));
}

double rs_rate_objective(const TwoDesignParams& params, double p, double alpha) {
  // At the endpoints the sampling term vanishes (sigma^2/alpha -> infinity)
  // and only the KL penalty survives.
  const double kl = bernoulli_kl(alpha, p);
  if (alpha == 0.0 || alpha == 1.0) return kl;
  return rate_ds(params, alpha) + kl;
}

RateResult rate_rs(const TwoDesignParams& params, double p) {
  check_params(params);
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("rate_rs: p must be in (0,1)");
  }
  ScalarMinimizer solver;
  solver.objective = [&](double alpha) {
    return rs_rate_objective(params, p, alpha);
  };
  const double width = solver.run(0.0, 1.0, 2047, 2, 1e-10);
  RateResult result;
  result.rate = solver.best_f;
  result.minimizer = solver.best_x;
  result.bracket_width = width;
  result.evaluations = solver.evaluations;
  return result;
}

double two_phase_rate_objective(const TwoDesignParams& params, double alpha0,
                                double p) {
  const double s1sq = params.sigma1 * params.sigma1;
  const double s2sq = params.sigma2 * params.sigma2;
  const double q = 1.0 - p;
  const double sampling = (1.0 - alpha0) * params.delta * params.delta /
                          (2.0 * (s1sq / p + s2sq / q));
  const double penalty =
      0.5 * alpha0 *
      std::log((q * q * s1sq + p * p * s2sq) /
               (2.0 * p * q * params.sigma1 * params.sigma2));
  return sampling + penalty;
}

RateResult rate_two_phase(const TwoDesignParams& params, double alpha0) {
  check_params(params);
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) {
    throw std::invalid_argument("rate_two_phase: alpha0 must be in (0,1)");
  }
  ScalarMinimizer solver;
  solver.objective = [&](double p) {
    return two_phase_rate_objective(params, alpha0, p);
  };
  // The objective diverges at 0 and 1, so the minimum is interior; at large
  // delta it sits within O(1/delta^2) of a boundary, hence the zoom rounds.
  const double width = solver.run(1e-9, 1.0 - 1e-9, 2047, 6, 1e-10);
  RateResult result;
  result.rate = solver.best_f;
  result.minimizer = solver.best_x;
  result.bracket_width = width;
  result.evaluations = solver.evaluations;
  return result;
}

double finite_sample_upper_bound(const ProblemInstance& instance, double alpha0,
                                 std::int64_t budget) {
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) {
    throw std::invalid_argument(
        "finite_sample_upper_bound: alpha0 must be in (0,1)");
  }
  const std::size_t k = instance.num_designs();
  if (k < 2) {
    throw std::invalid_argument("finite_sample_upper_bound: need K >= 2");
  }
  instance.unique_best_index();  // rejects tied best means

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instance.means[a] > instance.means[b];
  });

  const auto n0 = static_cast<std::int64_t>(
      std::floor(alpha0 * static_cast<double>(budget)));
  if (n0 < 2) {
    throw std::invalid_argument(
        "finite_sample_upper_bound: floor(alpha0*T) must be >= 2");
  }

  const double mu1 = instance.means[order[0]];
  const double mu2 = instance.means[order[1]];
  const double delta = mu1 - mu2;

  // Geometric sum of exp(-c r) over r >= n0.
  const auto geometric_tail = [n0](double c) {
    return std::exp(-c * static_cast<double>(n0)) / (-std::expm1(-c));
  };

  const double s1 = instance.stds[order[0]];
  double bound = geometric_tail(delta * delta / (8.0 * s1 * s1));
  for (std::size_t j = 1; j < k; ++j) {
    const double dbar = mu2 - instance.means[order[j]] + 0.5 * delta;
    const double sj = instance.stds[order[j]];
    bound += geometric_tail(dbar * dbar / (2.0 * sj * sj));
  }
  return std::clamp(bound, 0.0, 1.0);
}

double variance_driven_lower_bound(const TwoDesignParams& params,
                                   std::int64_t budget) {
  check_params(params);
  if (budget < 4) {
    throw std::invalid_argument(
        "variance_driven_lower_bound: budget must be >= 4");
  }
  return 1.0 - normal_cdf(params.delta * std::sqrt(static_cast<double>(budget)) /
                          (params.sigma1 + params.sigma2));
}

DecayDiagnostics empirical_ld_rate(
    std::span<const std::pair<std::int64_t, double>> pfs_curve) {
  if (pfs_curve.size() < 2) {
    throw std::invalid_argument("empirical_ld_rate: need at least two points");
  }
  DecayDiagnostics diag;
  std::vector<double> budgets, log_budgets, log_pfs;
  for (const auto& [budget, pfs] : pfs_curve) {
    if (budget < 1) {
      throw std::invalid_argument("empirical_ld_rate: budgets must be >= 1");
    }
    if (!(pfs > 0.0)) {
      throw std::invalid_argument(
          "empirical_ld_rate: zero PFS entry (insufficient replications)");
    }
    const double t = static_cast<double>(budget);
    diag.pointwise.emplace_back(budget, -std::log(pfs) / t);
    budgets.push_back(t);
    log_budgets.push_back(std::log(t));
    log_pfs.push_back(std::log(pfs));
  }
  diag.exponential_r2 = linear_r2(budgets, log_pfs, &diag.exponential_slope);
  diag.polynomial_r2 = linear_r2(log_budgets, log_pfs, &diag.polynomial_slope);
  return diag;
}

std::vector<RobustnessPoint> ea_robustness_check(
    std::span<const double> p_grid,
    std::span<const std::pair<double, double>> sigma_grid) {
  std::vector<RobustnessPoint> points;
  points.reserve(p_grid.size());
  for (const double p : p_grid) {
    if (!(p > 0.0 && p < 1.0)) {
      throw std::invalid_argument("ea_robustness_check: p must be in (0,1)");
    }
    double worst = 0.0;
    for (const auto& [s1, s2] : sigma_grid) {
      if (!(s1 > 0.0 && s2 > 0.0)) {
        throw std::invalid_argument("ea_robustness_check: sigmas must be > 0");
      }
      const double spread = s1 + s2;
      const double ratio = (s1 * s1 / p + s2 * s2 / (1.0 - p)) / (spread * spread);
      worst = std::max(worst, ratio);
    }
    points.push_back({p, worst});
  }
  return points;
}

}  // namespace rslab
