#include "rslab/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rslab/stats.hpp"

namespace rslab {

namespace {

void check_params(const TwoDesignParams& params) {
  if (!(params.delta > 0.0) || !(params.sigma1 > 0.0) || !(params.sigma2 > 0.0)) {
    throw std::invalid_argument(
        "two-design params: need delta > 0 and positive sigmas");
  }
}

double miss_probability(const TwoDesignParams& params, double n1, double n2) {
  return normal_cdf(-params.delta /
                    std::sqrt(params.sigma1 * params.sigma1 / n1 +
                              params.sigma2 * params.sigma2 / n2));
}

// Adaptive Simpson on [a,b] with function values cached at the endpoints and
// midpoint. The integrands here are smooth inside each piece.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb,
                        double whole, double tolerance, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tolerance) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tolerance, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tolerance, depth - 1);
}

double integrate_piece(const std::function<double(double)>& f, double a,
                       double b, double tolerance) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tolerance, 48);
}

}  // namespace

double pfs_ds(const TwoDesignParams& params, double p, std::int64_t budget) {
  check_params(params);
  const auto n1 = static_cast<std::int64_t>(
      std::floor(p * static_cast<double>(budget)));
  const auto n2 = static_cast<std::int64_t>(
      std::floor((1.0 - p) * static_cast<double>(budget)));
  if (n1 < 1 || n2 < 1) {
    throw std::invalid_argument("pfs_ds: both designs need at least one run");
  }
  return miss_probability(params, static_cast<double>(n1),
                          static_cast<double>(n2));
}

double pfs_rs(const TwoDesignParams& params, double p, std::int64_t budget) {
  check_params(params);
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("pfs_rs: p must be in (0,1)");
  }
  if (budget < 0) throw std::invalid_argument("pfs_rs: budget must be >= 0");

  const double t = static_cast<double>(budget);
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double lg_total = log_gamma(t + 1.0);

  // Kahan-compensated sum of the binomial mixture.
  double sum = 0.0;
  double carry = 0.0;
  for (std::int64_t k = 0; k <= budget; ++k) {
    const double kd = static_cast<double>(k);
    const double log_weight = lg_total - log_gamma(kd + 1.0) -
                              log_gamma(t - kd + 1.0) + kd * log_p +
                              (t - kd) * log_q;
    const double term =
        std::exp(log_weight) * miss_probability(params, kd + 1.0, t - kd + 1.0);
    const double y = term - carry;
    const double s = sum + y;
    carry = (s - sum) - y;
    sum = s;
  }
  return std::min(1.0, sum);
}

double phat_density(double p, std::int64_t n0, double sigma1, double sigma2) {
  if (n0 < 2) throw std::invalid_argument("phat_density: n0 must be >= 2");
  if (!(sigma1 > 0.0 && sigma2 > 0.0)) {
    throw std::invalid_argument("phat_density: sigmas must be > 0");
  }
  if (p < 0.0 || p > 1.0) return 0.0;

  const double m = static_cast<double>(n0 - 1);  // chi-square dof per design
  const double log_norm =
      std::log(2.0) + log_gamma(m) - 2.0 * log_gamma(0.5 * m);
  const double q = 1.0 - p;
  const double scale = sigma1 * sigma2 / (q * q * sigma1 * sigma1 + p * p * sigma2 * sigma2);

  if (p == 0.0 || p == 1.0) {
    // [p(1-p)]^(n0-2): 1 at the endpoints only when the exponent is zero.
    if (n0 == 2) return std::exp(log_norm + m * std::log(scale));
    return 0.0;
  }
  return std::exp(log_norm + (m - 1.0) * std::log(p * q) + m * std::log(scale));
}

double pfs_two_phase(const TwoDesignParams& params, double alpha0,
                     std::int64_t budget) {
  check_params(params);
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) {
    throw std::invalid_argument("pfs_two_phase: alpha0 must be in (0,1)");
  }
  const auto n0 = static_cast<std::int64_t>(
      std::floor(alpha0 * static_cast<double>(budget) / 2.0));
  if (n0 < 2) {
    throw std::invalid_argument("pfs_two_phase: floor(alpha0*T/2) must be >= 2");
  }

  const double remaining = (1.0 - alpha0) * static_cast<double>(budget);
  const auto integrand = [&](double p) {
    const double n1 = std::floor(remaining * p) + 1.0;
    const double n2 = std::floor(remaining * (1.0 - p)) + 1.0;
    return miss_probability(params, n1, n2) *
           phat_density(p, n0, params.sigma1, params.sigma2);
  };

  // The phase-II counts jump where remaining*p or remaining*(1-p) crosses an
  // integer; integrate each smooth piece separately.
  std::vector<double> cuts{0.0, 1.0};
  const auto max_k = static_cast<std::int64_t>(std::ceil(remaining));
  for (std::int64_t k = 1; k <= max_k; ++k) {
    const double at = static_cast<double>(k) / remaining;
    if (at > 0.0 && at < 1.0) {
      cuts.push_back(at);
      cuts.push_back(1.0 - at);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const auto integrate_all = [&](double scale) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      // Nudge the endpoints inward so each piece evaluates its own floor level.
      const double a = cuts[i];
      const double b = cuts[i + 1];
      const double eps = 1e-13 * (b - a);
      total += integrate_piece(integrand, a + eps, b - eps,
                               std::max(1e-300, scale * (b - a)));
    }
    return total;
  };

  // First pass at an absolute tolerance, second pass scaled to the estimate
  // so small probabilities still come out with ~1e-10 relative error.
  double total = integrate_all(1e-10);
  if (total < 1e-4) total = integrate_all(1e-10 * std::max(total, 1e-280));
  return std::min(1.0, total);
}

}  // namespace rslab
