#pragma once

#include <cstdint>
#include <utility>

namespace rslab {

// Online (single-pass) moment accumulator for one design's samples.
// Welford's recurrence with Neumaier-compensated sums for both the mean and
// the squared-deviation total; plain accumulation drifts past 1e-12 relative
// error once the mean offset reaches ~1e6 on million-sample streams.
class DesignState {
 public:
  void add(double sample);

  std::int64_t count() const { return count_; }
  double mean() const { return mean_ + mean_comp_; }
  // Sum of squared deviations from the mean; zero while count <= 1.
  double m2() const {
    const double value = m2_ + m2_comp_;
    return value > 0.0 ? value : 0.0;
  }

  // Sample variance S^2 = m2/(count-1); requires count >= 2.
  double sample_variance() const;
  double sample_sd() const;

 private:
  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double mean_comp_ = 0.0;
  double m2_ = 0.0;
  double m2_comp_ = 0.0;
};

// Arguments for the sample-standard-deviation tail bounds: n samples with
// true standard deviation sigma, deviation magnitude x.
struct TailBoundQuery {
  std::int64_t n = 2;
  double sigma = 1.0;
  double x = 0.0;
};

struct ProbabilityBracket {
  double lower = 0.0;
  double upper = 1.0;
};

// Standard normal CDF. Absolute error <= 1e-12 on [-38, 38]; never negative.
double normal_cdf(double z);

// Standard normal quantile (inverse CDF), p in (0,1). Wichura's AS241,
// accurate to roughly machine precision.
double normal_quantile(double p);

// Bracket for the standard normal upper tail 1 - Phi(x), x > 0:
//   lower = x/(x^2+1) * phi(x),  upper = exp(-x^2/2).
ProbabilityBracket gaussian_tail_bounds(double x);

// Bernoulli KL divergence kl(alpha, p) with the analytical boundary limits
// kl(0,p) = -log(1-p) and kl(1,p) = -log(p). Requires p in (0,1).
double bernoulli_kl(double alpha, double p);

// Upper bounds on the tails of the sample standard deviation S_n of n
// i.i.d. normal samples:
//   left  >= P(S_n <= sigma - x)   (requires 0 < x < sigma)
//   right >= P(S_n >= sigma + x)
ProbabilityBracket sd_tail_upper_bounds(const TailBoundQuery& q);

// Lower bound on the left tail P(S_n <= a) for 0 < a < b:
//   (K_b * a)^(n-1) with K_b = 2 exp(-b^2/(2 sigma^2)) / (sigma sqrt(2 pi)).
double sd_left_tail_lower_bound(std::int64_t n, double sigma, double a, double b);

// Chi-square CDF with `dof` degrees of freedom: regularized lower incomplete
// gamma P(dof/2, x/2). Absolute error <= 1e-10.
double chi2_cdf(std::int64_t dof, double x);

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

// log Gamma(x) for x > 0, safe for concurrent use.
double log_gamma(double x);

}  // namespace rslab
