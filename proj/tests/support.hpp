#pragma once

// Test-only oracles and stubs. Everything here is independent of the library
// code paths it is used to check: the normal CDF oracle integrates the
// density directly, moments are recomputed in two passes, and so on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "rslab/policies.hpp"

namespace testsupport {

inline double normal_density(double t) {
  return 0.3989422804014326779 * std::exp(-0.5 * t * t);
}

// Composite Simpson with a fixed (large) number of intervals.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) {
    sum += f(a + h * i) * (i % 2 == 0 ? 2.0 : 4.0);
  }
  return sum * h / 3.0;
}

// Upper-tail probability 1 - Phi(x) for x >= 0 by direct quadrature of the
// density over [x, x+45]; the remainder past x+45 is far below any tolerance
// used in the tests.
inline double quad_normal_tail(double x) {
  return simpson([](double t) { return normal_density(t); }, x, x + 45.0,
                 90000);
}

inline double quad_normal_cdf(double z) {
  return z >= 0.0 ? 1.0 - quad_normal_tail(z) : quad_normal_tail(-z);
}

struct TwoPassMoments {
  double mean = 0.0;
  double sample_variance = 0.0;
};

inline TwoPassMoments two_pass_moments(const std::vector<double>& samples) {
  long double sum = 0.0L;
  for (const double x : samples) sum += x;
  const long double mean = sum / static_cast<long double>(samples.size());
  long double ss = 0.0L;
  for (const double x : samples) {
    const long double d = static_cast<long double>(x) - mean;
    ss += d * d;
  }
  TwoPassMoments out;
  out.mean = static_cast<double>(mean);
  out.sample_variance = samples.size() > 1
                            ? static_cast<double>(
                                  ss / static_cast<long double>(samples.size() - 1))
                            : 0.0;
  return out;
}

// Kolmogorov-Smirnov distance between a sample and a CDF.
inline double ks_distance(std::vector<double> samples,
                          const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double c = cdf(samples[i]);
    d = std::max(d, std::fabs(c - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - c));
  }
  return d;
}

// Golden-section maximizer for smooth unimodal functions (used to check
// closed-form optimizers such as p*).
inline double golden_max(const std::function<double(double)>& f, double lo,
                         double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

// Sampler stub returning scripted values: design draws come from fixed
// per-design sequences (repeating the last entry when exhausted) and the
// decision stream from a fixed uniform.
class StubSampler final : public rslab::Sampler {
 public:
  StubSampler(std::vector<std::vector<double>> design_values,
              double decision_value = 0.0)
      : values_(std::move(design_values)),
        cursors_(values_.size(), 0),
        decision_value_(decision_value) {}

  std::size_t num_designs() const override { return values_.size(); }

  double draw(std::size_t design) override {
    const std::vector<double>& seq = values_[design];
    const std::size_t at = std::min(cursors_[design], seq.size() - 1);
    ++cursors_[design];
    return seq[at];
  }

  double decision_uniform() override { return decision_value_; }

 private:
  std::vector<std::vector<double>> values_;
  std::vector<std::size_t> cursors_;
  double decision_value_;
};

}  // namespace testsupport
