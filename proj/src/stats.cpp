#include "rslab/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rslab {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
}  // namespace

namespace {
// Neumaier's variant of Kahan summation: accumulate into sum, keep the
// rounding remainder in comp.
inline void accumulate(double& sum, double& comp, double value) {
  const double t = sum + value;
  if (std::fabs(sum) >= std::fabs(value)) {
    comp += (sum - t) + value;
  } else {
    comp += (value - t) + sum;
  }
  sum = t;
}
}  // namespace

void DesignState::add(double sample) {
  ++count_;
  const double delta = sample - mean();
  accumulate(mean_, mean_comp_, delta / static_cast<double>(count_));
  accumulate(m2_, m2_comp_, delta * (sample - mean()));
}

double DesignState::sample_variance() const {
  if (count_ < 2) {
    throw std::logic_error("DesignState::sample_variance requires count >= 2");
  }
  return m2() / static_cast<double>(count_ - 1);
}

double DesignState::sample_sd() const { return std::sqrt(sample_variance()); }

double normal_cdf(double z) {
  // 0.5 * erfc(-z/sqrt(2)); erfc carries the accuracy contract down to the
  // denormal range, so extreme tails stay positive.
  return 0.5 * std::erfc(-z / kSqrt2);
}

double normal_quantile(double p) {
  // Wichura (1988), algorithm AS241, routine PPND16.
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("normal_quantile: p must be in (0,1)");
  }
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    val = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    val = num / den;
  }
  return (q < 0.0) ? -val : val;
}

ProbabilityBracket gaussian_tail_bounds(double x) {
  if (!(x > 0.0)) {
    throw std::invalid_argument("gaussian_tail_bounds: x must be > 0");
  }
  const double e = std::exp(-0.5 * x * x);
  return {x / (x * x + 1.0) * kInvSqrt2Pi * e, e};
}

double bernoulli_kl(double alpha, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("bernoulli_kl: p must be in (0,1)");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("bernoulli_kl: alpha must be in [0,1]");
  }
  if (alpha == 0.0) return -std::log1p(-p);
  if (alpha == 1.0) return -std::log(p);
  const double kl = alpha * std::log(alpha / p) +
                    (1.0 - alpha) * std::log((1.0 - alpha) / (1.0 - p));
  return kl < 0.0 ? 0.0 : kl;  // clip rounding dust at alpha == p
}

ProbabilityBracket sd_tail_upper_bounds(const TailBoundQuery& q) {
  if (q.n < 2) throw std::invalid_argument("sd_tail_upper_bounds: n must be >= 2");
  if (!(q.sigma > 0.0)) {
    throw std::invalid_argument("sd_tail_upper_bounds: sigma must be > 0");
  }
  if (!(q.x > 0.0 && q.x < q.sigma)) {
    throw std::invalid_argument("sd_tail_upper_bounds: need 0 < x < sigma");
  }
  const double nm1 = static_cast<double>(q.n - 1);
  const double ratio = (q.sigma - q.x) / q.sigma;
  const double gap = 1.0 - ratio * ratio;
  const double left = std::exp(-0.25 * nm1 * gap * gap);
  const double right = std::exp(-nm1 * q.x * q.x / (4.0 * q.sigma * q.sigma));
  return {left, right};
}

double sd_left_tail_lower_bound(std::int64_t n, double sigma, double a, double b) {
  if (n < 2) throw std::invalid_argument("sd_left_tail_lower_bound: n must be >= 2");
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("sd_left_tail_lower_bound: sigma must be > 0");
  }
  if (!(a > 0.0 && a < b)) {
    throw std::invalid_argument("sd_left_tail_lower_bound: need 0 < a < b");
  }
  const double kb = 2.0 * std::exp(-b * b / (2.0 * sigma * sigma)) * kInvSqrt2Pi / sigma;
  return std::pow(kb * a, static_cast<double>(n - 1));
}

double log_gamma(double x) {
#ifdef __GLIBC__
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("regularized_gamma_p: a must be > 0");
  if (x < 0.0) throw std::invalid_argument("regularized_gamma_p: x must be >= 0");
  if (x == 0.0) return 0.0;
  const double log_prefix = -x + a * std::log(x) - log_gamma(a);
  if (x < a + 1.0) {
    // Series expansion of P(a,x).
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
    }
    const double p = sum * std::exp(log_prefix);
    return p > 1.0 ? 1.0 : p;
  }
  // Continued fraction for Q(a,x), modified Lentz.
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  const double q = std::exp(log_prefix) * h;
  const double p = 1.0 - q;
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

double chi2_cdf(std::int64_t dof, double x) {
  if (dof < 1) throw std::invalid_argument("chi2_cdf: dof must be >= 1");
  if (x < 0.0) throw std::invalid_argument("chi2_cdf: x must be >= 0");
  return regularized_gamma_p(0.5 * static_cast<double>(dof), 0.5 * x);
}

}  // namespace rslab
