#include "rslab/rng.hpp"

#include <stdexcept>

#include "rslab/stats.hpp"

namespace rslab {

namespace {
constexpr double kTwoPow53Inv = 0x1.0p-53;
}

double uniform_sample(const StreamKey& key) noexcept {
  return static_cast<double>(key_hash(key) >> 11) * kTwoPow53Inv;
}

double normal_sample(const StreamKey& key, double mu, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("normal_sample: sigma must be > 0");
  }
  // Center the 53-bit lattice inside (0,1) so the quantile stays finite.
  const double u =
      (static_cast<double>(key_hash(key) >> 11) + 0.5) * kTwoPow53Inv;
  return mu + sigma * normal_quantile(u);
}

}  // namespace rslab
