#pragma once

#include <cstdint>

namespace rslab {

// Identifies one draw in the experiment: the r-th sample of a design within
// a replication, under a master seed. Equal keys give equal draws, which is
// what makes common random numbers across algorithms work: sample r of
// design i does not depend on which policy asks for it, or in what order.
struct StreamKey {
  std::uint64_t master_seed = 0;
  std::uint64_t replication = 0;
  std::uint64_t design = 0;  // kDecisionStream for policy-internal uniforms
  std::uint64_t run_index = 0;
};

// Reserved design id for policy-internal randomness (OCBA-R and RS draw
// their allocation decisions from this stream so sample streams stay aligned
// across algorithms).
inline constexpr std::uint64_t kDecisionStream = ~std::uint64_t{0};

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Counter-based generator: hash the key fields through chained finalizer
// rounds. Stateless, so draws can be produced in any order by any thread.
constexpr std::uint64_t key_hash(const StreamKey& key) noexcept {
  constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t h = mix64(key.master_seed + kGolden);
  h = mix64(h ^ (key.replication + kGolden));
  h = mix64(h ^ (key.design + kGolden));
  h = mix64(h ^ (key.run_index + kGolden));
  return mix64(h + kGolden);
}

// Uniform draw in [0, 1), a pure function of the key (53 random bits).
double uniform_sample(const StreamKey& key) noexcept;

// Normal draw mu + sigma * Z(key) via the inverse CDF of a key-derived
// uniform offset into (0,1). Requires sigma > 0.
double normal_sample(const StreamKey& key, double mu, double sigma);

}  // namespace rslab
