#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rslab/rng.hpp"

namespace rslab {

// The simulated "world": true means and standard deviations of K designs.
struct ProblemInstance {
  std::string id;
  std::vector<double> means;
  std::vector<double> stds;

  std::size_t num_designs() const { return means.size(); }

  // Index of the unique best mean; throws if the maximum is tied (such
  // instances may be simulated but cannot be PCS-scored).
  std::size_t unique_best_index() const;
};

// Where policies get their randomness. The production implementation draws
// CRN-aligned normals; tests substitute stubs.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual std::size_t num_designs() const = 0;
  // Next observation of design i (the per-design run counter advances).
  virtual double draw(std::size_t design) = 0;
  // Next uniform from the policy's decision stream.
  virtual double decision_uniform() = 0;
};

struct SampleRecord {
  std::uint32_t design;
  std::uint64_t run_index;
  double value;
};

// Counter-based sampler for one (instance, seed, replication) triple.
// Sample r of design i is a pure function of (seed, replication, i, r), so
// every policy sharing the triple sees identical streams.
class CrnSampler final : public Sampler {
 public:
  CrnSampler(const ProblemInstance& instance, std::uint64_t master_seed,
             std::uint64_t replication)
      : instance_(&instance),
        seed_(master_seed),
        replication_(replication),
        run_counts_(instance.num_designs(), 0) {}

  std::size_t num_designs() const override { return run_counts_.size(); }

  double draw(std::size_t design) override {
    const std::uint64_t r = run_counts_[design]++;
    const double v =
        normal_sample(StreamKey{seed_, replication_, design, r},
                      instance_->means[design], instance_->stds[design]);
    if (log_ != nullptr) {
      log_->push_back({static_cast<std::uint32_t>(design), r, v});
    }
    return v;
  }

  double decision_uniform() override {
    return uniform_sample(
        StreamKey{seed_, replication_, kDecisionStream, decision_count_++});
  }

  // Optional instrumentation: record every (design, run, value) drawn.
  void set_sample_log(std::vector<SampleRecord>* log) { log_ = log; }

 private:
  const ProblemInstance* instance_;
  std::uint64_t seed_;
  std::uint64_t replication_;
  std::vector<std::uint64_t> run_counts_;
  std::uint64_t decision_count_ = 0;
  std::vector<SampleRecord>* log_ = nullptr;
};

enum class PolicyKind {
  kOcba,       // Chen et al.'s OCBA with budget increments Delta
  kOcbaD,      // fully sequential, deterministic most-starving pick
  kOcbaR,      // fully sequential, randomized pick by fractions
  kOcbaPlus,   // OCBA with warmup growing linearly in T
  kOcbaDPlus,
  kOcbaRPlus,
  kEqual,      // equal allocation
  kDs,         // deterministic static split (two designs)
  kRs,         // randomized static split (two designs)
  kTwoPhase,   // estimate the split, then commit with fresh samples
};

struct PolicyConfig {
  PolicyKind kind = PolicyKind::kOcba;
  int n0 = 10;           // constant warmup size (OCBA family)
  double alpha0 = 0.2;   // warmup share of T ("+" variants, two-phase)
  int delta = 20;        // OCBA virtual-budget increment
  double p = 0.5;        // design-1 fraction (DS, RS)
  bool exhaust_budget = true;  // OCBA only: spend any loop leftovers
  bool record_trace = false;
};

struct TraceEntry {
  std::vector<std::int64_t> counts;
  std::vector<double> alphas;
};

struct PolicyRun {
  std::size_t selected = 0;
  std::vector<std::int64_t> final_counts;
  std::int64_t total_consumed = 0;
  std::vector<double> final_means;
  std::optional<std::vector<TraceEntry>> trace;
};

// Canonical id <-> config mapping used by the CLI and results files.
std::string policy_id(const PolicyConfig& config);
PolicyConfig parse_policy_id(const std::string& id);

// Smallest budget the policy accepts on a K-design problem.
std::int64_t min_feasible_budget(const PolicyConfig& config, std::size_t k);

// Warmup size for the "+" variants: N0 = floor(alpha0 * T / K), i.e. the
// warmup phase consumes an alpha0 share of the total budget.
std::int64_t plus_warmup_size(double alpha0, std::int64_t budget, std::size_t k);

PolicyRun run_ocba(Sampler& sampler, const PolicyConfig& config, std::int64_t budget);
PolicyRun run_ocba_d(Sampler& sampler, const PolicyConfig& config, std::int64_t budget);
PolicyRun run_ocba_r(Sampler& sampler, const PolicyConfig& config, std::int64_t budget);
PolicyRun run_plus_variant(PolicyKind kind, Sampler& sampler, double alpha0,
                           std::int64_t budget, int delta_increment,
                           bool record_trace = false, bool exhaust_budget = true);
PolicyRun run_ea(Sampler& sampler, std::int64_t budget);
PolicyRun run_ds(Sampler& sampler, double p, std::int64_t budget);
PolicyRun run_rs(Sampler& sampler, double p, std::int64_t budget);
PolicyRun run_two_phase(Sampler& sampler, double alpha0, std::int64_t budget);

// Dispatch on config.kind.
PolicyRun run_policy(Sampler& sampler, const PolicyConfig& config, std::int64_t budget);

// Cumulative-fraction selection rule used by OCBA-R: smallest k with
// u <= alpha_0 + ... + alpha_k (falls back to the last design on rounding dust).
std::size_t select_by_cumulative_fraction(const std::vector<double>& alphas, double u);

}  // namespace rslab
