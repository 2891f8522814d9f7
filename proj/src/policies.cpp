#include "rslab/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "rslab/fractions.hpp"
#include "rslab/stats.hpp"

namespace rslab {

namespace {

constexpr double kMinSd = 1e-12;  // clamp floor feeding compute_fractions

std::size_t argmax_smallest_index(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

// Per-design online statistics shared by the OCBA-family loops. Means and
// clamped standard deviations are maintained incrementally so the fully
// sequential policies pay O(1) per draw for bookkeeping.
struct RunningDesigns {
  std::vector<DesignState> states;
  std::vector<std::int64_t> counts;
  std::vector<double> inv_counts;  // 1/N_i, kept current for the argmax ratios
  std::vector<double> means;
  std::vector<double> sds;  // clamped at kMinSd; defined once count >= 2
  std::int64_t consumed = 0;

  explicit RunningDesigns(std::size_t k)
      : states(k), counts(k, 0), inv_counts(k, 0.0), means(k, 0.0),
        sds(k, kMinSd) {}

  void refresh(std::size_t i) {
    means[i] = states[i].mean();
    inv_counts[i] = 1.0 / static_cast<double>(counts[i]);
    if (states[i].count() >= 2) {
      const double sd = states[i].sample_sd();
      sds[i] = sd > kMinSd ? sd : kMinSd;
    }
  }

  void draw_one(Sampler& sampler, std::size_t i) {
    states[i].add(sampler.draw(i));
    ++counts[i];
    ++consumed;
    refresh(i);
  }

  void draw_many(Sampler& sampler, std::size_t i, std::int64_t n) {
    for (std::int64_t r = 0; r < n; ++r) {
      states[i].add(sampler.draw(i));
    }
    counts[i] += n;
    consumed += n;
    refresh(i);
  }

  void warmup(Sampler& sampler, std::int64_t n0) {
    for (std::size_t i = 0; i < states.size(); ++i) draw_many(sampler, i, n0);
  }

  PolicyRun finish(std::optional<std::vector<TraceEntry>> trace = std::nullopt) const {
    PolicyRun run;
    run.selected = argmax_smallest_index(means);
    run.final_counts = counts;
    run.total_consumed = consumed;
    run.final_means = means;
    run.trace = std::move(trace);
    return run;
  }
};

void check_ocba_preconditions(const Sampler& sampler, std::int64_t n0,
                              std::int64_t budget) {
  const std::size_t k = sampler.num_designs();
  if (k < 2) throw std::invalid_argument("OCBA: need at least two designs");
  if (n0 < 2) throw std::invalid_argument("OCBA: N0 must be >= 2");
  if (budget < static_cast<std::int64_t>(k) * n0) {
    throw std::invalid_argument("OCBA: budget must be >= K * N0");
  }
}

// argmax of alpha_i / N_i, evaluated on the unnormalized weights (the common
// normalizer drops out of the ratio comparison). Smallest index on ties.
std::size_t most_starving_index(const std::vector<double>& betas,
                                const std::vector<double>& inv_counts) {
  std::size_t best = 0;
  double best_ratio = betas[0] * inv_counts[0];
  for (std::size_t i = 1; i < betas.size(); ++i) {
    const double ratio = betas[i] * inv_counts[i];
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = i;
    }
  }
  return best;
}

void append_trace(std::optional<std::vector<TraceEntry>>& trace,
                  const std::vector<std::int64_t>& counts,
                  const std::vector<double>& betas, double beta_total) {
  if (!trace) return;
  TraceEntry entry;
  entry.counts = counts;
  entry.alphas.resize(betas.size());
  const double inv_total = 1.0 / beta_total;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    entry.alphas[i] = betas[i] * inv_total;
  }
  trace->push_back(std::move(entry));
}

}  // namespace

std::size_t ProblemInstance::unique_best_index() const {
  const std::size_t best = argmax_smallest_index(means);
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (i != best && means[i] == means[best]) {
      throw std::invalid_argument("instance '" + id +
                                  "' has no unique best mean");
    }
  }
  return best;
}

std::size_t select_by_cumulative_fraction(const std::vector<double>& alphas,
                                          double u) {
  double cumulative = 0.0;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    cumulative += alphas[k];
    if (u <= cumulative) return k;
  }
  return alphas.size() - 1;  // u above the rounded total
}

PolicyRun run_ocba(Sampler& sampler, const PolicyConfig& config,
                   std::int64_t budget) {
  const std::size_t k = sampler.num_designs();
  check_ocba_preconditions(sampler, config.n0, budget);
  if (config.delta < 1) throw std::invalid_argument("OCBA: Delta must be >= 1");

  RunningDesigns designs(k);
  designs.warmup(sampler, config.n0);

  std::optional<std::vector<TraceEntry>> trace;
  if (config.record_trace) trace.emplace();

  std::size_t best = 0;
  double beta_total = 0.0;
  std::vector<double> betas;
  std::vector<std::size_t> order(k);
  std::vector<std::int64_t> deficit(k, 0);

  double virtual_budget =
      static_cast<double>(k) * config.n0 + config.delta;  // T'(0)
  while (designs.consumed < budget && virtual_budget <= budget) {
    compute_betas_into(designs.means, designs.sds, &best, betas, &beta_total);
    append_trace(trace, designs.counts, betas, beta_total);

    // Top each design up to floor(alpha_i * T'), never taking runs back.
    // Largest deficits go first and the total is capped at the budget, since
    // stale counts can push the targets past what is left.
    const double scale = virtual_budget / beta_total;
    for (std::size_t i = 0; i < k; ++i) {
      const auto target =
          static_cast<std::int64_t>(std::floor(betas[i] * scale));
      deficit[i] = std::max<std::int64_t>(0, target - designs.counts[i]);
    }
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (deficit[a] != deficit[b]) return deficit[a] > deficit[b];
      return a < b;
    });
    for (const std::size_t i : order) {
      const std::int64_t room = budget - designs.consumed;
      if (room <= 0) break;
      const std::int64_t grant = std::min(deficit[i], room);
      if (grant > 0) designs.draw_many(sampler, i, grant);
    }
    virtual_budget += config.delta;
  }

  if (config.exhaust_budget) {
    // Leftovers go one run at a time to the most starving design.
    while (designs.consumed < budget) {
      compute_betas_into(designs.means, designs.sds, &best, betas, &beta_total);
      designs.draw_one(sampler,
                       most_starving_index(betas, designs.inv_counts));
    }
  }
  return designs.finish(std::move(trace));
}

PolicyRun run_ocba_d(Sampler& sampler, const PolicyConfig& config,
                     std::int64_t budget) {
  const std::size_t k = sampler.num_designs();
  check_ocba_preconditions(sampler, config.n0, budget);

  RunningDesigns designs(k);
  designs.warmup(sampler, config.n0);

  std::optional<std::vector<TraceEntry>> trace;
  if (config.record_trace) trace.emplace();

  std::size_t best = 0;
  double beta_total = 0.0;
  std::vector<double> betas;
  while (designs.consumed < budget) {
    compute_betas_into(designs.means, designs.sds, &best, betas, &beta_total);
    append_trace(trace, designs.counts, betas, beta_total);
    designs.draw_one(sampler, most_starving_index(betas, designs.inv_counts));
  }
  return designs.finish(std::move(trace));
}

PolicyRun run_ocba_r(Sampler& sampler, const PolicyConfig& config,
                     std::int64_t budget) {
  const std::size_t k = sampler.num_designs();
  check_ocba_preconditions(sampler, config.n0, budget);

  RunningDesigns designs(k);
  designs.warmup(sampler, config.n0);

  std::optional<std::vector<TraceEntry>> trace;
  if (config.record_trace) trace.emplace();

  std::size_t best = 0;
  double beta_total = 0.0;
  std::vector<double> betas;
  while (designs.consumed < budget) {
    compute_betas_into(designs.means, designs.sds, &best, betas, &beta_total);
    append_trace(trace, designs.counts, betas, beta_total);
    const double u = sampler.decision_uniform();
    // min{k : u <= cumulative alpha_k}, evaluated as u*total against the
    // cumulative betas so no normalization pass is needed.
    const double threshold = u * beta_total;
    double cumulative = 0.0;
    std::size_t pick = k - 1;
    for (std::size_t i = 0; i < k; ++i) {
      cumulative += betas[i];
      if (threshold <= cumulative) {
        pick = i;
        break;
      }
    }
    designs.draw_one(sampler, pick);
  }
  return designs.finish(std::move(trace));
}

std::int64_t plus_warmup_size(double alpha0, std::int64_t budget,
                              std::size_t k) {
  return static_cast<std::int64_t>(
      std::floor(alpha0 * static_cast<double>(budget) / static_cast<double>(k)));
}

PolicyRun run_plus_variant(PolicyKind kind, Sampler& sampler, double alpha0,
                           std::int64_t budget, int delta_increment,
                           bool record_trace, bool exhaust_budget) {
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) {
    throw std::invalid_argument("plus variant: alpha0 must be in (0,1)");
  }
  const std::int64_t n0 = plus_warmup_size(alpha0, budget, sampler.num_designs());
  if (n0 < 2) {
    throw std::invalid_argument(
        "plus variant: floor(alpha0*T/K) must be >= 2");
  }
  PolicyConfig base;
  base.n0 = static_cast<int>(n0);
  base.delta = delta_increment;
  base.record_trace = record_trace;
  base.exhaust_budget = exhaust_budget;
  switch (kind) {
    case PolicyKind::kOcbaPlus:
      return run_ocba(sampler, base, budget);
    case PolicyKind::kOcbaDPlus:
      return run_ocba_d(sampler, base, budget);
    case PolicyKind::kOcbaRPlus:
      return run_ocba_r(sampler, base, budget);
    default:
      throw std::invalid_argument("run_plus_variant: not a '+' policy kind");
  }
}

PolicyRun run_ea(Sampler& sampler, std::int64_t budget) {
  const std::size_t k = sampler.num_designs();
  if (budget < static_cast<std::int64_t>(k)) {
    throw std::invalid_argument("EA: budget must be >= K");
  }
  const std::int64_t base = budget / static_cast<std::int64_t>(k);
  const std::int64_t remainder = budget - base * static_cast<std::int64_t>(k);

  RunningDesigns designs(k);
  for (std::size_t i = 0; i < k; ++i) {
    designs.draw_many(sampler, i,
                      base + (static_cast<std::int64_t>(i) < remainder ? 1 : 0));
  }
  return designs.finish();
}

PolicyRun run_ds(Sampler& sampler, double p, std::int64_t budget) {
  if (sampler.num_designs() != 2) {
    throw std::invalid_argument("DS is defined for exactly two designs");
  }
  const auto n1 = static_cast<std::int64_t>(
      std::floor(p * static_cast<double>(budget)));
  const auto n2 = static_cast<std::int64_t>(
      std::floor((1.0 - p) * static_cast<double>(budget)));
  if (n1 < 1 || n2 < 1) {
    throw std::invalid_argument("DS: both designs need at least one run");
  }
  RunningDesigns designs(2);
  designs.draw_many(sampler, 0, n1);
  designs.draw_many(sampler, 1, n2);
  return designs.finish();
}

PolicyRun run_rs(Sampler& sampler, double p, std::int64_t budget) {
  if (sampler.num_designs() != 2) {
    throw std::invalid_argument("RS is defined for exactly two designs");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("RS: p must be in (0,1)");
  }
  if (budget < 1) throw std::invalid_argument("RS: budget must be >= 1");

  std::int64_t successes = 0;
  for (std::int64_t t = 0; t < budget; ++t) {
    if (sampler.decision_uniform() < p) ++successes;
  }
  // Each design gets one extra run so both sample means exist; the oracle
  // for this policy uses the same (k+1, T-k+1) convention.
  RunningDesigns designs(2);
  designs.draw_many(sampler, 0, successes + 1);
  designs.draw_many(sampler, 1, (budget - successes) + 1);
  return designs.finish();
}

PolicyRun run_two_phase(Sampler& sampler, double alpha0, std::int64_t budget) {
  if (sampler.num_designs() != 2) {
    throw std::invalid_argument("two-phase is defined for exactly two designs");
  }
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) {
    throw std::invalid_argument("two-phase: alpha0 must be in (0,1)");
  }
  const auto n0 = static_cast<std::int64_t>(
      std::floor(alpha0 * static_cast<double>(budget) / 2.0));
  if (n0 < 2) {
    throw std::invalid_argument("two-phase: floor(alpha0*T/2) must be >= 2");
  }

  RunningDesigns phase1(2);
  phase1.warmup(sampler, n0);
  const double s1 = phase1.sds[0];
  const double s2 = phase1.sds[1];
  const double p_hat = s1 / (s1 + s2);

  const double remaining = (1.0 - alpha0) * static_cast<double>(budget);
  const auto n1 = static_cast<std::int64_t>(std::floor(remaining * p_hat)) + 1;
  const auto n2 =
      static_cast<std::int64_t>(std::floor(remaining * (1.0 - p_hat))) + 1;

  // Phase II starts from scratch: the warmup samples only set p_hat and are
  // not reused in the final means.
  RunningDesigns phase2(2);
  phase2.draw_many(sampler, 0, n1);
  phase2.draw_many(sampler, 1, n2);

  PolicyRun run = phase2.finish();
  run.final_counts = {n0 + n1, n0 + n2};
  run.total_consumed = 2 * n0 + n1 + n2;
  return run;
}

PolicyRun run_policy(Sampler& sampler, const PolicyConfig& config,
                     std::int64_t budget) {
  switch (config.kind) {
    case PolicyKind::kOcba:
      return run_ocba(sampler, config, budget);
    case PolicyKind::kOcbaD:
      return run_ocba_d(sampler, config, budget);
    case PolicyKind::kOcbaR:
      return run_ocba_r(sampler, config, budget);
    case PolicyKind::kOcbaPlus:
    case PolicyKind::kOcbaDPlus:
    case PolicyKind::kOcbaRPlus:
      return run_plus_variant(config.kind, sampler, config.alpha0, budget,
                              config.delta, config.record_trace,
                              config.exhaust_budget);
    case PolicyKind::kEqual:
      return run_ea(sampler, budget);
    case PolicyKind::kDs:
      return run_ds(sampler, config.p, budget);
    case PolicyKind::kRs:
      return run_rs(sampler, config.p, budget);
    case PolicyKind::kTwoPhase:
      return run_two_phase(sampler, config.alpha0, budget);
  }
  throw std::logic_error("run_policy: unknown policy kind");
}

std::string policy_id(const PolicyConfig& config) {
  switch (config.kind) {
    case PolicyKind::kOcba: return "ocba";
    case PolicyKind::kOcbaD: return "ocba-d";
    case PolicyKind::kOcbaR: return "ocba-r";
    case PolicyKind::kOcbaPlus: return "ocba+";
    case PolicyKind::kOcbaDPlus: return "ocba-d+";
    case PolicyKind::kOcbaRPlus: return "ocba-r+";
    case PolicyKind::kEqual: return "ea";
    case PolicyKind::kDs: return "ds";
    case PolicyKind::kRs: return "rs";
    case PolicyKind::kTwoPhase: return "two-phase";
  }
  throw std::logic_error("policy_id: unknown policy kind");
}

PolicyConfig parse_policy_id(const std::string& id) {
  PolicyConfig config;
  if (id == "ocba") config.kind = PolicyKind::kOcba;
  else if (id == "ocba-d") config.kind = PolicyKind::kOcbaD;
  else if (id == "ocba-r") config.kind = PolicyKind::kOcbaR;
  else if (id == "ocba+") config.kind = PolicyKind::kOcbaPlus;
  else if (id == "ocba-d+") config.kind = PolicyKind::kOcbaDPlus;
  else if (id == "ocba-r+") config.kind = PolicyKind::kOcbaRPlus;
  else if (id == "ea") config.kind = PolicyKind::kEqual;
  else if (id == "ds") config.kind = PolicyKind::kDs;
  else if (id == "rs") config.kind = PolicyKind::kRs;
  else if (id == "two-phase") config.kind = PolicyKind::kTwoPhase;
  else throw std::invalid_argument("unknown policy id '" + id + "'");
  return config;
}

std::int64_t min_feasible_budget(const PolicyConfig& config, std::size_t k) {
  const auto kk = static_cast<std::int64_t>(k);
  switch (config.kind) {
    case PolicyKind::kOcba:
    case PolicyKind::kOcbaD:
    case PolicyKind::kOcbaR:
      return kk * config.n0;
    case PolicyKind::kOcbaPlus:
    case PolicyKind::kOcbaDPlus:
    case PolicyKind::kOcbaRPlus: {
      auto t = static_cast<std::int64_t>(
          std::ceil(2.0 * static_cast<double>(kk) / config.alpha0));
      while (plus_warmup_size(config.alpha0, t, k) < 2) ++t;
      return t;
    }
    case PolicyKind::kEqual:
      return kk;
    case PolicyKind::kDs: {
      const double q = std::min(config.p, 1.0 - config.p);
      if (!(q > 0.0)) {
        throw std::invalid_argument("min_feasible_budget: DS needs p in (0,1)");
      }
      auto t = static_cast<std::int64_t>(std::ceil(1.0 / q)) - 1;
      if (t < 1) t = 1;
      while (static_cast<std::int64_t>(std::floor(config.p * t)) < 1 ||
             static_cast<std::int64_t>(std::floor((1.0 - config.p) * t)) < 1) {
        ++t;
      }
      return t;
    }
    case PolicyKind::kRs:
      return 1;
    case PolicyKind::kTwoPhase: {
      auto t = static_cast<std::int64_t>(std::ceil(4.0 / config.alpha0));
      while (static_cast<std::int64_t>(std::floor(config.alpha0 * t / 2.0)) < 2) ++t;
      return t;
    }
  }
  throw std::logic_error("min_feasible_budget: unknown policy kind");
}

}  // namespace rslab
