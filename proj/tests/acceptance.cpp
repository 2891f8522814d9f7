// Acceptance suite: runs the project's verification criteria end to end and
// prints one PASS/FAIL line per criterion. Exit code 0 iff everything that
// ran passed. `--skip-long` omits the decay-shape experiment (criterion 11),
// `--only 3,4` selects specific criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rslab/fractions.hpp"
#include "rslab/harness.hpp"
#include "rslab/oracles.hpp"
#include "rslab/policies.hpp"
#include "rslab/rates.hpp"
#include "rslab/rng.hpp"
#include "rslab/stats.hpp"

using namespace rslab;

namespace {

unsigned g_threads = 0;
std::string g_sweep_cache;  // dev-only shortcut; ctest always recomputes
constexpr std::uint64_t kSweepSeed = 2024;

double binom_se(double p, std::int64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof(buffer), format, args);
  va_end(args);
  return buffer;
}

// ---------------------------------------------------------------------------
// Shared experiment sweep (criteria 1, 2 and 8a reuse these cells).

const std::vector<PolicyConfig>& sweep_policies() {
  static const std::vector<PolicyConfig> policies = {
      {.kind = PolicyKind::kOcba, .n0 = 10, .delta = 20},
      {.kind = PolicyKind::kOcbaPlus, .alpha0 = 0.2, .delta = 20},
      {.kind = PolicyKind::kOcbaDPlus, .alpha0 = 0.2},
      {.kind = PolicyKind::kOcbaRPlus, .alpha0 = 0.2},
  };
  return policies;
}

using CellKey = std::tuple<std::string, std::string, std::int64_t>;

const std::map<CellKey, PcsCurvePoint>& shared_sweep() {
  static std::map<CellKey, PcsCurvePoint> cells;
  if (!cells.empty()) return cells;

  if (!g_sweep_cache.empty()) {
    // Development shortcut: reuse a previously written sweep, provided it
    // carries the exact protocol (seed, replication count, full cell grid).
    const auto points = load(g_sweep_cache);
    if (points.size() == 480) {
      bool ok = true;
      for (const PcsCurvePoint& point : points) {
        ok = ok && point.master_seed == kSweepSeed && point.replications == 10000;
      }
      if (ok) {
        std::fprintf(stderr, "[acceptance] loaded cached sweep from %s\n",
                     g_sweep_cache.c_str());
        for (const PcsCurvePoint& point : points) {
          cells[{point.instance_id, point.policy_id, point.budget}] = point;
        }
        return cells;
      }
    }
    std::fprintf(stderr,
                 "[acceptance] cache %s does not match the protocol; "
                 "recomputing\n", g_sweep_cache.c_str());
  }

  ExperimentSpec spec;
  for (const ProblemInstance& instance : builtin_instances()) {
    spec.instance_ids.push_back(instance.id);
  }
  spec.policies = sweep_policies();
  spec.budgets = {200, 4000, 200};
  spec.replications = 10000;
  spec.master_seed = kSweepSeed;

  std::fprintf(stderr, "[acceptance] running the shared PCS sweep "
                       "(6 instances x 4 policies x 20 budgets x 10^4 reps)...\n");
  const auto points = run_sweep(spec, g_threads);
  persist(points, "acceptance_sweep.csv");
  for (const PcsCurvePoint& point : points) {
    cells[{point.instance_id, point.policy_id, point.budget}] = point;
  }
  return cells;
}

// ---------------------------------------------------------------------------

bool criterion_1(std::string& detail) {
  const auto& cells = shared_sweep();
  int violations = 0;
  double worst_margin = 1.0;
  std::string worst;
  for (const ProblemInstance& instance : builtin_instances()) {
    for (std::int64_t budget = 200; budget <= 4000; budget += 200) {
      const auto base = cells.find({instance.id, "ocba", budget});
      if (base == cells.end()) continue;
      for (const char* plus : {"ocba+", "ocba-d+", "ocba-r+"}) {
        const auto cell = cells.find({instance.id, plus, budget});
        if (cell == cells.end()) continue;
        const double pooled =
            std::sqrt(base->second.std_err * base->second.std_err +
                      cell->second.std_err * cell->second.std_err);
        const double margin = cell->second.pcs_hat -
                              (base->second.pcs_hat - 2.0 * pooled);
        if (margin < worst_margin) {
          worst_margin = margin;
          worst = fmt("%s/%s/T=%lld pcs=%.4f vs ocba=%.4f (2*pooledSE=%.4f)",
                      instance.id.c_str(), plus,
                      static_cast<long long>(budget), cell->second.pcs_hat,
                      base->second.pcs_hat, 2.0 * pooled);
        }
        if (margin < 0.0) ++violations;
      }
    }
  }
  detail = fmt("%d violating cells of 360; worst: %s", violations, worst.c_str());
  return violations == 0;
}

std::optional<std::int64_t> crossing_budget(
    const std::map<CellKey, PcsCurvePoint>& cells, const std::string& instance,
    const std::string& policy, double level) {
  for (std::int64_t budget = 200; budget <= 4000; budget += 200) {
    const auto cell = cells.find({instance, policy, budget});
    if (cell != cells.end() && cell->second.pcs_hat >= level) return budget;
  }
  return std::nullopt;
}

bool criterion_2(std::string& detail) {
  const auto& cells = shared_sweep();
  bool pass = true;
  std::string parts;
  for (const char* instance : {"ten-designs-a", "slippage-a"}) {
    const auto t_plus = crossing_budget(cells, instance, "ocba-r+", 0.95);
    const auto t_ocba = crossing_budget(cells, instance, "ocba", 0.95);
    if (!t_plus) {
      pass = false;
      parts += fmt("[%s: ocba-r+ never reaches 95%%] ", instance);
      continue;
    }
    // An uncrossed OCBA curve lower-bounds its requirement by the grid end.
    const std::int64_t t_o = t_ocba.value_or(4200);
    const double ratio = static_cast<double>(t_o) / static_cast<double>(*t_plus);
    parts += fmt("[%s: ocba %s%lld vs ocba-r+ %lld, ratio %.2f] ", instance,
                 t_ocba ? "" : ">", static_cast<long long>(t_o),
                 static_cast<long long>(*t_plus), ratio);
    if (ratio < 2.0) pass = false;
  }
  detail = parts;
  return pass;
}

bool criterion_3(std::string& detail) {
  const ProblemInstance wide{"pair-12", {1.0, 0.0}, {1.0, 2.0}};
  const ProblemInstance equal{"pair-11", {1.0, 0.0}, {1.0, 1.0}};
  struct Case {
    const char* name;
    const ProblemInstance* instance;
    PolicyConfig config;
    std::int64_t budget;
    std::int64_t reps;
    double exact;
  };
  const Case cases[] = {
      {"ds", &wide, {.kind = PolicyKind::kDs, .p = 1.0 / 3.0}, 50, 100000,
       pfs_ds({1.0, 1.0, 2.0}, 1.0 / 3.0, 50)},
      {"rs", &equal, {.kind = PolicyKind::kRs, .p = 0.5}, 30, 100000,
       pfs_rs({1.0, 1.0, 1.0}, 0.5, 30)},
      {"two-phase", &wide, {.kind = PolicyKind::kTwoPhase, .alpha0 = 0.2}, 40,
       1000000, pfs_two_phase({1.0, 1.0, 2.0}, 0.2, 40)},
  };
  bool pass = true;
  std::string parts;
  for (const Case& c : cases) {
    const double mc = estimate_pfs(*c.instance, c.config, c.budget, c.reps,
                                   909 + c.budget, g_threads);
    const double se = binom_se(c.exact, c.reps);
    const double sigmas = std::fabs(mc - c.exact) / se;
    parts += fmt("[%s: mc=%.6f exact=%.6f %.2f se] ", c.name, mc, c.exact, sigmas);
    if (sigmas > 3.0) pass = false;
  }
  detail = parts;
  return pass;
}

TwoDesignParams random_params(std::uint64_t trial, std::uint64_t salt) {
  const double u1 = uniform_sample({salt, trial, 1, 0});
  const double u2 = uniform_sample({salt, trial, 2, 0});
  const double u3 = uniform_sample({salt, trial, 3, 0});
  return {0.05 + 4.95 * u1, std::pow(10.0, -1.0 + 2.0 * u2),
          std::pow(10.0, -1.0 + 2.0 * u3)};
}

bool criterion_4(std::string& detail) {
  int failures = 0;
  for (std::uint64_t trial = 0; trial < 1000; ++trial) {
    const TwoDesignParams params = random_params(trial, 41);
    const double optimal = optimal_rate_ds(params).rate;
    const double ea = rate_ea(params);
    if (!(optimal / 2.0 <= ea && ea <= optimal)) ++failures;
  }
  detail = fmt("%d of 1000 triples violate R*/2 <= R_EA <= R* (exact)", failures);
  return failures == 0;
}

bool criterion_5(std::string& detail) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double worst_gap = 0.0;
  std::int64_t worst_grid = 0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    TwoDesignParams params = random_params(trial, 52);
    // Keep the T=100 miss probability representable (z <= 30): the grid
    // comparison says nothing once Phi underflows to a flat zero.
    params.delta = (params.sigma1 + params.sigma2) *
                   (0.05 + 2.95 * uniform_sample({52, trial, 4, 0}));
    // Golden-section maximization of the DS rate over p.
    double lo = 1e-9, hi = 1.0 - 1e-9;
    double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
    double f1 = rate_ds(params, x1), f2 = rate_ds(params, x2);
    while (hi - lo > 1e-10) {
      if (f1 >= f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - kInvPhi * (hi - lo); f1 = rate_ds(params, x1);
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + kInvPhi * (hi - lo); f2 = rate_ds(params, x2);
      }
    }
    const double p_star = params.sigma1 / (params.sigma1 + params.sigma2);
    worst_gap = std::max(worst_gap, std::fabs(0.5 * (lo + hi) - p_star));

    // Integer-grid minimizer of the DS miss probability at T=100.
    const std::int64_t budget = 100;
    std::int64_t best_n1 = 1;
    double best = 2.0;
    for (std::int64_t n1 = 1; n1 < budget; ++n1) {
      const double pfs = normal_cdf(
          -params.delta /
          std::sqrt(params.sigma1 * params.sigma1 / static_cast<double>(n1) +
                    params.sigma2 * params.sigma2 /
                        static_cast<double>(budget - n1)));
      if (pfs < best) {
        best = pfs;
        best_n1 = n1;
      }
    }
    const auto target = static_cast<std::int64_t>(
        std::floor(p_star * static_cast<double>(budget)));
    worst_grid = std::max<std::int64_t>(worst_grid,
                                        std::llabs(best_n1 - target));
  }
  detail = fmt("max |argmax - p*| = %.2e (tol 1e-6); max grid offset = %lld "
               "(tol 1)", worst_gap, static_cast<long long>(worst_grid));
  return worst_gap <= 1e-6 && worst_grid <= 1;
}

bool criterion_6(std::string& detail) {
  int violations = 0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const TwoDesignParams params = random_params(trial, 63);
    for (int ip = 1; ip <= 99; ++ip) {
      const double p = ip / 100.0;
      const double rate = rate_rs(params, p).rate;
      if (rate > rate_ds(params, p) + 1e-12 ||
          rate > -std::log1p(-p) + 1e-12) {
        ++violations;
      }
    }
  }
  const double extreme = rate_rs({1000.0, 1.0, 1.0}, 0.5).rate;
  const double gap = std::fabs(extreme - std::log(2.0));
  detail = fmt("%d of 1980 grid violations; |rate(delta=1e3) - log 2| = %.2e "
               "(tol 1e-3)", violations, gap);
  return violations == 0 && gap <= 1e-3;
}

bool criterion_7(std::string& detail) {
  double rates[3];
  double worst_gap = 0.0;
  int at = 0;
  for (const double delta : {1.0, 10.0, 100.0}) {
    const TwoDesignParams params{delta, 1.0, 2.0};
    const RateResult result = rate_two_phase(params, 0.2);
    rates[at++] = result.rate;
    double grid_min = 1e300;
    for (std::int64_t j = 0; j <= 1000000; ++j) {
      const double p = 1e-9 + (1.0 - 2e-9) * static_cast<double>(j) / 1000000.0;
      grid_min = std::min(grid_min, two_phase_rate_objective(params, 0.2, p));
    }
    worst_gap = std::max(worst_gap, std::fabs(result.rate - grid_min));
  }
  const bool increasing = rates[0] < rates[1] && rates[1] < rates[2];
  detail = fmt("rates %.6f < %.6f < %.6f (%s); max |solver - 1e6 grid| = %.2e "
               "(tol 1e-9)", rates[0], rates[1], rates[2],
               increasing ? "strictly increasing" : "NOT increasing", worst_gap);
  return increasing && worst_gap <= 1e-9;
}

bool criterion_8(std::string& detail) {
  // (a) warmup upper bound vs the sweep's Monte Carlo PFS for the three
  // "+" policies. The bound is evaluated at the warmup share each policy
  // actually uses per design: N0 = floor(0.2*T/K) = floor((0.2/K)*T).
  const auto& cells = shared_sweep();
  int upper_violations = 0;
  double worst_upper = 1.0;
  for (const ProblemInstance& instance : builtin_instances()) {
    const double alpha_eff = 0.2 / static_cast<double>(instance.num_designs());
    for (const std::int64_t budget : {1000L, 4000L}) {
      const double bound = finite_sample_upper_bound(instance, alpha_eff, budget);
      for (const char* plus : {"ocba+", "ocba-d+", "ocba-r+"}) {
        const auto cell = cells.find({instance.id, plus, budget});
        if (cell == cells.end()) continue;
        const double pfs = 1.0 - cell->second.pcs_hat;
        const double margin = bound - (pfs - 3.0 * cell->second.std_err);
        worst_upper = std::min(worst_upper, margin);
        if (margin < 0.0) ++upper_violations;
      }
    }
  }

  // (b) variance-driven lower bound vs three OCBA-type policies at K=2.
  const ProblemInstance pair{"pair-11", {1.0, 0.0}, {1.0, 1.0}};
  const double lower = variance_driven_lower_bound({1.0, 1.0, 1.0}, 100);
  int lower_violations = 0;
  std::string parts;
  for (const PolicyKind kind :
       {PolicyKind::kOcba, PolicyKind::kOcbaD, PolicyKind::kOcbaR}) {
    PolicyConfig config{.kind = kind, .n0 = 5, .delta = 1};
    const double pfs =
        estimate_pfs(pair, config, 100, 1000000, 1717, g_threads);
    const double se = binom_se(std::max(pfs, lower), 1000000);
    parts += fmt("[%s pfs=%.2e] ", policy_id(config).c_str(), pfs);
    if (lower > pfs + 3.0 * se) ++lower_violations;
  }
  detail = fmt("upper: %d violations (worst margin %.3g); lower=%.3e vs %s",
               upper_violations, worst_upper, lower, parts.c_str());
  return upper_violations == 0 && lower_violations == 0;
}

bool criterion_9(std::string& detail) {
  int violations = 0;
  long checks = 0;
  // Lemma-style sd tail bounds against the exact chi-square probabilities.
  for (std::int64_t n = 2; n <= 50; ++n) {
    const double nm1 = static_cast<double>(n - 1);
    for (int fx = 1; fx <= 19; ++fx) {
      for (const double sigma : {1.0, 3.7}) {
        const double x = 0.05 * fx * sigma;
        const auto bounds = sd_tail_upper_bounds({n, sigma, x});
        const double low = sigma - x;
        const double high = sigma + x;
        const double exact_left =
            chi2_cdf(n - 1, nm1 * low * low / (sigma * sigma));
        const double exact_right =
            1.0 - chi2_cdf(n - 1, nm1 * high * high / (sigma * sigma));
        checks += 2;
        if (exact_left > bounds.lower) ++violations;
        if (exact_right > bounds.upper) ++violations;
      }
    }
  }
  for (const std::int64_t n : {2, 3, 5, 10, 25, 50}) {
    for (const double sigma : {0.5, 1.0, 2.0}) {
      for (const double b_scale : {0.5, 1.0, 2.0}) {
        const double b = b_scale * sigma;
        for (const double frac : {0.1, 0.25, 0.5, 0.75, 0.9}) {
          const double a = frac * b;
          const double nm1 = static_cast<double>(n - 1);
          const double exact = chi2_cdf(n - 1, nm1 * a * a / (sigma * sigma));
          ++checks;
          if (sd_left_tail_lower_bound(n, sigma, a, b) > exact) ++violations;
        }
      }
    }
  }
  detail = fmt("%d of %ld strict inequalities violated", violations, checks);
  return violations == 0;
}

bool criterion_10(std::string& detail) {
  // Normalization over the (n0, sigma) grid.
  double worst_norm = 0.0;
  for (const std::int64_t n0 : {2, 3, 5, 10, 40}) {
    for (const auto& [s1, s2] :
         std::vector<std::pair<double, double>>{{1, 1}, {1, 2}, {3, 0.5}}) {
      constexpr int kIntervals = 200000;
      double integral = 0.0;
      const double h = 1.0 / kIntervals;
      double prev = phat_density(0.0, n0, s1, s2);
      for (int i = 1; i <= kIntervals; ++i) {
        const double mid = phat_density((i - 0.5) * h, n0, s1, s2);
        const double cur = phat_density(i * h, n0, s1, s2);
        integral += h / 6.0 * (prev + 4.0 * mid + cur);
        prev = cur;
      }
      worst_norm = std::max(worst_norm, std::fabs(integral - 1.0));
    }
  }

  // KS distance between simulated phase-I fractions and the density's CDF.
  double worst_ks = 0.0;
  struct KsCase { std::int64_t n0; double s1, s2; };
  for (const KsCase& c : {KsCase{5, 1.0, 2.0}, KsCase{2, 1.0, 1.0}}) {
    std::vector<double> draws;
    draws.reserve(100000);
    for (std::uint64_t rep = 0; rep < 100000; ++rep) {
      DesignState a, b;
      for (std::int64_t r = 0; r < c.n0; ++r) {
        a.add(normal_sample({8101, rep, 0, static_cast<std::uint64_t>(r)}, 0.0, c.s1));
        b.add(normal_sample({8101, rep, 1, static_cast<std::uint64_t>(r)}, 0.0, c.s2));
      }
      draws.push_back(a.sample_sd() / (a.sample_sd() + b.sample_sd()));
    }
    std::sort(draws.begin(), draws.end());
    // CDF tabulated once by cumulative Simpson, then interpolated.
    constexpr int kGrid = 40000;
    std::vector<double> cdf(kGrid + 1, 0.0);
    const double h = 1.0 / kGrid;
    for (int i = 1; i <= kGrid; ++i) {
      const double a0 = phat_density((i - 1) * h, c.n0, c.s1, c.s2);
      const double am = phat_density((i - 0.5) * h, c.n0, c.s1, c.s2);
      const double a1 = phat_density(i * h, c.n0, c.s1, c.s2);
      cdf[i] = cdf[i - 1] + h / 6.0 * (a0 + 4.0 * am + a1);
    }
    const double n = static_cast<double>(draws.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
      const double x = std::clamp(draws[i], 0.0, 1.0) * kGrid;
      const auto j = static_cast<std::size_t>(x);
      const double value = j >= static_cast<std::size_t>(kGrid)
                               ? cdf[kGrid]
                               : cdf[j] + (x - static_cast<double>(j)) *
                                              (cdf[j + 1] - cdf[j]);
      ks = std::max(ks, std::fabs(value - static_cast<double>(i) / n));
      ks = std::max(ks, std::fabs(static_cast<double>(i + 1) / n - value));
    }
    worst_ks = std::max(worst_ks, ks);
  }
  detail = fmt("max |integral - 1| = %.2e (tol 1e-8); max KS = %.4f (tol 0.01)",
               worst_norm, worst_ks);
  return worst_norm <= 1e-8 && worst_ks < 0.01;
}

bool criterion_11(std::string& detail) {
  // Decay-shape diagnostic: constant-warmup OCBA should look polynomial in
  // log PFS vs log T; the linear-warmup variant should look exponential.
  const ProblemInstance pair{"pair-11", {1.0, 0.0}, {1.0, 1.0}};
  const std::vector<std::int64_t> budgets{100,  178,  316,  562, 1000,
                                          1778, 3162, 5623, 10000};
  constexpr std::int64_t kReps = 1000000;
  struct Arm {
    const char* name;
    PolicyConfig config;
    std::vector<std::pair<std::int64_t, double>> curve;
    std::vector<std::int64_t> zero_pfs_at;
  };
  Arm arms[] = {
      {"ocba(n0=2)", {.kind = PolicyKind::kOcba, .n0 = 2, .delta = 20}, {}, {}},
      {"ocba+(a0=0.25)",
       {.kind = PolicyKind::kOcbaPlus, .alpha0 = 0.25, .delta = 20}, {}, {}},
  };
  for (Arm& arm : arms) {
    for (const std::int64_t budget : budgets) {
      const double pfs =
          estimate_pfs(pair, arm.config, budget, kReps, 111, g_threads);
      std::fprintf(stderr, "[acceptance]   %s T=%lld pfs=%.3e\n", arm.name,
                   static_cast<long long>(budget), pfs);
      arm.curve.emplace_back(budget, pfs);
      if (pfs <= 0.0) arm.zero_pfs_at.push_back(budget);
    }
  }

  std::string parts;
  bool pass = true;
  // OCBA with constant warmup: polynomial fit should win.
  // OCBA+ with linear warmup: exponential fit should win.
  const bool want_poly_better[] = {true, false};
  for (int i = 0; i < 2; ++i) {
    Arm& arm = arms[i];
    if (!arm.zero_pfs_at.empty()) {
      pass = false;
      parts += fmt("[%s: pfs_hat = 0 at %zu budgets (first T=%lld); "
                   "empirical rate undefined at %lld reps/point] ",
                   arm.name, arm.zero_pfs_at.size(),
                   static_cast<long long>(arm.zero_pfs_at.front()),
                   static_cast<long long>(kReps));
      continue;
    }
    const DecayDiagnostics diag = empirical_ld_rate(arm.curve);
    const bool poly_better = diag.polynomial_r2 > diag.exponential_r2;
    parts += fmt("[%s: R2 loglog=%.4f logT=%.4f -> %s decay] ", arm.name,
                 diag.polynomial_r2, diag.exponential_r2,
                 poly_better ? "polynomial" : "exponential");
    if (poly_better != want_poly_better[i]) pass = false;
  }
  detail = parts;
  return pass;
}

bool criterion_12(std::string& detail) {
  ExperimentSpec spec;
  spec.instance_ids = {"slippage-a", "ten-designs-a"};
  spec.policies = {{.kind = PolicyKind::kOcbaRPlus, .alpha0 = 0.2},
                   {.kind = PolicyKind::kEqual}};
  spec.budgets = {200, 1000, 400};
  spec.replications = 2000;
  spec.master_seed = 3333;

  const std::string path_serial = "acceptance_det_serial.csv";
  const std::string path_parallel = "acceptance_det_parallel.csv";
  const std::string path_repeat = "acceptance_det_repeat.csv";
  persist(run_sweep(spec, 1), path_serial);
  persist(run_sweep(spec, 3), path_parallel);
  persist(run_sweep(spec, 1), path_repeat);

  const auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
  };
  const std::string serial = slurp(path_serial);
  const bool parallel_equal = serial == slurp(path_parallel);
  const bool repeat_equal = serial == slurp(path_repeat);
  detail = fmt("1 vs 3 threads byte-identical: %s; repeated run: %s",
               parallel_equal ? "yes" : "NO", repeat_equal ? "yes" : "NO");
  return parallel_equal && repeat_equal && !serial.empty();
}

struct Criterion {
  int id;
  const char* title;
  std::function<bool(std::string&)> run;
  bool long_running = false;
};

}  // namespace

int main(int argc, char** argv) {
  bool skip_long = false;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--skip-long") == 0) {
      skip_long = true;
    } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string token;
      while (std::getline(ss, token, ',')) only.insert(std::stoi(token));
    } else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      g_threads = static_cast<unsigned>(std::stoul(argv[++i]));
    } else if (std::strcmp(argv[i], "--sweep-cache") == 0 && i + 1 < argc) {
      g_sweep_cache = argv[++i];
    } else {
      std::fprintf(stderr,
                   "usage: %s [--skip-long] [--only 1,2,...] [--threads N] "
                   "[--sweep-cache results.csv]\n",
                   argv[0]);
      return 2;
    }
  }

  const Criterion criteria[] = {
      {1, "Figure-1 qualitative reproduction (plus >= ocba - 2SE everywhere)",
       criterion_1},
      {2, "95% PCS budget ratio ocba/ocba-r+ >= 2 on the two hard instances",
       criterion_2},
      {3, "Monte Carlo PFS matches the DS/RS/two-phase oracles (3 SE)",
       criterion_3},
      {4, "Rate sandwich R*/2 <= R_EA <= R* exactly on 1000 random triples",
       criterion_4},
      {5, "p* optimality: rate argmax and integer-grid PFS minimizer",
       criterion_5},
      {6, "RS rate bounded by min(rate_ds, -log(1-p)); boundary value at "
          "large delta", criterion_6},
      {7, "Two-phase rate strictly increasing in delta; solver matches 1e6 "
          "grid", criterion_7},
      {8, "Finite-sample upper bound and variance-driven lower bound hold",
       criterion_8},
      {9, "Tail-bound lemmas strict against the exact chi-square CDF",
       criterion_9},
      {10, "p-hat density normalization and KS agreement", criterion_10},
      {11, "Decay-shape diagnostic (long running)", criterion_11, true},
      {12, "Byte-identical sweeps across repetition and parallelism",
       criterion_12},
  };

  int failures = 0;
  int ran = 0;
  for (const Criterion& criterion : criteria) {
    if (!only.empty() && only.find(criterion.id) == only.end()) continue;
    if (skip_long && criterion.long_running) {
      std::printf("SKIP %2d. %s\n", criterion.id, criterion.title);
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
      pass = criterion.run(detail);
    } catch (const std::exception& error) {
      detail = fmt("exception: %s", error.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    ++ran;
    if (!pass) ++failures;
    std::printf("%s %2d. %s [%.1fs]\n     %s\n", pass ? "PASS" : "FAIL",
                criterion.id, criterion.title, seconds, detail.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d of %d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
