#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "rslab/harness.hpp"
#include "rslab/oracles.hpp"
#include "rslab/plot.hpp"
#include "rslab/policies.hpp"
#include "rslab/rates.hpp"

namespace {

using namespace rslab;

std::string join(const std::vector<double>& values) {
  std::string out;
  char buffer[40];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buffer, sizeof(buffer), "%g", values[i]);
    if (i) out += " ";
    out += buffer;
  }
  return out;
}

BudgetRange parse_budgets(const std::string& text) {
  BudgetRange range;
  if (std::sscanf(text.c_str(), "%" SCNd64 ":%" SCNd64 ":%" SCNd64,
                  &range.start, &range.stop, &range.step) != 3) {
    throw CLI::ValidationError("--budgets", "expected start:stop:step");
  }
  return range;
}

PolicyConfig make_config(const std::string& id, int n0, int delta,
                         double alpha0, double p, bool exhaust) {
  PolicyConfig config = parse_policy_id(id);
  config.n0 = n0;
  config.delta = delta;
  config.alpha0 = alpha0;
  config.p = p;
  config.exhaust_budget = exhaust;
  return config;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t comma = text.find(',', begin);
    if (comma == std::string::npos) {
      out.push_back(text.substr(begin));
      break;
    }
    out.push_back(text.substr(begin, comma - begin));
    begin = comma + 1;
  }
  return out;
}

// Experiment manifest: flat key=value lines mirroring the run flags.
// Applied only where the command line did not set the flag, so flags win.
struct RunSettings {
  std::vector<std::string> instances;
  std::vector<std::string> policies;
  std::string budgets;
  std::int64_t reps;
  std::uint64_t seed;
  int n0;
  int delta;
  double alpha0;
  double p;
  bool exhaust;
  unsigned threads;
  std::string out;
};

void apply_run_config(const std::string& path, const CLI::App& cmd,
                      RunSettings& s) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  const auto unset = [&](const char* flag) { return cmd.count(flag) == 0; };
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' ||
                             line.back() == '\t')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_number) +
                               ": expected key=value");
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "instance" || key == "instances") {
      if (unset("--instance")) s.instances = split_list(value);
    } else if (key == "policies") {
      if (unset("--policies")) s.policies = split_list(value);
    } else if (key == "budgets") {
      if (unset("--budgets")) s.budgets = value;
    } else if (key == "reps") {
      if (unset("--reps")) s.reps = std::stoll(value);
    } else if (key == "seed") {
      if (unset("--seed")) s.seed = std::stoull(value);
    } else if (key == "n0") {
      if (unset("--n0")) s.n0 = std::stoi(value);
    } else if (key == "delta") {
      if (unset("--delta")) s.delta = std::stoi(value);
    } else if (key == "alpha0") {
      if (unset("--alpha0")) s.alpha0 = std::stod(value);
    } else if (key == "p") {
      if (unset("--p")) s.p = std::stod(value);
    } else if (key == "exhaust") {
      if (unset("--exhaust")) s.exhaust = (value == "1" || value == "true");
    } else if (key == "threads") {
      if (unset("--threads")) s.threads = static_cast<unsigned>(std::stoul(value));
    } else if (key == "out") {
      if (unset("--out")) s.out = value;
    } else {
      throw std::runtime_error(path + ":" + std::to_string(line_number) +
                               ": unknown key '" + key + "'");
    }
  }
}

void print_instance_row(const ProblemInstance& instance) {
  std::printf("%-22s K=%-3zu mu=[%s] sigma=[%s]\n", instance.id.c_str(),
              instance.num_designs(), join(instance.means).c_str(),
              join(instance.stds).c_str());
}

int cmd_instances(const std::string& id) {
  if (id.empty()) {
    for (const ProblemInstance& instance : builtin_instances()) {
      print_instance_row(instance);
    }
  } else {
    print_instance_row(find_instance(id));  // throws on unknown id
  }
  return 0;
}

int cmd_run(const std::vector<std::string>& instance_ids,
            const std::vector<std::string>& policy_ids,
            const std::string& budgets, std::int64_t reps, std::uint64_t seed,
            int n0, int delta, double alpha0, double p, bool exhaust,
            unsigned threads, const std::string& out_path) {
  ExperimentSpec spec;
  spec.instance_ids = instance_ids;
  for (const std::string& id : policy_ids) {
    spec.policies.push_back(make_config(id, n0, delta, alpha0, p, exhaust));
  }
  spec.budgets = parse_budgets(budgets);
  spec.replications = reps;
  spec.master_seed = seed;

  const std::vector<PcsCurvePoint> points = run_sweep(spec, threads);
  persist(points, out_path);

  // Per-instance summary at the largest budget of each curve.
  for (const std::string& instance_id : spec.instance_ids) {
    std::printf("%s:\n", instance_id.c_str());
    for (const PolicyConfig& config : spec.policies) {
      const std::string id = policy_id(config);
      const PcsCurvePoint* last = nullptr;
      for (const PcsCurvePoint& point : points) {
        if (point.instance_id == instance_id && point.policy_id == id) {
          if (last == nullptr || point.budget > last->budget) last = &point;
        }
      }
      if (last != nullptr) {
        std::printf("  %-10s PCS(T=%" PRId64 ") = %.4f +- %.4f\n", id.c_str(),
                    last->budget, last->pcs_hat, last->std_err);
      }
    }
  }
  std::printf("wrote %zu rows to %s\n", points.size(), out_path.c_str());
  return 0;
}

int cmd_rates_params(double delta, double sigma1, double sigma2, double p,
                     double alpha0) {
  const TwoDesignParams params{delta, sigma1, sigma2};
  const RateResult ds_opt = optimal_rate_ds(params);
  const RateResult rs = rate_rs(params, p);
  const RateResult two_phase = rate_two_phase(params, alpha0);
  std::printf("rate_ds(p=%.17g) = %.17g\n", p, rate_ds(params, p));
  std::printf("optimal_rate_ds = %.17g\n", ds_opt.rate);
  std::printf("p_star = %.17g\n", ds_opt.minimizer);
  std::printf("rate_ea = %.17g\n", rate_ea(params));
  std::printf("rate_rs(p=%.17g) = %.17g\n", p, rs.rate);
  std::printf("rate_rs_minimizer_alpha = %.17g\n", rs.minimizer);
  std::printf("rate_two_phase(alpha0=%.17g) = %.17g\n", alpha0, two_phase.rate);
  std::printf("rate_two_phase_minimizer_p = %.17g\n", two_phase.minimizer);
  return 0;
}

int cmd_rates_curve(const std::string& path, const std::string& instance_id,
                    const std::string& policy) {
  std::vector<std::pair<std::int64_t, double>> curve;
  for (const PcsCurvePoint& point : load(path)) {
    if (point.instance_id == instance_id && point.policy_id == policy) {
      curve.emplace_back(point.budget, 1.0 - point.pcs_hat);
    }
  }
  if (curve.empty()) {
    throw std::runtime_error("no rows for " + instance_id + "/" + policy +
                             " in " + path);
  }
  const DecayDiagnostics diag = empirical_ld_rate(curve);
  for (const auto& [budget, rate] : diag.pointwise) {
    std::printf("T=%" PRId64 " empirical_rate=%.17g\n", budget, rate);
  }
  std::printf("exponential_fit: slope=%.17g r2=%.17g\n", diag.exponential_slope,
              diag.exponential_r2);
  std::printf("polynomial_fit: slope=%.17g r2=%.17g\n", diag.polynomial_slope,
              diag.polynomial_r2);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fixed-budget ranking-and-selection laboratory"};
  app.require_subcommand(1);

  // instances ------------------------------------------------------------
  auto* instances_cmd =
      app.add_subcommand("instances", "list the built-in problem instances");
  std::string instance_filter;
  instances_cmd->add_option("--id", instance_filter, "show one instance");

  // run ------------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "run a PCS sweep and write a CSV");
  RunSettings run_settings{
      {}, {"ocba", "ocba+", "ocba-d+", "ocba-r+"}, "200:4000:200", 10000, 1,
      10, 20, 0.2, 0.5, true, 0, "results.csv"};
  std::string run_config_path;
  run_cmd->add_option("--config", run_config_path,
                      "key=value file mirroring these flags; flags win");
  run_cmd->add_option("--instance,--instances", run_settings.instances,
                      "instance ids (default: all built-ins)")
      ->delimiter(',');
  run_cmd->add_option("--policies", run_settings.policies, "policy ids")
      ->delimiter(',');
  run_cmd->add_option("--budgets", run_settings.budgets,
                      "start:stop:step (inclusive)");
  run_cmd->add_option("--reps", run_settings.reps, "replications per cell")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run_settings.seed, "master seed")
      ->envname("RSLAB_SEED");
  run_cmd->add_option("--n0", run_settings.n0,
                      "constant warmup size (OCBA family)");
  run_cmd->add_option("--delta", run_settings.delta, "OCBA budget increment");
  run_cmd->add_option("--alpha0", run_settings.alpha0,
                      "warmup budget share ('+' variants, two-phase)");
  run_cmd->add_option("--p", run_settings.p, "design-1 fraction (DS/RS)");
  run_cmd->add_flag("--exhaust,!--no-exhaust", run_settings.exhaust,
                    "OCBA spends loop leftovers (default on)");
  run_cmd->add_option("--threads", run_settings.threads,
                      "worker threads (0 = auto)");
  run_cmd->add_option("--out", run_settings.out, "output CSV path");

  // rates ------------------------------------------------------------------
  auto* rates_cmd =
      app.add_subcommand("rates", "closed-form and variational LD rates");
  double rates_delta = 1.0, rates_sigma1 = 1.0, rates_sigma2 = 1.0;
  double rates_p = 0.5, rates_alpha0 = 0.2;
  std::string rates_curve, rates_instance, rates_policy;
  rates_cmd->add_option("--delta", rates_delta, "mean gap mu1 - mu2");
  rates_cmd->add_option("--sigma1", rates_sigma1, "std of design 1");
  rates_cmd->add_option("--sigma2", rates_sigma2, "std of design 2");
  rates_cmd->add_option("--p", rates_p, "static design-1 fraction");
  rates_cmd->add_option("--alpha0", rates_alpha0, "two-phase warmup share");
  rates_cmd->add_option("--curve", rates_curve,
                        "results CSV: report empirical decay rates instead");
  rates_cmd->add_option("--instance", rates_instance, "instance id (curve mode)");
  rates_cmd->add_option("--policy", rates_policy, "policy id (curve mode)");

  // bounds -----------------------------------------------------------------
  auto* bounds_cmd =
      app.add_subcommand("bounds", "finite-sample PFS bounds");
  std::string bounds_instance;
  double bounds_alpha0 = 0.2;
  std::int64_t bounds_t = 1000;
  bool bounds_two_design = false;
  double bounds_delta = 1.0, bounds_sigma1 = 1.0, bounds_sigma2 = 1.0;
  bounds_cmd->add_option("--instance", bounds_instance,
                         "instance id for the warmup upper bound");
  bounds_cmd->add_option("--alpha0", bounds_alpha0, "warmup share");
  bounds_cmd->add_option("--t", bounds_t, "budget")->check(CLI::PositiveNumber);
  bounds_cmd->add_flag("--two-design", bounds_two_design,
                       "variance-driven lower bound for two designs");
  bounds_cmd->add_option("--delta", bounds_delta, "mean gap (with --two-design)");
  bounds_cmd->add_option("--sigma1", bounds_sigma1, "std of design 1");
  bounds_cmd->add_option("--sigma2", bounds_sigma2, "std of design 2");

  // oracle -----------------------------------------------------------------
  auto* oracle_cmd =
      app.add_subcommand("oracle", "exact PFS oracles for two designs");
  std::string oracle_kind;
  double oracle_delta = 1.0, oracle_sigma1 = 1.0, oracle_sigma2 = 1.0;
  double oracle_p = 0.5, oracle_alpha0 = 0.2;
  std::int64_t oracle_t = 100, oracle_n0 = 2;
  oracle_cmd
      ->add_option("--kind", oracle_kind, "ds | rs | two-phase | phat-density")
      ->required()
      ->check(CLI::IsMember({"ds", "rs", "two-phase", "phat-density"}));
  oracle_cmd->add_option("--delta", oracle_delta, "mean gap");
  oracle_cmd->add_option("--sigma1", oracle_sigma1, "std of design 1");
  oracle_cmd->add_option("--sigma2", oracle_sigma2, "std of design 2");
  oracle_cmd->add_option("--p", oracle_p, "fraction (ds/rs) or point (phat)");
  oracle_cmd->add_option("--alpha0", oracle_alpha0, "two-phase warmup share");
  oracle_cmd->add_option("--t", oracle_t, "budget");
  oracle_cmd->add_option("--n0", oracle_n0, "warmup size (phat-density)");

  // plot -------------------------------------------------------------------
  auto* plot_cmd = app.add_subcommand("plot", "render a results CSV as SVG");
  std::string plot_in, plot_out;
  plot_cmd->add_option("--in", plot_in, "results CSV")->required();
  plot_cmd->add_option("--out", plot_out, "output SVG path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (instances_cmd->parsed()) return cmd_instances(instance_filter);
    if (run_cmd->parsed()) {
      if (!run_config_path.empty()) {
        apply_run_config(run_config_path, *run_cmd, run_settings);
      }
      if (run_settings.instances.empty()) {
        for (const ProblemInstance& instance : builtin_instances()) {
          run_settings.instances.push_back(instance.id);
        }
      }
      return cmd_run(run_settings.instances, run_settings.policies,
                     run_settings.budgets, run_settings.reps, run_settings.seed,
                     run_settings.n0, run_settings.delta, run_settings.alpha0,
                     run_settings.p, run_settings.exhaust, run_settings.threads,
                     run_settings.out);
    }
    if (rates_cmd->parsed()) {
      if (!rates_curve.empty()) {
        return cmd_rates_curve(rates_curve, rates_instance, rates_policy);
      }
      return cmd_rates_params(rates_delta, rates_sigma1, rates_sigma2, rates_p,
                              rates_alpha0);
    }
    if (bounds_cmd->parsed()) {
      if (bounds_two_design) {
        const TwoDesignParams params{bounds_delta, bounds_sigma1, bounds_sigma2};
        std::printf("variance_driven_lower_bound(T=%" PRId64 ") = %.17g\n",
                    bounds_t, variance_driven_lower_bound(params, bounds_t));
        return 0;
      }
      if (bounds_instance.empty()) {
        throw CLI::ValidationError("bounds",
                                   "need --instance or --two-design");
      }
      const ProblemInstance& instance = find_instance(bounds_instance);
      std::printf("finite_sample_upper_bound(T=%" PRId64 ", alpha0=%.17g) = %.17g\n",
                  bounds_t, bounds_alpha0,
                  finite_sample_upper_bound(instance, bounds_alpha0, bounds_t));
      return 0;
    }
    if (oracle_cmd->parsed()) {
      const TwoDesignParams params{oracle_delta, oracle_sigma1, oracle_sigma2};
      if (oracle_kind == "ds") {
        std::printf("pfs_ds = %.17g\n", pfs_ds(params, oracle_p, oracle_t));
      } else if (oracle_kind == "rs") {
        std::printf("pfs_rs = %.17g\n", pfs_rs(params, oracle_p, oracle_t));
      } else if (oracle_kind == "two-phase") {
        std::printf("pfs_two_phase = %.17g\n",
                    pfs_two_phase(params, oracle_alpha0, oracle_t));
      } else {
        std::printf("phat_density = %.17g\n",
                    phat_density(oracle_p, oracle_n0, oracle_sigma1,
                                 oracle_sigma2));
      }
      return 0;
    }
    if (plot_cmd->parsed()) {
      write_pcs_svg(load(plot_in), plot_out);
      std::printf("wrote %s\n", plot_out.c_str());
      return 0;
    }
  } catch (const CLI::Error& error) {
    return app.exit(error);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
