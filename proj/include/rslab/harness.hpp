#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rslab/policies.hpp"

namespace rslab {

struct BudgetRange {
  std::int64_t start = 200;
  std::int64_t stop = 4000;
  std::int64_t step = 200;

  std::vector<std::int64_t> values() const;  // inclusive of stop when hit
};

// One full PCS experiment: instances x policies x budgets, each cell
// estimated over `replications` runs under common random numbers.
struct ExperimentSpec {
  std::vector<std::string> instance_ids;
  std::vector<PolicyConfig> policies;
  BudgetRange budgets;
  std::int64_t replications = 10000;
  std::uint64_t master_seed = 1;
};

// One (instance, policy, budget) cell of a sweep.
struct PcsCurvePoint {
  std::string instance_id;
  std::string policy_id;
  std::int64_t budget = 0;
  double pcs_hat = 0.0;
  double std_err = 0.0;
  std::int64_t replications = 0;
  std::uint64_t master_seed = 0;
  std::string n0_mode;  // "const=<N0>", "frac=<alpha0>" or "none"
  std::string params;   // remaining policy parameters, ';'-separated

  bool operator==(const PcsCurvePoint&) const = default;
};

// The six problem instances from the experiment section of the study.
const std::vector<ProblemInstance>& builtin_instances();
const ProblemInstance& find_instance(const std::string& id);

// Provenance columns derived from a policy configuration.
std::string n0_mode_string(const PolicyConfig& config);
std::string params_string(const PolicyConfig& config);

// Runs every (instance, policy, budget) cell. Replications are independent
// work items keyed by their index, so results are bit-identical for any
// thread count.
// Cells whose budget is infeasible for the policy are skipped with a note on
// stderr rather than aborting the sweep.
std::vector<PcsCurvePoint> run_sweep(const ExperimentSpec& spec,
                                     unsigned threads = 0);

// Estimates PFS = 1 - PCS for one cell; used where a single probability is
// wanted instead of a whole sweep.
double estimate_pfs(const ProblemInstance& instance, const PolicyConfig& config,
                    std::int64_t budget, std::int64_t replications,
                    std::uint64_t master_seed, unsigned threads = 0);

struct CsvError : std::runtime_error {
  CsvError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line;
  std::size_t column;
};

// Results file I/O. UTF-8 CSV with header
//   instance,policy,T,pcs_hat,std_err,replications,master_seed,n0_mode,params
// and floats printed with 17 significant digits, so load(persist(x)) == x.
void persist(const std::vector<PcsCurvePoint>& points, const std::string& path);
std::vector<PcsCurvePoint> load(const std::string& path);

}  // namespace rslab
