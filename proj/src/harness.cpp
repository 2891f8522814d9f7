#include "rslab/harness.hpp"

#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

namespace rslab {

namespace {

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::vector<double> linear_spaced(double first, double step, std::size_t n) {
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = first + step * static_cast<double>(i);
  return values;
}

std::vector<ProblemInstance> make_builtin_instances() {
  std::vector<ProblemInstance> instances;
  const std::vector<double> ten_means = {1.0, 1.1, 1.2, 1.3, 1.4,
                                         1.5, 1.6, 1.7, 1.8, 5.0};
  instances.push_back({"ten-designs-a", ten_means,
                       {5, 5, 5, 5, 5, 5, 5, 5, 5, 20}});
  instances.push_back({"ten-designs-b", ten_means,
                       {20, 20, 20, 20, 20, 20, 20, 20, 20, 5}});
  instances.push_back({"slippage-a", {1, 1, 1, 1, 2}, {2, 2, 2, 2, 10}});
  instances.push_back({"slippage-b", {1, 1, 1, 1, 2}, {10, 10, 10, 10, 2}});
  instances.push_back({"equal-variances", linear_spaced(1.0, 1.0, 10),
                       std::vector<double>(10, 10.0)});
  instances.push_back({"increasing-variances", linear_spaced(1.0, 1.0, 10),
                       linear_spaced(6.0, 1.0, 10)});
  return instances;
}

// Counts correct selections over a replication range; pure function of the
// replication index, so ranges can be split across threads freely.
std::int64_t count_correct_range(const ProblemInstance& instance,
                                 const PolicyConfig& config,
                                 std::int64_t budget, std::uint64_t seed,
                                 std::int64_t rep_begin, std::int64_t rep_end,
                                 std::size_t true_best) {
  std::int64_t correct = 0;
  for (std::int64_t rep = rep_begin; rep < rep_end; ++rep) {
    CrnSampler sampler(instance, seed, static_cast<std::uint64_t>(rep));
    const PolicyRun run = run_policy(sampler, config, budget);
    if (run.selected == true_best) ++correct;
  }
  return correct;
}

std::int64_t count_correct(const ProblemInstance& instance,
                           const PolicyConfig& config, std::int64_t budget,
                           std::int64_t replications, std::uint64_t seed,
                           unsigned threads) {
  const std::size_t true_best = instance.unique_best_index();
  unsigned n = threads != 0 ? threads : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (n == 1 || replications < 2) {
    return count_correct_range(instance, config, budget, seed, 0, replications,
                               true_best);
  }
  const auto workers = static_cast<std::int64_t>(
      std::min<std::uint64_t>(n, static_cast<std::uint64_t>(replications)));
  std::vector<std::int64_t> counts(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t begin = replications * w / workers;
    const std::int64_t end = replications * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        counts[w] = count_correct_range(instance, config, budget, seed, begin,
                                        end, true_best);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  std::int64_t total = 0;
  for (const std::int64_t c : counts) total += c;
  return total;
}

}  // namespace

std::vector<std::int64_t> BudgetRange::values() const {
  if (start < 1 || step < 1 || stop < start) {
    throw std::invalid_argument("budget range: need 1 <= start <= stop, step >= 1");
  }
  std::vector<std::int64_t> result;
  for (std::int64_t t = start; t <= stop; t += step) result.push_back(t);
  return result;
}

const std::vector<ProblemInstance>& builtin_instances() {
  static const std::vector<ProblemInstance> instances = make_builtin_instances();
  return instances;
}

const ProblemInstance& find_instance(const std::string& id) {
  for (const ProblemInstance& instance : builtin_instances()) {
    if (instance.id == id) return instance;
  }
  throw std::invalid_argument("unknown instance '" + id + "'");
}

std::string n0_mode_string(const PolicyConfig& config) {
  switch (config.kind) {
    case PolicyKind::kOcba:
    case PolicyKind::kOcbaD:
    case PolicyKind::kOcbaR:
      return "const=" + std::to_string(config.n0);
    case PolicyKind::kOcbaPlus:
    case PolicyKind::kOcbaDPlus:
    case PolicyKind::kOcbaRPlus:
    case PolicyKind::kTwoPhase:
      return "frac=" + format_double(config.alpha0);
    case PolicyKind::kEqual:
    case PolicyKind::kDs:
    case PolicyKind::kRs:
      return "none";
  }
  return "none";
}

std::string params_string(const PolicyConfig& config) {
  switch (config.kind) {
    case PolicyKind::kOcba:
    case PolicyKind::kOcbaPlus:
      return "delta=" + std::to_string(config.delta) +
             ";exhaust=" + (config.exhaust_budget ? "1" : "0");
    case PolicyKind::kDs:
    case PolicyKind::kRs:
      return "p=" + format_double(config.p);
    default:
      return "";
  }
}

std::vector<PcsCurvePoint> run_sweep(const ExperimentSpec& spec,
                                     unsigned threads) {
  if (spec.replications < 1) {
    throw std::invalid_argument("run_sweep: replications must be >= 1");
  }
  if (spec.instance_ids.empty() || spec.policies.empty()) {
    throw std::invalid_argument("run_sweep: need at least one instance and policy");
  }
  const std::vector<std::int64_t> budgets = spec.budgets.values();

  std::vector<PcsCurvePoint> points;
  for (const std::string& instance_id : spec.instance_ids) {
    const ProblemInstance& instance = find_instance(instance_id);
    for (const PolicyConfig& config : spec.policies) {
      const std::string id = policy_id(config);
      for (const std::int64_t budget : budgets) {
        if (budget < min_feasible_budget(config, instance.num_designs())) {
          std::cerr << "skipping " << instance_id << "/" << id << "/T=" << budget
                    << ": budget below the policy's minimum\n";
          continue;
        }
        try {
          const std::int64_t correct =
              count_correct(instance, config, budget, spec.replications,
                            spec.master_seed, threads);
          PcsCurvePoint point;
          point.instance_id = instance_id;
          point.policy_id = id;
          point.budget = budget;
          point.pcs_hat = static_cast<double>(correct) /
                          static_cast<double>(spec.replications);
          point.std_err = std::sqrt(point.pcs_hat * (1.0 - point.pcs_hat) /
                                    static_cast<double>(spec.replications));
          point.replications = spec.replications;
          point.master_seed = spec.master_seed;
          point.n0_mode = n0_mode_string(config);
          point.params = params_string(config);
          points.push_back(std::move(point));
        } catch (const std::invalid_argument& error) {
          std::cerr << "skipping " << instance_id << "/" << id << "/T=" << budget
                    << ": " << error.what() << "\n";
        }
      }
    }
  }
  return points;
}

double estimate_pfs(const ProblemInstance& instance, const PolicyConfig& config,
                    std::int64_t budget, std::int64_t replications,
                    std::uint64_t master_seed, unsigned threads) {
  if (replications < 1) {
    throw std::invalid_argument("estimate_pfs: replications must be >= 1");
  }
  const std::int64_t correct =
      count_correct(instance, config, budget, replications, master_seed, threads);
  return 1.0 - static_cast<double>(correct) / static_cast<double>(replications);
}

CsvError::CsvError(const std::string& message, std::size_t line_arg,
                   std::size_t column_arg)
    : std::runtime_error("line " + std::to_string(line_arg) + ", column " +
                         std::to_string(column_arg) + ": " + message),
      line(line_arg),
      column(column_arg) {}

namespace {

constexpr const char* kHeader =
    "instance,policy,T,pcs_hat,std_err,replications,master_seed,n0_mode,params";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

std::size_t field_column(const std::vector<std::string>& fields,
                         std::size_t index) {
  std::size_t column = 1;
  for (std::size_t i = 0; i < index; ++i) column += fields[i].size() + 1;
  return column;
}

template <typename T>
T parse_number(const std::vector<std::string>& fields, std::size_t index,
               std::size_t line, const char* what) {
  const std::string& text = fields[index];
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw CsvError(std::string("expected ") + what + ", got '" + text + "'",
                   line, field_column(fields, index));
  }
  return value;
}

}  // namespace

void persist(const std::vector<PcsCurvePoint>& points, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << kHeader << "\n";
  for (const PcsCurvePoint& point : points) {
    out << point.instance_id << ',' << point.policy_id << ',' << point.budget
        << ',' << format_double(point.pcs_hat) << ','
        << format_double(point.std_err) << ',' << point.replications << ','
        << point.master_seed << ',' << point.n0_mode << ',' << point.params
        << "\n";
  }
  if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

std::vector<PcsCurvePoint> load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line)) throw CsvError("missing header row", 1, 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw CsvError("unexpected header '" + line + "'", 1, 1);

  std::vector<PcsCurvePoint> points;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 9) {
      throw CsvError("expected 9 fields, got " + std::to_string(fields.size()),
                     line_number, 1);
    }
    PcsCurvePoint point;
    point.instance_id = fields[0];
    point.policy_id = fields[1];
    point.budget = parse_number<std::int64_t>(fields, 2, line_number, "integer");
    point.pcs_hat = parse_number<double>(fields, 3, line_number, "real");
    point.std_err = parse_number<double>(fields, 4, line_number, "real");
    point.replications =
        parse_number<std::int64_t>(fields, 5, line_number, "integer");
    point.master_seed =
        parse_number<std::uint64_t>(fields, 6, line_number, "integer");
    point.n0_mode = fields[7];
    point.params = fields[8];
    points.push_back(std::move(point));
  }
  return points;
}

}  // namespace rslab
