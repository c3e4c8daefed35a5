#pragma once

// Offering experiments over random candidate pools, guarantee audits over
// random instance families, and their CSV writers.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hiring/instances.hpp"

namespace hiring {

struct ExperimentConfig {
  int pools = 50;
  int n = 100;
  std::vector<int> ks{5, 10};
  PoolMode mode = PoolMode::negative_correlation;
  int inv_c_points = 40;  ///< 1/c grid: inv_c_max * i / inv_c_points, i = 1..points
  double inv_c_max = 2.0;
  std::uint64_t seed = 1;
  int threads = 1;

  static ExperimentConfig from_json(const nlohmann::json& j);
  [[nodiscard]] nlohmann::json to_json() const;
};

/// One averaged point of a figure series. `x` is T for the sequential and
/// parallel sweep and 1/c for the simultaneous sweep. `half_width` is 1.96
/// standard errors of the mean across pools.
struct SeriesPoint {
  double x = 0.0;
  std::string policy;
  double mean = 0.0;
  double half_width = 0.0;
};

struct ExperimentResult {
  int k = 0;
  std::vector<SeriesPoint> seq_par;
  std::vector<SeriesPoint> sim;
};

inline const std::vector<std::string> kSeqParPolicies{"alg_seq_prime", "adaptive_seq", "vo_seq",
                                                      "eo_seq",        "lp_seq",       "alg_par_prime"};
inline const std::vector<std::string> kSimPolicies{"vo_sim", "eo_sim", "greedy_sim", "lp_sim"};

/// Simultaneous-sweep values are reported in the pool's original value units
/// (reward at cost c, not divided by c).
std::vector<ExperimentResult> run_offering_experiment(const ExperimentConfig& config);

/// Writes seq_par_k{K}.csv and sim_k{K}.csv into `dir`; returns the paths.
std::vector<std::filesystem::path> emit_figures(const std::vector<ExperimentResult>& results,
                                                const std::filesystem::path& dir);

/// `value` with six significant digits.
std::string format_number(double value);

struct AuditConfig {
  int instances = 500;  ///< per family
  std::uint64_t seed = 1;
  int threads = 1;
  double tau = 0.5;
  double tolerance = 1e-9;
  int par_samples = 32;
};

struct AuditRow {
  std::string family;
  int index = 0;
  int k = 0;
  double lp = 0.0;
  double value = 0.0;
  double ratio = 0.0;  ///< value / lp, 1 when lp is 0
  double bound = 0.0;  ///< required ratio
  bool pass = true;
};

struct AuditSummary {
  std::string family;
  int instances = 0;
  int violations = 0;
  double worst_ratio = 1.0;
  double worst_margin = 0.0;  ///< min over instances of value - bound * lp
};

struct AuditReport {
  std::vector<AuditRow> rows;
  std::vector<AuditSummary> summaries;
  [[nodiscard]] int violations() const;
  [[nodiscard]] bool passed() const { return violations() == 0; }
};

/// Families: ptk (randomized ALG_ptk in expectation), seq (randomized ALG_seq
/// in expectation), par (sampled-best ALG_par) and sim (ALG_sim at the optimal
/// truncation on tau-bounded instances).
AuditReport run_guarantee_audit(const AuditConfig& config);

void write_audit_csv(const AuditReport& report, const std::filesystem::path& path);
nlohmann::json to_json(const AuditReport& report);

/// Runs body(i) for i in [0, count) on `threads` workers.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

}  // namespace hiring
