#include "hiring/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "hiring/constants.hpp"
#include "hiring/error.hpp"
#include "hiring/eval.hpp"
#include "hiring/lp.hpp"
#include "hiring/policies.hpp"
#include "hiring/rounding.hpp"

namespace hiring {
namespace {

using nlohmann::json;

// Mean and 1.96-standard-error half width of per-pool samples.
std::pair<double, double> summarize(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, 1.96 * std::sqrt(ss / (n - 1.0) / n)};
}

std::vector<double> inv_c_grid(const ExperimentConfig& config) {
  std::vector<double> grid;
  for (int i = 1; i <= config.inv_c_points; ++i) {
    grid.push_back(config.inv_c_max * i / config.inv_c_points);
  }
  return grid;
}

// values[point][policy] for one pool.
using PoolTable = std::vector<std::vector<double>>;

PoolTable seq_par_pool(const std::vector<Candidate>& pool, int k) {
  const int n = static_cast<int>(pool.size());
  std::vector<double> p(n), v(n);
  for (int i = 0; i < n; ++i) {
    p[i] = pool[i].accept_prob;
    v[i] = pool[i].value;
  }
  const SeqInstance full(k, n, p, v);
  const AdaptiveSeqDp adaptive(full);
  PoolTable table;
  for (int T = k; T <= n; ++T) {
    const SeqInstance inst = full.with_limits(k, T);
    const ParInstance par = identical_positions_instance(k, T, p, v);
    std::vector<double> row(kSeqParPolicies.size());
    row[0] = eval_seq_order_exact(inst, alg_seq_prime(inst).order);
    row[1] = adaptive.value(k, T);
    row[2] = eval_seq_order_exact(inst, value_ordered_seq(inst).order);
    row[3] = eval_seq_order_exact(inst, ev_ordered_seq(inst).order);
    row[4] = solve_lp_seq(inst).objective;
    row[5] = eval_par_exact(par, alg_par_prime(par)).mean;
    table.push_back(std::move(row));
  }
  return table;
}

PoolTable sim_pool(const std::vector<Candidate>& pool, int k, const std::vector<double>& grid) {
  const int n = static_cast<int>(pool.size());
  std::vector<double> p(n), v(n);
  for (int i = 0; i < n; ++i) {
    p[i] = pool[i].accept_prob;
    v[i] = pool[i].value;
  }
  PoolTable table;
  for (double inv_c : grid) {
    const double c = 1.0 / inv_c;
    const SimInstance inst = SimInstance::from_raw(k, p, v, c);
    std::vector<double> row(kSimPolicies.size());
    row[0] = c * value_ordered_sim(inst).value;
    row[1] = c * ev_ordered_sim(inst).value;
    row[2] = c * greedy_sim(inst).value;
    row[3] = c * solve_lp_sim(inst).objective;
    table.push_back(std::move(row));
  }
  return table;
}

std::vector<SeriesPoint> aggregate(const std::vector<PoolTable>& pools, const std::vector<double>& xs,
                                   const std::vector<std::string>& policies) {
  std::vector<SeriesPoint> out;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    for (std::size_t q = 0; q < policies.size(); ++q) {
      std::vector<double> samples;
      samples.reserve(pools.size());
      for (const auto& pool : pools) samples.push_back(pool[t][q]);
      const auto [mean, hw] = summarize(samples);
      out.push_back({xs[t], policies[q], mean, hw});
    }
  }
  return out;
}

const char* mode_name(PoolMode mode) {
  return mode == PoolMode::negative_correlation ? "negative_correlation" : "independent";
}

// Exact expectation of a randomized committed policy over the two rounding
// outcomes of the LP vector.
template <typename Evaluate>
double expected_over_outcomes(std::span<const double> y, Evaluate&& evaluate) {
  double total = 0.0;
  for (const auto& outcome : dr_outcomes(y)) total += outcome.probability * evaluate(outcome.bits);
  return total;
}

AuditRow audit_row(std::string family, int index, int k, double lp, double value, double bound,
                   double tol) {
  AuditRow row;
  row.family = std::move(family);
  row.index = index;
  row.k = k;
  row.lp = lp;
  row.value = value;
  row.ratio = lp > 0.0 ? value / lp : 1.0;
  row.bound = bound;
  row.pass = value >= bound * lp - tol;
  return row;
}

}  // namespace

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (int w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  c.pools = j.value("pools", c.pools);
  c.n = j.value("n", c.n);
  c.ks = j.value("k", c.ks);
  const std::string mode = j.value("mode", std::string(mode_name(c.mode)));
  if (mode == "negative_correlation") {
    c.mode = PoolMode::negative_correlation;
  } else if (mode == "independent") {
    c.mode = PoolMode::independent;
  } else {
    throw InvalidInput("unknown pool mode \"" + mode + "\"");
  }
  c.inv_c_points = j.value("inv_c_points", c.inv_c_points);
  c.inv_c_max = j.value("inv_c_max", c.inv_c_max);
  c.seed = j.value("seed", c.seed);
  c.threads = j.value("threads", c.threads);
  return c;
}

json ExperimentConfig::to_json() const {
  return {{"pools", pools},
          {"n", n},
          {"k", ks},
          {"mode", mode_name(mode)},
          {"inv_c_points", inv_c_points},
          {"inv_c_max", inv_c_max},
          {"seed", seed},
          {"threads", threads}};
}

std::vector<ExperimentResult> run_offering_experiment(const ExperimentConfig& config) {
  if (config.pools < 1) throw InvalidInput("need at least one pool");
  if (config.n < 1) throw InvalidInput("pool size must be positive");
  if (config.inv_c_points < 1 || !(config.inv_c_max > 0.0)) {
    throw InvalidInput("1/c grid needs a positive number of points and a positive maximum");
  }
  for (int k : config.ks) {
    if (k < 1 || k > config.n) throw InvalidInput("every k must lie in [1, n]");
  }

  std::vector<std::vector<Candidate>> pools(config.pools);
  for (int p = 0; p < config.pools; ++p) {
    pools[p] = sample_candidate_pool(config.n, config.mode, derive_seed(config.seed, p));
  }
  const auto grid = inv_c_grid(config);

  std::vector<ExperimentResult> results;
  for (int k : config.ks) {
    std::vector<PoolTable> seq_par(config.pools), sim(config.pools);
    parallel_for(config.pools, config.threads, [&](int p) {
      seq_par[p] = seq_par_pool(pools[p], k);
      sim[p] = sim_pool(pools[p], k, grid);
    });
    std::vector<double> ts;
    for (int T = k; T <= config.n; ++T) ts.push_back(T);
    results.push_back({k, aggregate(seq_par, ts, kSeqParPolicies), aggregate(sim, grid, kSimPolicies)});
  }
  return results;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

std::vector<std::filesystem::path> emit_figures(const std::vector<ExperimentResult>& results,
                                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  const auto write = [&](const std::filesystem::path& path, const char* x_name,
                         const std::vector<SeriesPoint>& points) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << x_name << ",policy,mean,half_width\n";
    for (const auto& pt : points) {
      out << format_number(pt.x) << ',' << pt.policy << ',' << format_number(pt.mean) << ','
          << format_number(pt.half_width) << '\n';
    }
    written.push_back(path);
  };
  for (const auto& r : results) {
    const std::string k = std::to_string(r.k);
    write(dir / ("seq_par_k" + k + ".csv"), "T", r.seq_par);
    write(dir / ("sim_k" + k + ".csv"), "inv_c", r.sim);
  }
  return written;
}

int AuditReport::violations() const {
  int total = 0;
  for (const auto& s : summaries) total += s.violations;
  return total;
}

AuditReport run_guarantee_audit(const AuditConfig& config) {
  if (config.instances < 1) throw InvalidInput("need at least one instance per family");
  const int count = config.instances;
  const double tol = config.tolerance;
  const std::vector<std::string> families{"ptk", "seq", "par", "sim"};
  std::vector<AuditRow> rows(families.size() * count);

  const auto run_one = [&](int f, int idx) -> AuditRow {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(f) * 1000003ULL + idx));
    switch (f) {
      case 0: {
        const auto inst = random_ptk_instance(rng, {.max_n = 6, .max_support = 3, .max_k = 2});
        const auto lp = solve_lp_ptk(inst);
        const double value = expected_over_outcomes(lp.y, [&](const BinaryVector& bits) {
          return eval_committed_order_exact(inst, ptk_policy_from_rounding(inst, lp, bits)).mean;
        });
        return audit_row("ptk", idx, inst.k(), lp.objective, value, guarantee_ptk(inst.k()), tol);
      }
      case 1: {
        const auto inst = random_seq_instance(rng, {.min_n = 1, .max_n = 10, .max_k = 3});
        const auto lp = solve_lp_seq(inst);
        const auto derived_order = [&](const BinaryVector& bits) {
          std::vector<int> order;
          for (int i = 0; i < inst.n(); ++i) {
            if (bits[i]) order.push_back(i);
          }
          std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            const double va = inst.p()[a] > 0.0 ? inst.v()[a] : 0.0;
            const double vb = inst.p()[b] > 0.0 ? inst.v()[b] : 0.0;
            return va > vb;
          });
          return order;
        };
        const double value = expected_over_outcomes(lp.y, [&](const BinaryVector& bits) {
          return eval_seq_order_exact(inst, derived_order(bits));
        });
        return audit_row("seq", idx, inst.k(), lp.objective, value, guarantee_ptk(inst.k()), tol);
      }
      case 2: {
        const auto inst = random_par_instance(rng, {.max_n = 10, .max_k = 3});
        const auto lp = solve_lp_par(inst);
        Rng round_rng(derive_seed(config.seed ^ 0xa5a5a5a5ULL, idx));
        const double value =
            eval_par_exact(inst, alg_par_derandomized(inst, config.par_samples, round_rng)).mean;
        return audit_row("par", idx, inst.k(), lp.objective, value, 1.0 - std::exp(-1.0), tol);
      }
      default: {
        const auto inst = random_sim_instance(
            rng, {.max_n = 10, .max_k = 3, .min_value = config.tau, .max_value = 2.0});
        const auto lp = solve_lp_sim(inst);
        const double s = lp.high_value_overflow ? 1.0 : optimal_s(inst.k(), config.tau);
        const double value = eval_sim_exact(inst, alg_sim(inst, lp, s)).mean;
        return audit_row("sim", idx, inst.k(), lp.objective, value,
                         alpha(inst.k(), config.tau).value, tol);
      }
    }
  };

  parallel_for(static_cast<int>(rows.size()), config.threads, [&](int r) {
    rows[r] = run_one(r / count, r % count);
  });

  AuditReport report;
  report.rows = std::move(rows);
  for (std::size_t f = 0; f < families.size(); ++f) {
    AuditSummary s;
    s.family = families[f];
    s.instances = count;
    s.worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) {
      const auto& row = report.rows[f * count + i];
      if (!row.pass) ++s.violations;
      s.worst_ratio = std::min(s.worst_ratio, row.ratio);
      s.worst_margin = std::min(s.worst_margin, row.value - row.bound * row.lp);
    }
    report.summaries.push_back(s);
  }
  return report;
}

void write_audit_csv(const AuditReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << "family,index,k,lp,value,ratio,bound,pass\n";
  char buf[256];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.17g,%.17g,%.17g,%.17g,%d\n", r.family.c_str(),
                  r.index, r.k, r.lp, r.value, r.ratio, r.bound, r.pass ? 1 : 0);
    out << buf;
  }
}

json to_json(const AuditReport& report) {
  json families = json::array();
  for (const auto& s : report.summaries) {
    families.push_back({{"family", s.family},
                        {"instances", s.instances},
                        {"violations", s.violations},
                        {"worst_ratio", s.worst_ratio},
                        {"worst_margin", s.worst_margin}});
  }
  return {{"passed", report.passed()}, {"violations", report.violations()}, {"families", families}};
}

}  // namespace hiring
