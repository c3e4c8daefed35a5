// Acceptance checks. Prints one PASS/FAIL line per criterion; with
// --criterion N only that one runs and the exit code reflects it.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hiring/constants.hpp"
#include "hiring/eval.hpp"
#include "hiring/harness.hpp"
#include "hiring/instances.hpp"
#include "hiring/lp.hpp"
#include "hiring/oracles.hpp"
#include "hiring/policies.hpp"
#include "hiring/rounding.hpp"

using namespace hiring;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

void require(Outcome& out, bool ok, const std::string& what) {
  if (!out.detail.empty()) out.detail += "; ";
  out.detail += what;
  if (!ok) {
    out.pass = false;
    out.detail += " [violated]";
  }
}

// Tightness of the ProbeTop-k guarantee.
Outcome criterion1() {
  Outcome out;
  {
    const Stopwatch clock;
    const auto inst = tightness_probetopk(1000, 1);
    const double lp = solve_lp_ptk(inst).objective;
    const double ratio = eval_committed_order_exact(inst, alg_ptk_derandomized(inst)).mean / lp;
    const double target = 1 - std::pow(1 - 1.0 / 1000, 1000);
    const double secs = clock.seconds();
    require(out, std::abs(ratio - target) <= 1e-6, fmt("k=1 ratio %.9f vs %.9f", ratio, target));
    require(out, secs < 1.0, fmt("%.3fs", secs));
  }
  {
    const auto inst = tightness_probetopk(2000, 5);
    const double lp = solve_lp_ptk(inst).objective;
    const double ratio = eval_committed_order_exact(inst, alg_ptk_derandomized(inst)).mean / lp;
    const double g = guarantee_ptk(5);
    require(out, ratio >= g && ratio <= g + 0.01, fmt("k=5 ratio %.6f in [%.6f, %.6f]", ratio, g, g + 0.01));
  }
  return out;
}

// Tightness of the parallel guarantee.
Outcome criterion2() {
  Outcome out;
  const Stopwatch clock;
  const auto inst = tightness_parallel(3, 200);
  const double lp = solve_lp_par(inst).objective;
  Rng rng(2);
  const double ratio = eval_par_exact(inst, alg_par(inst, rng)).mean / lp;
  const double target = 1 - std::pow(1 - 1.0 / 200, 200);
  const double secs = clock.seconds();
  require(out, std::abs(ratio - target) <= 1e-6, fmt("ratio %.9f vs %.9f", ratio, target));
  require(out, secs < 1.0, fmt("%.3fs", secs));
  return out;
}

// Guarantee audits over every model family.
Outcome criterion3() {
  Outcome out;
  const Stopwatch clock;
  AuditConfig config;
  config.instances = 500;
  config.seed = 3;
  config.tolerance = 1e-9;
  const auto report = run_guarantee_audit(config);
  for (const auto& s : report.summaries) {
    require(out, s.violations == 0,
            fmt("%s: %d/%d violations, worst ratio %.4f", s.family.c_str(), s.violations, s.instances,
                s.worst_ratio));
  }
  const double secs = clock.seconds();
  require(out, secs < 120.0, fmt("%.1fs", secs));
  return out;
}

// policy <= oracle <= LP on small random instances.
Outcome criterion4() {
  Outcome out;
  const Stopwatch clock;
  constexpr double tol = 1e-7;
  constexpr int count = 200;
  Rng rng(4);
  std::map<std::string, int> bad;
  for (int it = 0; it < count; ++it) {
    const auto ptk = random_ptk_instance(rng);
    const double opt_ptk = opt_ptk_bruteforce(ptk);
    const double alg_ptk = eval_committed_order_exact(ptk, alg_ptk_derandomized(ptk)).mean;
    if (!(alg_ptk <= opt_ptk + tol && opt_ptk <= solve_lp_ptk(ptk).objective + tol)) ++bad["ptk"];

    const auto seq = random_seq_instance(rng, {.min_n = 1, .max_n = 12, .max_k = 3});
    const double opt_seq = opt_seq_bruteforce(seq);
    const double alg_seq = eval_seq_order_exact(seq, alg_seq_prime(seq).order);
    const double adaptive = AdaptiveSeqDp(seq).value();
    if (!(std::max(alg_seq, adaptive) <= opt_seq + tol && opt_seq <= solve_lp_seq(seq).objective + tol)) {
      ++bad["seq"];
    }

    const auto par = random_par_instance(rng, {.max_n = 7, .max_k = 2, .max_T = 3});
    const double opt_par = opt_par_nonadaptive_bruteforce(par).value;
    const double alg_par = eval_par_exact(par, alg_par_derandomized(par, 32, rng)).mean;
    if (!(alg_par <= opt_par + tol && opt_par <= solve_lp_par(par).objective + tol)) ++bad["par"];

    const auto sim = random_sim_instance(rng, {.max_n = 14, .max_k = 3});
    const double opt_sim = opt_sim_bruteforce(sim).value;
    const double alg_sim = eval_sim_exact(sim, alg_sim_auto(sim, 0.5)).mean;
    const double greedy = greedy_sim(sim).value;
    if (!(std::max(alg_sim, greedy) <= opt_sim + tol && opt_sim <= solve_lp_sim(sim).objective + tol)) {
      ++bad["sim"];
    }
  }
  for (const char* family : {"ptk", "seq", "par", "sim"}) {
    require(out, bad[family] == 0, fmt("%s %d/%d", family, count - bad[family], count));
  }
  const double secs = clock.seconds();
  require(out, secs < 300.0, fmt("%.1fs", secs));
  return out;
}

// Dependent rounding beats independent rounding of the two fractional entries.
Outcome criterion5() {
  Outcome out;
  Rng rng(5);
  int found = 0, worse = 0, attempts = 0;
  double worst_gap = 1e300;
  while (found < 200 && attempts < 200000) {
    ++attempts;
    const auto inst = attempts % 2 ? random_ptk_instance(rng) : seq_to_ptk(random_seq_instance(rng));
    const auto lp = solve_lp_ptk(inst);
    const auto frac = verify_bfs_structure(lp.y).fractional;
    if (frac.size() != 2) continue;
    ++found;
    // Independent rounding may select T + 1 candidates, so both sides run
    // without the interview budget; dependent outcomes never reach it anyway.
    const ProbeTopKInstance unbounded(inst.k(), inst.n(), {inst.distributions().begin(), inst.distributions().end()});
    const auto value = [&](const BinaryVector& bits) {
      return eval_committed_order_exact(unbounded, ptk_policy_from_rounding(unbounded, lp, bits)).mean;
    };
    double dependent = 0.0;
    for (const auto& o : dr_outcomes(lp.y)) dependent += o.probability * value(o.bits);
    BinaryVector base(lp.y.size(), 0);
    for (std::size_t i = 0; i < lp.y.size(); ++i) base[i] = lp.y[i] >= 0.5 ? 1 : 0;
    double independent = 0.0;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        auto bits = base;
        bits[frac[0]] = a;
        bits[frac[1]] = b;
        const double ya = lp.y[frac[0]], yb = lp.y[frac[1]];
        independent += (a ? ya : 1 - ya) * (b ? yb : 1 - yb) * value(bits);
      }
    }
    worst_gap = std::min(worst_gap, dependent - independent);
    if (dependent < independent - 1e-12) ++worse;
  }
  require(out, found == 200, fmt("%d two-fractional instances from %d draws", found, attempts));
  require(out, worse == 0, fmt("%d violations, min(dependent - independent) = %.3g", worse, worst_gap));
  return out;
}

// Batching identity and the cost of batching.
Outcome criterion6() {
  Outcome out;
  Rng rng(6);
  double worst_gap = 0.0;
  for (int it = 0; it < 100; ++it) {
    const auto inst = random_par_instance(rng, {.max_n = 12, .max_k = 3, .identical = true});
    worst_gap = std::max(worst_gap, std::abs(solve_lp_par(inst).objective -
                                             solve_lp_seq(batched_seq_instance(inst)).objective));
  }
  require(out, worst_gap <= 1e-7, fmt("max |LP_par - LP_seq(batched)| = %.3g over 100", worst_gap));

  int checked = 0, below = 0;
  double worst_ratio = 1e300;
  for (int it = 0; it < 100; ++it) {
    const auto inst = random_par_instance(rng, {.max_n = 10, .max_k = 3, .max_T = 4, .identical = true});
    const auto batched = batched_seq_instance(inst);
    if (batched.n() > kSeqOracleMaxN) continue;
    const double opt = opt_seq_bruteforce(batched);
    const double value = eval_par_exact(inst, alg_par_derandomized(inst, 32, rng)).mean;
    ++checked;
    if (opt > 0.0) worst_ratio = std::min(worst_ratio, value / opt);
    if (value < (1 - std::exp(-1.0)) * opt - 1e-9) ++below;
  }
  require(out, below == 0,
          fmt("ALG_par >= (1-1/e) OPT_seq(batched) on %d/%d, worst ratio %.4f", checked - below, checked,
              worst_ratio));
  return out;
}

// Guarantee constants.
Outcome criterion7() {
  Outcome out;
  const double a = alpha(1, 0.5).value;
  require(out, std::abs(a - (1 - std::log(2.0))) <= 1e-6, fmt("alpha(1, 1/2) = %.9f", a));
  double worst = 0.0;
  for (int k = 1; k <= 50; ++k) {
    for (int t = 1; t <= 50; ++t) {
      const double tau = t / 100.0;
      worst = std::max(worst, std::abs(alpha(k, tau).value - beta(k, tau).value));
    }
  }
  require(out, worst <= 1e-9, fmt("max |alpha - beta| on k<=50, tau<=1/2: %.3g", worst));
  const double g = guarantee_ptk(1);
  require(out, std::abs(g - 0.6321206) <= 1e-7, fmt("guarantee_ptk(1) = %.9f", g));
  return out;
}

// Counterexamples.
Outcome criterion8() {
  Outcome out;
  constexpr double eps = 0.1;
  const auto vo = counterexample_value_ordered(eps);
  const double both = eval_sim_exact(vo, std::vector<int>{0, 1}).mean;
  const double first = eval_sim_exact(vo, std::vector<int>{0}).mean;
  const double second = eval_sim_exact(vo, std::vector<int>{1}).mean;
  require(out, std::abs(both) <= 1e-12 && std::abs(first - eps * eps) <= 1e-12 &&
                   std::abs(second - eps * (1 - eps)) <= 1e-12,
          fmt("rewards (%.6g, %.6g, %.6g)", both, first, second));

  double eo_err = 0.0;
  for (int n : {2, 10, 100, 1000}) {
    const auto inst = counterexample_ev_ordered(n);
    std::vector<int> type2;
    for (int i = 1; i <= n; ++i) type2.push_back(i);
    const double target = 1 - 1.0 / n - std::pow(1 - 1.0 / n, n);
    eo_err = std::max(eo_err, std::abs(eval_sim_exact(inst, type2).mean - target));
    eo_err = std::max(eo_err, std::abs(ev_ordered_sim(inst).value - 1.0 / n));
  }
  require(out, eo_err <= 1e-12, fmt("EV-ordered example max error %.3g", eo_err));

  // Four unit-weight elements, top-2 reward. The scheme picks one of the four
  // singletons or four triples uniformly.
  double dependent = 0.0;
  for (int size : {1, 1, 1, 1, 3, 3, 3, 3}) dependent += std::min(size, 2) / 8.0;
  double independent = 0.0;
  for (unsigned mask = 0; mask < 16; ++mask) independent += std::min(std::popcount(mask), 2) / 16.0;
  const std::vector<double> halves(4, 0.5);
  const double library = expected_truncated_count(halves, 2);
  require(out, dependent == 1.5 && independent == 13.0 / 8 && std::abs(library - 13.0 / 8) <= 1e-15,
          fmt("rounding example %.4g vs %.4g", dependent, independent));
  return out;
}

// GKPS: degrees on every sample, marginals and negative correlation.
Outcome criterion9() {
  Outcome out;
  Rng rng(9);
  constexpr int samples = 100000;
  int degree_failures = 0, marginal_failures = 0, entries = 0;
  for (int m = 0; m < 20; ++m) {
    const std::size_t rows = 2 + rng() % 5, cols = 2 + rng() % 3;
    Matrix<double> w(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) w(i, j) = rng() % 4 == 0 ? std::round(uniform01(rng)) : uniform01(rng);
    }
    std::vector<double> row_deg(rows, 0.0), col_deg(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        row_deg[i] += w(i, j);
        col_deg[j] += w(i, j);
      }
    }
    const auto ok_degree = [](double d, int got) {
      return got >= std::floor(d - 1e-9) && got <= std::ceil(d + 1e-9);
    };
    Matrix<double> hits(rows, cols, 0.0);
    for (int s = 0; s < samples; ++s) {
      const auto r = gkps_round(w, rng);
      std::vector<int> rd(rows, 0), cd(cols, 0);
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
          rd[i] += r(i, j);
          cd[j] += r(i, j);
          hits(i, j) += r(i, j);
        }
      }
      bool ok = true;
      for (std::size_t i = 0; i < rows; ++i) ok = ok && ok_degree(row_deg[i], rd[i]);
      for (std::size_t j = 0; j < cols; ++j) ok = ok && ok_degree(col_deg[j], cd[j]);
      degree_failures += !ok;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        const double p = w(i, j);
        const double sigma = std::sqrt(p * (1 - p) / samples);
        ++entries;
        if (std::abs(hits(i, j) / samples - p) > 3 * sigma + 1e-12) ++marginal_failures;
      }
    }
  }
  require(out, degree_failures == 0, fmt("degree violations %d of %d samples", degree_failures, 20 * samples));
  require(out, marginal_failures == 0, fmt("marginals outside 3 sigma: %d of %d", marginal_failures, entries));

  // Same-vertex pairs on 5x3 matrices: P(both) <= w_a w_b + 3 sigma.
  int pairs = 0, p3_failures = 0;
  for (int m = 0; m < 5; ++m) {
    Matrix<double> w(5, 3);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 3; ++j) w(i, j) = uniform01(rng);
    }
    std::vector<double> joint(15 * 15, 0.0);
    for (int s = 0; s < samples; ++s) {
      const auto r = gkps_round(w, rng);
      for (int a = 0; a < 15; ++a) {
        if (!r.data()[a]) continue;
        for (int b = a + 1; b < 15; ++b) joint[a * 15 + b] += r.data()[b];
      }
    }
    for (int a = 0; a < 15; ++a) {
      for (int b = a + 1; b < 15; ++b) {
        const bool same_row = a / 3 == b / 3, same_col = a % 3 == b % 3;
        if (!same_row && !same_col) continue;
        const double prod = w.data()[a] * w.data()[b];
        const double sigma = std::sqrt(std::max(prod * (1 - prod), 1e-12) / samples);
        ++pairs;
        if (joint[a * 15 + b] / samples > prod + 3 * sigma) ++p3_failures;
      }
    }
  }
  require(out, p3_failures == 0, fmt("negative correlation: %d/%d same-vertex pairs", pairs - p3_failures, pairs));
  return out;
}

// Offering experiment orderings at desk scale.
Outcome criterion10() {
  Outcome out;
  const Stopwatch clock;
  ExperimentConfig config;
  config.pools = 50;
  config.n = 100;
  config.ks = {5, 10};
  config.mode = PoolMode::negative_correlation;
  config.seed = 2024;
  config.threads = 1;
  const auto results = run_offering_experiment(config);
  const auto dir = std::filesystem::temp_directory_path() / "hiring_acceptance_figures";
  const auto paths = emit_figures(results, dir);
  bool csv_ok = paths.size() == 2 * results.size();
  for (const auto& p : paths) csv_ok = csv_ok && std::filesystem::file_size(p) > 0;
  require(out, csv_ok, fmt("%zu CSV files", paths.size()));

  const double smallest_inv_c = config.inv_c_max / config.inv_c_points;
  for (const auto& r : results) {
    std::map<double, std::map<std::string, double>> seq;
    for (const auto& pt : r.seq_par) seq[pt.x][pt.policy] = pt.mean;
    int heuristic_bad = 0, adaptive_bad = 0;
    for (auto& [T, m] : seq) {
      heuristic_bad += m["alg_seq_prime"] < m["vo_seq"] || m["alg_seq_prime"] < m["eo_seq"];
      adaptive_bad += m["adaptive_seq"] < m["alg_seq_prime"] - 1e-12;
    }
    require(out, heuristic_bad == 0, fmt("k=%d ALG_seq' >= VO, EO at %zu/%zu T", r.k,
                                         seq.size() - heuristic_bad, seq.size()));
    require(out, adaptive_bad == 0, fmt("k=%d adaptive >= ALG_seq' at %zu/%zu T", r.k,
                                        seq.size() - adaptive_bad, seq.size()));
    double eo_sim = 0.0;
    for (const auto& pt : r.sim) {
      if (pt.policy == "eo_sim" && std::abs(pt.x - smallest_inv_c) < 1e-12) eo_sim = pt.mean;
    }
    const double eo_seq = seq[r.k]["eo_seq"];
    const double rel = std::abs(eo_sim - eo_seq) / eo_seq;
    require(out, rel <= 0.01, fmt("k=%d EO_sim(1/c=%.3g) %.4f vs EO_seq(T=k) %.4f, rel %.2f%%", r.k,
                                  smallest_inv_c, eo_sim, eo_seq, 100 * rel));
  }
  std::filesystem::remove_all(dir);
  const double secs = clock.seconds();
  require(out, secs < 600.0, fmt("%.1fs", secs));
  return out;
}

const std::vector<std::function<Outcome()>> kCriteria{criterion1, criterion2, criterion3, criterion4,
                                                      criterion5, criterion6, criterion7, criterion8,
                                                      criterion9, criterion10};

bool run(int c) {
  Outcome out;
  try {
    out = kCriteria[c - 1]();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s criterion %d: %s\n", out.pass ? "PASS" : "FAIL", c, out.detail.c_str());
  std::fflush(stdout);
  return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc == 3 && std::string_view(argv[1]) == "--criterion") {
    const int c = std::atoi(argv[2]);
    if (c < 1 || c > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", kCriteria.size());
      return 2;
    }
    return run(c) ? 0 : 1;
  }
  if (argc != 1) {
    std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
    return 2;
  }
  bool all = true;
  for (int c = 1; c <= static_cast<int>(kCriteria.size()); ++c) all = run(c) && all;
  return all ? 0 : 1;
}
