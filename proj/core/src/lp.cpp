#include "hiring/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "hiring/error.hpp"

namespace hiring {
namespace {

double snap_unit(double value, double tol = kIntegralityTolerance) {
  if (std::abs(value) <= tol) return 0.0;
  if (std::abs(value - 1.0) <= tol) return 1.0;
  return std::clamp(value, 0.0, 1.0);
}

bool is_bernoulli_form(const ProbeTopKInstance& instance) {
  for (const auto& d : instance.distributions()) {
    int positive = 0;
    for (double r : d.support()) positive += r > 0.0 ? 1 : 0;
    if (positive > 1) return false;
  }
  return true;
}

// Value and probability of the single positive atom (0, 0 if none).
std::pair<double, double> positive_atom(const FiniteDistribution& d) {
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (d.support()[j] > 0.0) return {d.support()[j], d.probs()[j]};
  }
  return {0.0, 0.0};
}

PtkLpSolution solve_ptk_generic(const ProbeTopKInstance& instance, const SimplexOptions& options) {
  const int n = instance.n();
  struct Pair {
    int i;
    std::size_t j;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < n; ++i) {
    const auto& d = instance.distribution(i);
    for (std::size_t j = 0; j < d.size(); ++j) {
      // atoms at value 0 never help the objective and only tighten sum x <= k
      if (d.support()[j] > 0.0) pairs.push_back({i, j});
    }
  }

  const std::size_t vars = n + pairs.size();
  const std::size_t rows = pairs.size() + 2;
  LinearProgram lp(vars, rows);
  for (int i = 0; i < n; ++i) {
    lp.upper[i] = 1.0;
    lp.constraints(pairs.size(), i) = 1.0;
  }
  lp.rhs[pairs.size()] = instance.T();
  lp.rhs[pairs.size() + 1] = instance.k();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& d = instance.distribution(pairs[p].i);
    const std::size_t col = n + p;
    lp.objective[col] = d.support()[pairs[p].j];
    lp.constraints(p, col) = 1.0;
    lp.constraints(p, pairs[p].i) = -d.probs()[pairs[p].j];
    lp.constraints(pairs.size() + 1, col) = 1.0;
  }

  const SimplexResult res = solve_simplex(lp, options);
  PtkLpSolution sol;
  sol.y.resize(n);
  sol.x.resize(n);
  for (int i = 0; i < n; ++i) {
    sol.y[i] = snap_unit(res.x[i]);
    sol.x[i].assign(instance.distribution(i).size(), 0.0);
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& d = instance.distribution(pairs[p].i);
    const double cap = sol.y[pairs[p].i] * d.probs()[pairs[p].j];
    sol.x[pairs[p].i][pairs[p].j] = std::clamp(res.x[n + p], 0.0, cap);
  }
  sol.objective = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto& d = instance.distribution(i);
    for (std::size_t j = 0; j < d.size(); ++j) sol.objective += d.support()[j] * sol.x[i][j];
  }
  return sol;
}

SeqLpSolution solve_seq_core(std::span<const double> p, std::span<const double> v, int k, int T,
                             const SimplexOptions& options) {
  const std::size_t n = p.size();
  LinearProgram lp(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    lp.objective[i] = v[i] * p[i];
    lp.upper[i] = 1.0;
    lp.constraints(0, i) = 1.0;
    lp.constraints(1, i) = p[i];
  }
  lp.rhs = {static_cast<double>(T), static_cast<double>(k)};
  const SimplexResult res = solve_simplex(lp, options);
  SeqLpSolution sol;
  sol.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sol.y[i] = snap_unit(res.x[i]);
    sol.objective += v[i] * p[i] * sol.y[i];
  }
  return sol;
}

template <typename Solve>
auto solve_with_structure_repair(Solve&& solve, const SimplexOptions& options) {
  auto sol = solve(options);
  if (verify_bfs_structure(sol.y).ok()) return sol;
  SimplexOptions retry = options;
  retry.rule = PivotRule::bland;
  sol = solve(retry);
  if (!verify_bfs_structure(sol.y).ok()) {
    throw SolverError("LP solution violates the vertex structure after re-solve");
  }
  return sol;
}

}  // namespace

std::vector<int> value_descending_order(std::span<const double> values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] > values[b]; });
  return order;
}

PtkLpSolution solve_lp_ptk(const ProbeTopKInstance& instance, const PtkSolveOptions& options) {
  if (options.bernoulli_reduction && is_bernoulli_form(instance)) {
    const int n = instance.n();
    std::vector<double> p(n), v(n);
    for (int i = 0; i < n; ++i) std::tie(v[i], p[i]) = positive_atom(instance.distribution(i));
    const SeqLpSolution seq = solve_with_structure_repair(
        [&](const SimplexOptions& o) { return solve_seq_core(p, v, instance.k(), instance.T(), o); },
        options.simplex);
    PtkLpSolution sol;
    sol.y = seq.y;
    sol.x.resize(n);
    for (int i = 0; i < n; ++i) {
      const auto& d = instance.distribution(i);
      sol.x[i].assign(d.size(), 0.0);
      for (std::size_t j = 0; j < d.size(); ++j) {
        if (d.support()[j] > 0.0) sol.x[i][j] = sol.y[i] * d.probs()[j];
      }
    }
    sol.objective = seq.objective;
    return sol;
  }
  return solve_with_structure_repair(
      [&](const SimplexOptions& o) { return solve_ptk_generic(instance, o); }, options.simplex);
}

SeqLpSolution solve_lp_seq(const SeqInstance& instance, const SimplexOptions& options) {
  return solve_with_structure_repair(
      [&](const SimplexOptions& o) {
        return solve_seq_core(instance.p(), instance.v(), instance.k(), instance.T(), o);
      },
      options);
}

ParLpSolution solve_lp_par(const ParInstance& instance, const SimplexOptions& options) {
  const int n = instance.n();
  const int k = instance.k();
  const std::size_t vars = static_cast<std::size_t>(n) * k;
  LinearProgram lp(vars, 2 * k + n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      const std::size_t col = static_cast<std::size_t>(i) * k + j;
      lp.objective[col] = instance.v(i, j) * instance.p(i, j);
      lp.upper[col] = 1.0;
      lp.constraints(j, col) = 1.0;                    // offers for position j
      lp.constraints(k + j, col) = instance.p(i, j);   // acceptances for position j
      lp.constraints(2 * k + i, col) = 1.0;            // offers to candidate i
    }
  }
  for (int j = 0; j < k; ++j) {
    lp.rhs[j] = instance.T();
    lp.rhs[k + j] = 1.0;
  }
  for (int i = 0; i < n; ++i) lp.rhs[2 * k + i] = 1.0;

  const SimplexResult res = solve_simplex(lp, options);
  ParLpSolution sol;
  sol.y = Matrix<double>(n, k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      const double y = snap_unit(res.x[static_cast<std::size_t>(i) * k + j]);
      sol.y(i, j) = y;
      sol.objective += instance.v(i, j) * instance.p(i, j) * y;
    }
  }
  return sol;
}

SimLpSolution solve_lp_sim(const SimInstance& instance) {
  const int n = instance.n();
  const auto p = instance.p();
  const auto v = instance.v();
  const double k = instance.k();

  SimLpSolution sol;
  sol.order = value_descending_order(v);
  sol.y.assign(n, 0.0);

  double high_mass = 0.0;
  double total_mass = 0.0;
  for (int i = 0; i < n; ++i) {
    total_mass += p[i];
    if (v[i] > 1.0) high_mass += p[i];
  }

  if (high_mass > k) {
    sol.high_value_overflow = true;
    for (int i = 0; i < n; ++i) {
      if (v[i] > 1.0) sol.y[i] = 1.0;
    }
    sol.total_mass = high_mass;
  } else {
    double remaining = std::min(k, total_mass);
    double mass = 0.0;
    for (int i : sol.order) {
      if (remaining <= 0.0) break;
      if (p[i] <= remaining) {
        sol.y[i] = 1.0;
        remaining -= p[i];
        mass += p[i];
      } else {
        sol.y[i] = remaining / p[i];
        mass += remaining;
        remaining = 0.0;
      }
    }
    sol.total_mass = mass;
  }

  sol.z = std::min(0.0, k - sol.total_mass);
  sol.objective = sol.z;
  for (int i = 0; i < n; ++i) sol.objective += v[i] * p[i] * sol.y[i];
  return sol;
}

SimLpSolution solve_lp_sim_generic(const SimInstance& instance, const SimplexOptions& options) {
  const int n = instance.n();
  // variables: y_0..y_{n-1}, w = -z >= 0
  LinearProgram lp(n + 1, 1);
  for (int i = 0; i < n; ++i) {
    lp.objective[i] = instance.v()[i] * instance.p()[i];
    lp.upper[i] = 1.0;
    lp.constraints(0, i) = instance.p()[i];
  }
  lp.objective[n] = -1.0;
  lp.constraints(0, n) = -1.0;
  lp.rhs[0] = instance.k();

  const SimplexResult res = solve_simplex(lp, options);
  SimLpSolution sol;
  sol.order = value_descending_order(instance.v());
  sol.y.resize(n);
  for (int i = 0; i < n; ++i) {
    sol.y[i] = snap_unit(res.x[i]);
    sol.total_mass += sol.y[i] * instance.p()[i];
  }
  sol.z = -res.x[n];
  sol.objective = res.objective;
  double high_mass = 0.0;
  for (int i = 0; i < n; ++i) {
    if (instance.v()[i] > 1.0) high_mass += instance.p()[i];
  }
  sol.high_value_overflow = high_mass > instance.k();
  return sol;
}

BfsReport verify_bfs_structure(std::span<const double> y, double tol) {
  BfsReport report;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] > tol && y[i] < 1.0 - tol) report.fractional.push_back(static_cast<int>(i));
  }
  if (report.fractional.size() == 2) {
    const double s = y[report.fractional[0]] + y[report.fractional[1]];
    report.pair_sums_to_one = std::abs(s - 1.0) <= tol;
  }
  return report;
}

bool is_feasible(const ProbeTopKInstance& instance, const PtkLpSolution& sol, double tol) {
  double ysum = 0.0, xsum = 0.0;
  for (int i = 0; i < instance.n(); ++i) {
    if (sol.y[i] < -tol || sol.y[i] > 1.0 + tol) return false;
    ysum += sol.y[i];
    const auto& d = instance.distribution(i);
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (sol.x[i][j] < -tol || sol.x[i][j] > sol.y[i] * d.probs()[j] + tol) return false;
      xsum += sol.x[i][j];
    }
  }
  return ysum <= instance.T() + tol && xsum <= instance.k() + tol;
}

bool is_feasible(const SeqInstance& instance, const SeqLpSolution& sol, double tol) {
  double ysum = 0.0, mass = 0.0;
  for (int i = 0; i < instance.n(); ++i) {
    if (sol.y[i] < -tol || sol.y[i] > 1.0 + tol) return false;
    ysum += sol.y[i];
    mass += sol.y[i] * instance.p()[i];
  }
  return ysum <= instance.T() + tol && mass <= instance.k() + tol;
}

bool is_feasible(const ParInstance& instance, const ParLpSolution& sol, double tol) {
  const int n = instance.n(), k = instance.k();
  for (int j = 0; j < k; ++j) {
    double offers = 0.0, accepts = 0.0;
    for (int i = 0; i < n; ++i) {
      offers += sol.y(i, j);
      accepts += sol.y(i, j) * instance.p(i, j);
    }
    if (offers > instance.T() + tol || accepts > 1.0 + tol) return false;
  }
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < k; ++j) {
      if (sol.y(i, j) < -tol || sol.y(i, j) > 1.0 + tol) return false;
      row += sol.y(i, j);
    }
    if (row > 1.0 + tol) return false;
  }
  return true;
}

}  // namespace hiring
