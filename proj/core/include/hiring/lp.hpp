#pragma once

// LP relaxations of the four hiring models. The ptk, seq and par relaxations
// go through the shared simplex core and come back as vertices; the sim
// relaxation is solved in closed form by filling a value-ordered prefix.

#include <cstddef>
#include <span>
#include <vector>

#include "hiring/instances.hpp"
#include "hiring/matrix.hpp"
#include "hiring/simplex.hpp"

namespace hiring {

inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kIntegralityTolerance = 1e-9;

struct PtkLpSolution {
  std::vector<double> y;               ///< interview probabilities
  std::vector<std::vector<double>> x;  ///< x[i][j]: hire with value support(i)[j]
  double objective = 0.0;
};

struct SeqLpSolution {
  std::vector<double> y;  ///< offer probabilities
  double objective = 0.0;
};

struct ParLpSolution {
  Matrix<double> y;  ///< y(i, j): candidate i gets an offer for position j
  double objective = 0.0;
};

struct SimLpSolution {
  std::vector<double> y;  ///< indexed by original candidate label
  double z = 0.0;         ///< min(0, k - total_mass)
  double objective = 0.0;
  double total_mass = 0.0;        ///< sum_i y_i p_i
  std::vector<int> order;         ///< candidates by value, descending, stable
  bool high_value_overflow = false;  ///< mass of values above 1 exceeds k
};

struct PtkSolveOptions {
  /// Weighted-Bernoulli instances admit an optimum with x_i = y_i q_i; when
  /// set, such instances are solved through the two-row sequential LP.
  bool bernoulli_reduction = true;
  SimplexOptions simplex{};
};

PtkLpSolution solve_lp_ptk(const ProbeTopKInstance& instance, const PtkSolveOptions& options = {});
SeqLpSolution solve_lp_seq(const SeqInstance& instance, const SimplexOptions& options = {});
ParLpSolution solve_lp_par(const ParInstance& instance, const SimplexOptions& options = {});
SimLpSolution solve_lp_sim(const SimInstance& instance);

/// The sim relaxation through the simplex core, kept for cross-checks.
SimLpSolution solve_lp_sim_generic(const SimInstance& instance, const SimplexOptions& options = {});

/// Stable permutation of candidate labels sorted by value, descending.
std::vector<int> value_descending_order(std::span<const double> values);

struct BfsReport {
  std::vector<int> fractional;  ///< indices with y strictly inside (0, 1)
  bool pair_sums_to_one = true;  ///< vacuous unless exactly two are fractional
  [[nodiscard]] bool ok() const noexcept {
    return fractional.size() <= 2 && (fractional.size() < 2 || pair_sums_to_one);
  }
};

/// Structure check for vertex solutions: at most two fractional entries and,
/// if two, they add up to one.
BfsReport verify_bfs_structure(std::span<const double> y, double tol = kIntegralityTolerance);

// Feasibility checks shared by tests and the CLI.
bool is_feasible(const ProbeTopKInstance& instance, const PtkLpSolution& sol,
                 double tol = kFeasibilityTolerance);
bool is_feasible(const SeqInstance& instance, const SeqLpSolution& sol,
                 double tol = kFeasibilityTolerance);
bool is_feasible(const ParInstance& instance, const ParLpSolution& sol,
                 double tol = kFeasibilityTolerance);

}  // namespace hiring
