#pragma once

// Dense bounded-variable primal simplex for small packing LPs
//
//   max  c'x   s.t.  A x <= b,  0 <= x <= u,  with b >= 0,
//
// so the all-slack basis is feasible and no phase one is needed. The solver
// returns a basic (vertex) solution; nonbasic variables sit exactly at a bound.

#include <cstddef>
#include <limits>
#include <vector>

#include "hiring/matrix.hpp"

namespace hiring {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct LinearProgram {
  std::vector<double> objective;  ///< c, one entry per structural variable
  std::vector<double> upper;      ///< u, kInfinity for unbounded-above
  Matrix<double> constraints;     ///< A, rows x variables
  std::vector<double> rhs;        ///< b, must be nonnegative

  LinearProgram() = default;
  LinearProgram(std::size_t variables, std::size_t rows)
      : objective(variables, 0.0),
        upper(variables, kInfinity),
        constraints(rows, variables, 0.0),
        rhs(rows, 0.0) {}

  [[nodiscard]] std::size_t variables() const noexcept { return objective.size(); }
  [[nodiscard]] std::size_t rows() const noexcept { return rhs.size(); }
};

enum class PivotRule {
  bland,    ///< smallest eligible index; never cycles
  dantzig,  ///< largest reduced cost, falls back to Bland on degenerate stalls
};

struct SimplexOptions {
  PivotRule rule = PivotRule::dantzig;
  double tolerance = 1e-9;
  std::size_t max_iterations = 0;  ///< 0 picks a size-based default
};

struct SimplexResult {
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
  std::vector<bool> basic;  ///< per structural variable
};

/// Solves the LP; retries once with Bland's rule if the first attempt hits
/// its iteration limit. Throws SolverError on failure or unboundedness.
SimplexResult solve_simplex(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace hiring
