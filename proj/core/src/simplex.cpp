#include "hiring/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "hiring/error.hpp"

namespace hiring {
namespace {

enum class Status : unsigned char { basic, at_lower, at_upper };

// Consecutive degenerate pivots tolerated before Dantzig pricing hands over
// to Bland's rule for the remainder of the solve.
constexpr std::size_t kDegenerateStallLimit = 50;

class Tableau {
 public:
  Tableau(const LinearProgram& lp, double tol)
      : m_(lp.rows()),
        n_(lp.variables()),
        cols_(n_ + m_),
        tol_(tol),
        body_(m_, cols_, 0.0),
        beta_(lp.rhs),
        reduced_(cols_, 0.0),
        cost_(cols_, 0.0),
        upper_(cols_, kInfinity),
        status_(cols_, Status::at_lower),
        basis_(m_) {
    for (std::size_t r = 0; r < m_; ++r) {
      auto src = lp.constraints.row(r);
      auto dst = body_.row(r);
      std::copy(src.begin(), src.end(), dst.begin());
      dst[n_ + r] = 1.0;
      basis_[r] = n_ + r;
      status_[n_ + r] = Status::basic;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      cost_[j] = lp.objective[j];
      reduced_[j] = lp.objective[j];
      upper_[j] = lp.upper[j];
    }
  }

  // Returns false when the iteration budget is exhausted.
  bool run(PivotRule rule, std::size_t max_iterations) {
    bool bland = rule == PivotRule::bland;
    std::size_t stall = 0;
    while (iterations_ < max_iterations) {
      const auto entering = choose_entering(bland);
      if (!entering) return true;
      const bool degenerate = step(*entering, bland);
      ++iterations_;
      stall = degenerate ? stall + 1 : 0;
      if (!bland && stall > kDegenerateStallLimit) bland = true;
    }
    return false;
  }

  [[nodiscard]] SimplexResult result() const {
    SimplexResult out;
    out.x.assign(n_, 0.0);
    out.basic.assign(n_, false);
    for (std::size_t j = 0; j < n_; ++j) {
      if (status_[j] == Status::at_upper) out.x[j] = upper_[j];
    }
    for (std::size_t r = 0; r < m_; ++r) {
      const std::size_t j = basis_[r];
      if (j < n_) {
        out.x[j] = std::clamp(beta_[r], 0.0, upper_[j]);
        out.basic[j] = true;
      }
    }
    for (std::size_t j = 0; j < n_; ++j) out.objective += cost_[j] * out.x[j];
    out.iterations = iterations_;
    return out;
  }

 private:
  [[nodiscard]] std::optional<std::size_t> choose_entering(bool bland) const {
    std::optional<std::size_t> best;
    double best_score = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
      double score = 0.0;
      if (status_[j] == Status::at_lower && reduced_[j] > tol_) {
        score = reduced_[j];
      } else if (status_[j] == Status::at_upper && reduced_[j] < -tol_) {
        score = -reduced_[j];
      } else {
        continue;
      }
      if (bland) return j;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  // Moves the entering variable as far as feasibility allows, then either
  // flips it to its opposite bound or pivots it into the basis. Returns true
  // for a degenerate (zero-length) step.
  bool step(std::size_t e, bool bland) {
    const double dir = status_[e] == Status::at_lower ? 1.0 : -1.0;
    constexpr double kPivotTol = 1e-11;

    double theta = upper_[e];  // bound flip distance
    std::optional<std::size_t> leave_row;
    bool leave_to_upper = false;
    double leave_alpha = 0.0;

    for (std::size_t r = 0; r < m_; ++r) {
      const double alpha = body_(r, e);
      if (std::abs(alpha) <= kPivotTol) continue;
      const double delta = -dir * alpha;  // change of basic r per unit step
      const std::size_t b = basis_[r];
      double limit;
      bool to_upper;
      if (delta < 0.0) {
        limit = std::max(beta_[r], 0.0) / -delta;
        to_upper = false;
      } else if (upper_[b] < kInfinity) {
        limit = std::max(upper_[b] - beta_[r], 0.0) / delta;
        to_upper = true;
      } else {
        continue;
      }
      bool take = false;
      if (limit < theta - 1e-12) {
        take = true;
      } else if (limit <= theta + 1e-12 && leave_row) {
        // ties: Bland takes the smallest basic index, otherwise the largest pivot
        take = bland ? b < basis_[*leave_row] : std::abs(alpha) > std::abs(leave_alpha);
      }
      if (take) {
        theta = limit;
        leave_row = r;
        leave_to_upper = to_upper;
        leave_alpha = alpha;
      }
    }

    if (!std::isfinite(theta)) throw SolverError("linear program is unbounded");

    if (theta != 0.0) {
      for (std::size_t r = 0; r < m_; ++r) {
        const double alpha = body_(r, e);
        if (alpha != 0.0) beta_[r] -= dir * alpha * theta;
      }
    }

    if (!leave_row) {
      status_[e] = status_[e] == Status::at_lower ? Status::at_upper : Status::at_lower;
      return theta <= tol_;
    }

    const std::size_t r = *leave_row;
    const std::size_t leaving = basis_[r];
    const double entering_value = (dir > 0.0 ? 0.0 : upper_[e]) + dir * theta;
    pivot(r, e);
    beta_[r] = entering_value;
    status_[leaving] = leave_to_upper ? Status::at_upper : Status::at_lower;
    status_[e] = Status::basic;
    basis_[r] = e;
    return theta <= tol_;
  }

  void pivot(std::size_t r, std::size_t e) {
    auto prow = body_.row(r);
    const double inv = 1.0 / prow[e];
    nonzero_.clear();
    for (std::size_t j = 0; j < cols_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        nonzero_.push_back(j);
      }
    }
    prow[e] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      auto row = body_.row(i);
      const double f = row[e];
      if (f == 0.0) continue;
      for (std::size_t j : nonzero_) row[j] -= f * prow[j];
      row[e] = 0.0;
    }
    const double f = reduced_[e];
    if (f != 0.0) {
      for (std::size_t j : nonzero_) reduced_[j] -= f * prow[j];
      reduced_[e] = 0.0;
    }
  }

  std::size_t m_, n_, cols_;
  double tol_;
  Matrix<double> body_;
  std::vector<double> beta_;
  std::vector<double> reduced_;
  std::vector<double> cost_;
  std::vector<double> upper_;
  std::vector<Status> status_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nonzero_;
  std::size_t iterations_ = 0;
};

void validate(const LinearProgram& lp) {
  if (lp.upper.size() != lp.variables() || lp.constraints.cols() != lp.variables() ||
      lp.constraints.rows() != lp.rows()) {
    throw InvalidInput("linear program dimensions are inconsistent");
  }
  for (double b : lp.rhs) {
    if (!(b >= 0.0)) throw InvalidInput("simplex core requires a nonnegative right-hand side");
  }
  for (double u : lp.upper) {
    if (!(u >= 0.0)) throw InvalidInput("variable upper bounds must be nonnegative");
  }
}

}  // namespace

SimplexResult solve_simplex(const LinearProgram& lp, const SimplexOptions& options) {
  validate(lp);
  const std::size_t budget =
      options.max_iterations > 0 ? options.max_iterations
                                 : 50 * (lp.variables() + lp.rows()) + 1000;
  {
    Tableau t(lp, options.tolerance);
    if (t.run(options.rule, budget)) return t.result();
  }
  if (options.rule != PivotRule::bland) {
    Tableau t(lp, options.tolerance);
    if (t.run(PivotRule::bland, 4 * budget)) return t.result();
  }
  throw SolverError("simplex did not converge within " + std::to_string(budget) + " iterations");
}

}  // namespace hiring
