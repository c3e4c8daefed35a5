#pragma once

// Problem data for the four hiring models plus the instance generators used
// by tests, audits and the experiment harness.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hiring/matrix.hpp"
#include "hiring/random.hpp"

namespace hiring {

inline constexpr double kProbabilitySumTolerance = 1e-9;

/// A finitely supported nonnegative random value in canonical form: the
/// support is strictly increasing, atoms of zero mass are dropped and
/// duplicate support points are merged.
class FiniteDistribution {
 public:
  FiniteDistribution(std::vector<double> support, std::vector<double> probs);

  static FiniteDistribution point(double value);
  /// Value `value` with probability `p`, otherwise 0.
  static FiniteDistribution bernoulli(double value, double p);

  [[nodiscard]] std::span<const double> support() const noexcept { return support_; }
  [[nodiscard]] std::span<const double> probs() const noexcept { return probs_; }
  [[nodiscard]] std::size_t size() const noexcept { return support_.size(); }
  [[nodiscard]] double mean() const noexcept;

  friend bool operator==(const FiniteDistribution&, const FiniteDistribution&) = default;

 private:
  std::vector<double> support_;
  std::vector<double> probs_;
};

/// Sequential interviewing: interview at most T of n candidates, keep the
/// best k interviewed values.
class ProbeTopKInstance {
 public:
  ProbeTopKInstance(int k, int T, std::vector<FiniteDistribution> distributions);

  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] int T() const noexcept { return T_; }
  [[nodiscard]] int n() const noexcept { return static_cast<int>(distributions_.size()); }
  [[nodiscard]] const FiniteDistribution& distribution(int i) const { return distributions_.at(i); }
  [[nodiscard]] std::span<const FiniteDistribution> distributions() const noexcept {
    return distributions_;
  }

  friend bool operator==(const ProbeTopKInstance&, const ProbeTopKInstance&) = default;

 private:
  int k_;
  int T_;
  std::vector<FiniteDistribution> distributions_;
};

/// Sequential offering: candidate i accepts an offer with probability p_i and
/// then adds v_i. At most T offers and k hires.
class SeqInstance {
 public:
  SeqInstance(int k, int T, std::vector<double> p, std::vector<double> v);

  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] int T() const noexcept { return T_; }
  [[nodiscard]] int n() const noexcept { return static_cast<int>(p_.size()); }
  [[nodiscard]] std::span<const double> p() const noexcept { return p_; }
  [[nodiscard]] std::span<const double> v() const noexcept { return v_; }

  /// Same candidates with a different (k, T).
  [[nodiscard]] SeqInstance with_limits(int k, int T) const;

  friend bool operator==(const SeqInstance&, const SeqInstance&) = default;

 private:
  int k_;
  int T_;
  std::vector<double> p_;
  std::vector<double> v_;
};

/// Parallel offering over k heterogeneous positions and T rounds.
class ParInstance {
 public:
  ParInstance(int k, int T, Matrix<double> p, Matrix<double> v);

  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] int T() const noexcept { return T_; }
  [[nodiscard]] int n() const noexcept { return static_cast<int>(p_.rows()); }
  [[nodiscard]] const Matrix<double>& p() const noexcept { return p_; }
  [[nodiscard]] const Matrix<double>& v() const noexcept { return v_; }
  [[nodiscard]] double p(int i, int j) const { return p_(i, j); }
  [[nodiscard]] double v(int i, int j) const { return v_(i, j); }

  /// True when every position sees the same (p_i, v_i) for each candidate.
  [[nodiscard]] bool identical_positions() const noexcept;

  friend bool operator==(const ParInstance&, const ParInstance&) = default;

 private:
  int k_;
  int T_;
  Matrix<double> p_;
  Matrix<double> v_;
};

/// Simultaneous offering with a linear over-capacity penalty. Values are
/// stored divided by the penalty, so the effective penalty is 1.
class SimInstance {
 public:
  /// `v` already expressed in penalty units (cost 1).
  SimInstance(int k, std::vector<double> p, std::vector<double> v);

  /// Raw values with penalty `cost` per hire over capacity.
  static SimInstance from_raw(int k, std::vector<double> p, std::vector<double> raw_v, double cost);

  [[nodiscard]] int k() const noexcept { return k_; }
  [[nodiscard]] int n() const noexcept { return static_cast<int>(p_.size()); }
  [[nodiscard]] std::span<const double> p() const noexcept { return p_; }
  /// Values divided by the penalty.
  [[nodiscard]] std::span<const double> v() const noexcept { return v_; }
  [[nodiscard]] std::span<const double> raw_v() const noexcept { return raw_v_; }
  [[nodiscard]] double cost() const noexcept { return cost_; }

  friend bool operator==(const SimInstance&, const SimInstance&) = default;

 private:
  int k_;
  double cost_ = 1.0;
  std::vector<double> p_;
  std::vector<double> raw_v_;
  std::vector<double> v_;
};

// ---------------------------------------------------------------------------
// Generators

struct Candidate {
  double value;
  double accept_prob;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

enum class PoolMode { negative_correlation, independent };

/// Draw v ~ U(0,1) and p ~ Beta(10(1-v), 10v) (negative correlation) or
/// p ~ U(0,1) (independent). Deterministic in `seed`.
std::vector<Candidate> sample_candidate_pool(int n, PoolMode mode, std::uint64_t seed);

/// Beta(a, b) through two Gamma draws; Beta(a, 0) = 1 and Beta(0, b) = 0.
double sample_beta(Rng& rng, double a, double b);

/// n identical Bernoulli candidates with value 1 w.p. k/n and T = n.
ProbeTopKInstance tightness_probetopk(int n, int k);

/// k identical positions, kT identical candidates, v = 1, p = 1/T.
ParInstance tightness_parallel(int k, int T);

/// Two candidates, k = 1, where the best value-ordered offer set is far from optimal.
SimInstance counterexample_value_ordered(double eps);

/// n + 1 candidates, k = 1, where the best EV-ordered offer set is far from optimal.
SimInstance counterexample_ev_ordered(int n);

/// Candidate i becomes value v_i w.p. p_i, else 0.
ProbeTopKInstance seq_to_ptk(const SeqInstance& instance);

/// Sequential instance over the same candidates with kT offers (capped at n).
/// Requires identical positions.
SeqInstance batched_seq_instance(const ParInstance& instance);

/// Parallel instance with k identical positions built from one candidate list.
ParInstance identical_positions_instance(int k, int T, std::span<const double> p,
                                         std::span<const double> v);

// Random families for audits and property tests.

struct RandomPtkSpec {
  int max_n = 6;
  int max_support = 3;
  int max_k = 2;
  int value_levels = 5;  ///< support values drawn from {1, ..., value_levels}
};
ProbeTopKInstance random_ptk_instance(Rng& rng, const RandomPtkSpec& spec = {});

struct RandomSeqSpec {
  int min_n = 1;
  int max_n = 8;
  int max_k = 3;
};
SeqInstance random_seq_instance(Rng& rng, const RandomSeqSpec& spec = {});

struct RandomParSpec {
  int max_n = 10;
  int max_k = 3;
  int max_T = 0;  ///< 0 means no cap beyond n
  bool identical = false;
};
ParInstance random_par_instance(Rng& rng, const RandomParSpec& spec = {});

struct RandomSimSpec {
  int max_n = 10;
  int max_k = 3;
  double min_value = 0.0;  ///< tau for tau-bounded families
  double max_value = 2.0;
};
SimInstance random_sim_instance(Rng& rng, const RandomSimSpec& spec = {});

}  // namespace hiring
