#pragma once

// Exact expected-reward evaluators and their Monte-Carlo twins.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hiring/instances.hpp"
#include "hiring/policy_types.hpp"

namespace hiring {

struct EvalResult {
  double mean = 0.0;
  double half_width = 0.0;    ///< 1.96 standard errors; 0 for exact results
  std::int64_t replications = 0;  ///< 0 for exact results
  std::optional<std::uint64_t> seed;
  double std_error = 0.0;     ///< standard error of the mean (MC only)

  [[nodiscard]] bool exact() const noexcept { return replications == 0; }
};

/// Wraps an exactly computed value.
EvalResult exact_result(double value);

/// Checks indices, duplicates and accept-table shape; throws InvalidInput.
void validate_policy(const ProbeTopKInstance& instance, const CommittedOrderPolicy& policy);
void validate_lists(const ParInstance& instance, const OfferLists& lists);

/// Exact value of a committed order: DP over (position in order, hires so far).
EvalResult eval_committed_order_exact(const ProbeTopKInstance& instance,
                                      const CommittedOrderPolicy& policy);

/// Sequential offering semantics: each offer is accepted w.p. p_i and binds.
double eval_seq_order_exact(const SeqInstance& instance, std::span<const int> order);

EvalResult simulate_ptk(const ProbeTopKInstance& instance, const CommittedOrderPolicy& policy,
                        std::int64_t reps, std::uint64_t seed);

/// Sum over positions of the value of running each list in order until the
/// first acceptance, truncated at T offers.
EvalResult eval_par_exact(const ParInstance& instance, const OfferLists& lists);

EvalResult simulate_par(const ParInstance& instance, const OfferLists& lists, std::int64_t reps,
                        std::uint64_t seed);

/// Deterministic offer set.
EvalResult eval_sim_exact(const SimInstance& instance, std::span<const int> offers);
/// Independent offers with probabilities y'.
EvalResult eval_sim_exact(const SimInstance& instance, const OfferProbabilities& offers);

EvalResult simulate_sim(const SimInstance& instance, const OfferProbabilities& offers,
                        std::int64_t reps, std::uint64_t seed);

/// Distribution of the number of successes among independent Bernoulli trials.
std::vector<double> poisson_binomial(std::span<const double> probs);

/// E[max(sum D_i - k, 0)] for independent D_i ~ Bernoulli(probs[i]).
double penalty_expectation(std::span<const double> probs, int k);

/// E[min(sum D_i, k)].
double expected_truncated_count(std::span<const double> probs, int k);

/// Incremental Poisson-binomial tracker truncated at k: keeps P(N = c) for
/// c < k and P(N >= k), so adding a trial is O(k). Used by the simultaneous
/// heuristics that evaluate many nested offer sets.
class TruncatedCount {
 public:
  explicit TruncatedCount(int k);

  void add(double p);
  /// E[max(N - k, 0)] = sum of added probabilities - E[min(N, k)].
  [[nodiscard]] double penalty() const noexcept;
  /// Penalty if a trial with probability p were added.
  [[nodiscard]] double penalty_with(double p) const noexcept;
  [[nodiscard]] double mass() const noexcept { return mass_; }
  /// P(N >= k).
  [[nodiscard]] double saturated() const noexcept { return dist_[k_]; }

 private:
  int k_;
  double mass_ = 0.0;
  std::vector<double> dist_;  ///< dist_[c] for c < k, dist_[k] = P(N >= k)
};

}  // namespace hiring
