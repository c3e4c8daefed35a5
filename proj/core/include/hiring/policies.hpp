#pragma once

// Policy builders for the four models, including the heuristic baselines
// used in the offering experiments.

#include <cstdint>
#include <vector>

#include "hiring/instances.hpp"
#include "hiring/lp.hpp"
#include "hiring/policy_types.hpp"
#include "hiring/random.hpp"
#include "hiring/rounding.hpp"

namespace hiring {

// ---------------------------------------------------------------------------
// ProbeTop-k and sequential offering

/// Committed policy for the rounded selection `chosen`: candidates ordered by
/// LP-derived value, hired with probability x_ij / (y_i q_ij).
CommittedOrderPolicy ptk_policy_from_rounding(const ProbeTopKInstance& instance,
                                              const PtkLpSolution& lp, const BinaryVector& chosen);

CommittedOrderPolicy alg_ptk(const ProbeTopKInstance& instance, Rng& rng);
/// Evaluates both rounding outcomes exactly and keeps the better one.
CommittedOrderPolicy alg_ptk_derandomized(const ProbeTopKInstance& instance);

/// Offer `order` under sequential-offering semantics: accept_prob is 1 on
/// every positive value and 0 on the zero atom (a declined offer). The table
/// is aligned with seq_to_ptk(instance).
CommittedOrderPolicy seq_order_policy(const SeqInstance& instance, std::vector<int> order);

CommittedOrderPolicy alg_seq(const SeqInstance& instance, Rng& rng);
CommittedOrderPolicy alg_seq_derandomized(const SeqInstance& instance);

/// Both rounding outcomes padded to T with unused candidates, re-sorted by
/// value; the exactly better list wins.
CommittedOrderPolicy alg_seq_prime(const SeqInstance& instance);

CommittedOrderPolicy value_ordered_seq(const SeqInstance& instance);
CommittedOrderPolicy ev_ordered_seq(const SeqInstance& instance);

/// Optimal adaptive policy among those offering in value-descending order.
/// S(i, l, t) is the best value from the i-th candidate on (in that order)
/// with l hires and t offers left. Filled for every t <= n, so one table
/// answers all horizons.
class AdaptiveSeqDp {
 public:
  explicit AdaptiveSeqDp(const SeqInstance& instance);

  [[nodiscard]] double value(int hires_left, int offers_left) const;
  [[nodiscard]] double value() const { return value(k_, T_); }
  /// Whether to offer to the candidate at `position` of order() in that state.
  [[nodiscard]] bool offer(int position, int hires_left, int offers_left) const;
  [[nodiscard]] const std::vector<int>& order() const noexcept { return order_; }

 private:
  [[nodiscard]] double at(int i, int l, int t) const;

  int n_, k_, T_;
  std::vector<int> order_;
  std::vector<double> table_;  ///< (n + 1) x (k + 1) x (n + 1)
};

// ---------------------------------------------------------------------------
// Parallel offering

/// Lists from a rounded assignment, each sorted by v_ij descending.
OfferLists par_lists_from_rounding(const ParInstance& instance, const BinaryMatrix& assignment);

OfferLists alg_par(const ParInstance& instance, Rng& rng);
/// Best of `samples` GKPS roundings by exact value.
OfferLists alg_par_derandomized(const ParInstance& instance, int samples, Rng& rng);

/// Identical positions only: pools from the kT-budget sequential LP, dealt
/// value-descending to the list with the smallest acceptance mass.
OfferLists alg_par_prime(const ParInstance& instance);

// ---------------------------------------------------------------------------
// Simultaneous offering

/// Truncates the LP solution to mass s * (LP mass) along the value order.
OfferProbabilities alg_sim(const SimInstance& instance, double s);
OfferProbabilities alg_sim(const SimInstance& instance, const SimLpSolution& lp, double s);

/// min(FOC root, 1) for the tau-bounded guarantee.
double optimal_s(int k, double tau);

/// alg_sim with s = optimal_s(k, tau), or s = 1 when the high-value mass
/// alone exceeds k.
OfferProbabilities alg_sim_auto(const SimInstance& instance, double tau);

struct SimChoice {
  std::vector<int> offers;  ///< chosen candidates in selection order
  double value = 0.0;       ///< exact expected reward in penalty units
};

/// Best prefix of the value (resp. v p) order; ties go to the shorter prefix.
SimChoice value_ordered_sim(const SimInstance& instance);
SimChoice ev_ordered_sim(const SimInstance& instance);

/// Adds the largest positive marginal gain until none is left.
SimChoice greedy_sim(const SimInstance& instance);

/// y' with ones on `offers`.
OfferProbabilities offer_set(const SimInstance& instance, const std::vector<int>& offers);

}  // namespace hiring
